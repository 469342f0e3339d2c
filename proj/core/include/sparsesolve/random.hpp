#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "sparsesolve/supports.hpp"

namespace sparsesolve {

using Seed = std::uint64_t;

/// Child seed for a named sub-task; splitmix64 finalizer over (parent, tag).
Seed derive_seed(Seed parent, std::uint64_t tag);

class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed) {}

  /// Uniform on the complex unit circle.
  Complex unit_complex();
  double uniform(double lo, double hi);
  std::int64_t integer(std::int64_t lo, std::int64_t hi);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Random unit-modulus coefficients on the given supports.
SparseSystem random_system(const SupportSystem& supports, Seed seed);

}  // namespace sparsesolve
