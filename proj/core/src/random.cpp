#include "sparsesolve/random.hpp"

#include <numbers>

namespace sparsesolve {

Seed derive_seed(Seed parent, std::uint64_t tag) {
  std::uint64_t z = parent + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Complex Rng::unit_complex() {
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  return std::polar(1.0, angle(engine_));
}

double Rng::uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

std::int64_t Rng::integer(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
}

SparseSystem random_system(const SupportSystem& supports, Seed seed) {
  Rng rng(seed);
  std::vector<SparsePolynomial> polys;
  for (const Support& a : supports) {
    std::vector<Complex> c(a.size());
    for (auto& v : c) v = rng.unit_complex();
    polys.emplace_back(a, std::move(c));
  }
  return SparseSystem(std::move(polys));
}

}  // namespace sparsesolve
