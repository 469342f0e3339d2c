#pragma once

// Lattice polytopes, exact volumes and mixed volumes.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "sparsesolve/supports.hpp"

namespace sparsesolve {

/// Convex hull of finitely many lattice points, stored by its vertices.
class RationalPolytope {
 public:
  RationalPolytope() = default;
  /// Any finite nonempty point set; only the extreme points are kept.
  RationalPolytope(std::size_t dim, std::vector<Point> points);
  explicit RationalPolytope(const Support& s);

  std::size_t dim() const { return dim_; }
  std::size_t affine_dim() const { return affine_dim_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  /// dim! times the Euclidean volume; zero when not full-dimensional.
  std::int64_t normalized_volume() const { return normalized_volume_; }

 private:
  std::size_t dim_ = 0;
  std::size_t affine_dim_ = 0;
  std::vector<Point> vertices_;
  std::int64_t normalized_volume_ = 0;
};

RationalPolytope minkowski_sum(const RationalPolytope& a, const RationalPolytope& b);

/// Euclidean volume, exact. Zero for lower-dimensional polytopes.
mpq_class polytope_volume(const RationalPolytope& p);

/// Mixed volume normalized so that MV(K, ..., K) = n! vol(K); for supports this
/// is the generic number of solutions on the torus. Computed by
/// inclusion-exclusion over the Minkowski sums of all subsets.
std::uint64_t mixed_volume(const SupportSystem& s);

/// MV = 0 iff some nonempty I has span_rank(I) < |I|.
struct ZeroMixedVolume {
  bool zero = false;
  std::vector<std::size_t> witness;  ///< first such I by size, then lexicographically
};

ZeroMixedVolume mv_is_zero(const SupportSystem& s);

}  // namespace sparsesolve
