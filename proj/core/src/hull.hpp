#pragma once

// Exact convex hulls of lattice point sets via a placing triangulation.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sparsesolve/supports.hpp"

namespace sparsesolve::detail {

struct HullResult {
  std::size_t affine_dim = 0;
  /// Indices (into the input) of the extreme points, ascending.
  std::vector<std::size_t> vertices;
  /// dim! * Euclidean volume. Zero unless affine_dim equals the ambient dimension.
  std::int64_t normalized_volume = 0;
  std::size_t simplices = 0;
};

/// `points` must be nonempty, distinct and of dimension `dim`.
HullResult convex_hull(std::span<const Point> points, std::size_t dim);

/// Affine rank of a finite point set.
std::size_t affine_rank(std::span<const Point> points, std::size_t dim);

}  // namespace sparsesolve::detail
