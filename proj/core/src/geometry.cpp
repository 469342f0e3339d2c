#include "sparsesolve/geometry.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "hull.hpp"
#include "sparsesolve/error.hpp"

namespace sparsesolve {

namespace {

std::vector<Point> dedup(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::uint64_t factorial(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return f;
}

// Subsets of {0..n-1} ordered by size, then lexicographically.
std::vector<std::vector<std::size_t>> subsets_by_size(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t size = 1; size <= n; ++size) {
    std::vector<std::size_t> cur(size);
    for (std::size_t i = 0; i < size; ++i) cur[i] = i;
    while (true) {
      out.push_back(cur);
      std::size_t i = size;
      while (i > 0 && cur[i - 1] == n - size + (i - 1)) --i;
      if (i == 0) break;
      ++cur[i - 1];
      for (std::size_t j = i; j < size; ++j) cur[j] = cur[j - 1] + 1;
    }
  }
  return out;
}

}  // namespace

RationalPolytope::RationalPolytope(std::size_t dim, std::vector<Point> points) : dim_(dim) {
  if (points.empty()) throw SupportError("polytope of an empty point set");
  for (const Point& p : points)
    if (p.size() != dim) throw SupportError("point dimension mismatch in polytope");
  points = dedup(std::move(points));
  const detail::HullResult hull = detail::convex_hull(points, dim);
  affine_dim_ = hull.affine_dim;
  normalized_volume_ = hull.normalized_volume;
  vertices_.reserve(hull.vertices.size());
  for (std::size_t i : hull.vertices) vertices_.push_back(points[i]);
}

RationalPolytope::RationalPolytope(const Support& s) : RationalPolytope(s.dim(), s.points()) {}

RationalPolytope minkowski_sum(const RationalPolytope& a, const RationalPolytope& b) {
  if (a.dim() != b.dim()) throw SupportError("Minkowski sum of polytopes of different dimension");
  std::vector<Point> pts;
  pts.reserve(a.vertices().size() * b.vertices().size());
  for (const Point& u : a.vertices())
    for (const Point& w : b.vertices()) {
      Point s(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) s[i] = u[i] + w[i];
      pts.push_back(std::move(s));
    }
  return RationalPolytope(a.dim(), std::move(pts));
}

mpq_class polytope_volume(const RationalPolytope& p) {
  if (p.vertices().empty() || p.affine_dim() < p.dim()) return 0;
  mpq_class v(static_cast<long>(p.normalized_volume()), static_cast<unsigned long>(factorial(p.dim())));
  v.canonicalize();
  return v;
}

std::uint64_t mixed_volume(const SupportSystem& s) {
  const std::size_t n = s.n();
  if (n == 0) return 0;
  if (mv_is_zero(s).zero) return 0;

  std::vector<RationalPolytope> atoms;
  atoms.reserve(n);
  for (const Support& a : s) atoms.emplace_back(a);

  // sums[mask] = conv of the Minkowski sum of the supports in mask, built by
  // adding the highest member to the sum of the rest.
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<RationalPolytope> sums(full + 1);
  __int128 total = 0;
  for (std::size_t mask = 1; mask <= full; ++mask) {
    const std::size_t hi = std::bit_width(mask) - 1;
    const std::size_t rest = mask & ~(std::size_t{1} << hi);
    sums[mask] = rest == 0 ? atoms[hi] : minkowski_sum(sums[rest], atoms[hi]);
    if (sums[mask].affine_dim() < n) continue;
    const int sign = ((n - static_cast<std::size_t>(std::popcount(mask))) % 2 == 0) ? 1 : -1;
    total += sign * static_cast<__int128>(sums[mask].normalized_volume());
  }
  const auto nf = static_cast<__int128>(factorial(n));
  if (total < 0 || total % nf != 0)
    throw Error("mixed volume inclusion-exclusion produced a non-integral value");
  return static_cast<std::uint64_t>(total / nf);
}

ZeroMixedVolume mv_is_zero(const SupportSystem& s) {
  ZeroMixedVolume out;
  for (auto& subset : subsets_by_size(s.n())) {
    if (span_rank(s, subset) < subset.size()) {
      out.zero = true;
      out.witness = std::move(subset);
      return out;
    }
  }
  return out;
}

}  // namespace sparsesolve
