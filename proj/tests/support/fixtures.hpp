#pragma once

// Shared systems for unit and acceptance tests.

#include <string>
#include <vector>

#include "sparsesolve/supports.hpp"

namespace testing {

using sparsesolve::Complex;
using sparsesolve::Point;
using sparsesolve::SparsePolynomial;
using sparsesolve::SparseSystem;
using sparsesolve::Support;
using sparsesolve::SupportSystem;
using Terms = std::vector<std::pair<Point, Complex>>;

inline std::string data_file(const std::string& name) { return std::string(SPARSESOLVE_TEST_DATA) + "/" + name; }

/// Columns of a 2-row matrix as points.
inline std::vector<Point> columns(const std::vector<std::int64_t>& r0, const std::vector<std::int64_t>& r1) {
  std::vector<Point> out;
  for (std::size_t k = 0; k < r0.size(); ++k) out.push_back({r0[k], r1[k]});
  return out;
}

inline SparseSystem lacunary_system() {
  return SparseSystem({SparsePolynomial(2, Terms{{{0, 0}, 1}, {{0, 4}, 2}, {{3, 3}, 4}, {{6, 6}, 8}, {{12, 0}, 16}}),
                       SparsePolynomial(2, Terms{{{0, 0}, 3}, {{3, 7}, 5}, {{6, 2}, 7}, {{9, 1}, 11}, {{9, 5}, 13}})});
}

inline SparseSystem triangular_system() {
  return SparseSystem({
      SparsePolynomial(3, Terms{{{0, 0, 0}, 1}, {{1, 0, 1}, 2}, {{1, 1, 2}, 3}, {{1, 2, 3}, 4},
                                {{2, 0, 2}, 5}, {{2, 1, 3}, 6}, {{2, 2, 4}, 7}, {{3, 1, 4}, 8}}),
      SparsePolynomial(3, Terms{{{0, 0, 0}, 2}, {{1, 0, 1}, 3}, {{1, 1, 2}, 5}, {{1, 2, 3}, 7},
                                {{2, 0, 2}, 11}, {{2, 1, 3}, 13}, {{2, 2, 4}, 17}, {{3, 1, 4}, 19}}),
      SparsePolynomial(3, Terms{{{0, 0, 0}, 1}, {{0, 0, 2}, 3}, {{0, 0, 4}, 9}, {{0, 1, 5}, 27},
                                {{1, 0, 3}, 81}, {{1, 1, 4}, 243}}),
  });
}

inline SupportSystem bullet_supports() {
  return SupportSystem({Support(2, columns({0, 0, 1, 2, 4}, {0, 1, 1, 2, 1})),
                        Support(2, columns({0, 1, 2, 3, 3}, {0, 2, 1, 1, 2}))});
}

inline Support start_support() {
  return Support(2, columns({0, 0, 1, 1, 2, 3, 3, 3, 4, 5, 5, 6}, {0, 2, 0, 1, 3, 0, 1, 4, 2, 3, 4, 4}));
}

inline SupportSystem start_supports() { return SupportSystem({start_support(), start_support()}); }

}  // namespace testing
