#include <doctest.h>

#include <random>

#include "sparsesolve/error.hpp"
#include "sparsesolve/intlinalg.hpp"

using namespace sparsesolve;

namespace {

std::vector<long> diagonal(const SmithForm& s) {
  std::vector<long> d;
  for (const Integer& x : s.invariant_factors) d.push_back(x.get_si());
  return d;
}

void check_factorization(const LatticeMatrix& a) {
  const SmithForm s = smith_normal_form(a);
  CHECK(s.P * s.D * s.Q == a);
  CHECK(abs(determinant(s.P)) == 1);
  CHECK(abs(determinant(s.Q)) == 1);
  for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i)
    CHECK(s.invariant_factors[i + 1] % s.invariant_factors[i] == 0);
  for (const Integer& d : s.invariant_factors) CHECK(d > 0);
}

}  // namespace

TEST_CASE("smith form of hand-reduced matrices") {
  // Worked by hand: gcd of entries 2, gcd of 2x2 minors 12, det -144.
  const auto a = LatticeMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
  CHECK(diagonal(smith_normal_form(a)) == std::vector<long>{2, 6, 12});
  check_factorization(a);

  CHECK(diagonal(smith_normal_form(LatticeMatrix::from_rows({{1, 2}, {3, 4}}))) == std::vector<long>{1, 2});
  CHECK(diagonal(smith_normal_form(LatticeMatrix::from_rows({{2, 0, 0}, {0, 3, 0}}))) == std::vector<long>{1, 6});
  CHECK(diagonal(smith_normal_form(LatticeMatrix::from_rows({{4, 6}, {6, 9}}))) == std::vector<long>{1});
  CHECK(diagonal(smith_normal_form(LatticeMatrix::from_rows({{0, 0}, {0, 5}}))) == std::vector<long>{5});
}

TEST_CASE("smith form rejects the zero matrix") {
  CHECK_THROWS_AS(smith_normal_form(LatticeMatrix(2, 3)), LinalgError);
}

TEST_CASE("determinant, rank, inverse and index") {
  const auto u = LatticeMatrix::from_rows({{2, 1}, {5, 3}});
  CHECK(determinant(u) == 1);
  CHECK(unimodular_inverse(u) == LatticeMatrix::from_rows({{3, -1}, {-5, 2}}));
  CHECK_THROWS_AS(unimodular_inverse(LatticeMatrix::from_rows({{2, 0}, {0, 1}})), LinalgError);
  CHECK(determinant(LatticeMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 10}})) == -3);
  CHECK(rank(LatticeMatrix::from_rows({{1, 2, 3}, {2, 4, 6}})) == 1);
  CHECK(*lattice_index(LatticeMatrix::from_rows({{2, 0, 4}, {0, 3, 3}})) == 6);
  CHECK_FALSE(lattice_index(LatticeMatrix::from_rows({{1, 2}, {2, 4}})).has_value());
}

TEST_CASE("lll reduction") {
  // Gauss reduction by hand: (9,1),(12,0) -> (3,-1),(0,4).
  const auto b = lll_reduce(LatticeMatrix::from_rows({{9, 12}, {1, 0}}));
  CHECK(b == LatticeMatrix::from_rows({{3, 0}, {-1, 4}}));
  CHECK(lll_reduce(LatticeMatrix::from_rows({{1, 1}, {0, 1}})) == LatticeMatrix::identity(2));
  CHECK_THROWS_AS(lll_reduce(LatticeMatrix::from_rows({{1, 2}, {1, 2}})), LinalgError);
}

TEST_CASE("lll preserves the lattice") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> entry(-30, 30);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 3;
    LatticeMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) a(r, c) = entry(rng);
    if (determinant(a) == 0) continue;
    const LatticeMatrix b = lll_reduce(a);
    CHECK(abs(determinant(b)) == abs(determinant(a)));
    // Same lattice: a^{-1} b is integral, shown via equal index of [a | b].
    LatticeMatrix both(n, 2 * n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        both(r, c) = a(r, c);
        both(r, n + c) = b(r, c);
      }
    CHECK(*lattice_index(both) == abs(determinant(a)));
  }
}

TEST_CASE("smith factorization of random matrices") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> entry(-9, 9);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    LatticeMatrix a(dim(rng), dim(rng));
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = entry(rng);
    if (a.is_zero()) continue;
    check_factorization(a);
    CHECK(smith_normal_form(a).rank() == rank(a));
  }
}
