#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "sparsesolve/error.hpp"
#include "sparsesolve/random.hpp"
#include "sparsesolve/torus.hpp"

using namespace sparsesolve;
using testing::Terms;

namespace {

bool close(Complex a, Complex b, double tol = 1e-12) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("characters and evaluation") {
  const TorusPoint x{Complex(2.0, 0.0), Complex(0.0, 1.0)};
  CHECK(close(character(x, std::vector<std::int64_t>{3, 2}), Complex(-8.0, 0.0)));
  CHECK(close(character(x, std::vector<std::int64_t>{-1, -1}), Complex(0.0, -0.5)));
  CHECK(close(character(x, std::vector<std::int64_t>{0, 0}), Complex(1.0, 0.0)));

  const SparseSystem f({SparsePolynomial(2, Terms{{{0, 0}, -4.0}, {{2, 0}, 1.0}}),
                        SparsePolynomial(2, Terms{{{0, 0}, 1.0}, {{0, 2}, 1.0}})});
  CHECK(residual(f, x) < 1e-15);
  CHECK(on_torus(x));
  CHECK_FALSE(on_torus(TorusPoint{Complex(1e-12, 0.0), Complex(1.0, 0.0)}));
}

TEST_CASE("monomial maps compose") {
  const MonomialMap a(LatticeMatrix::from_rows({{1, 2}, {0, 1}}));
  const MonomialMap b(LatticeMatrix::from_rows({{3, 0}, {-1, 1}}));
  const TorusPoint x{Complex(1.3, -0.2), Complex(-0.7, 0.9)};
  const TorusPoint direct = a(b(x));
  const TorusPoint composed = compose(a, b)(x);
  for (std::size_t i = 0; i < 2; ++i) CHECK(close(direct[i], composed[i]));
  // (x, y) -> (x, x^2 y)
  const TorusPoint y = a(TorusPoint{Complex(2.0), Complex(3.0)});
  CHECK(close(y[0], 2.0));
  CHECK(close(y[1], 12.0));
}

TEST_CASE("diagonal fibers") {
  const std::uint64_t d[] = {3, 2};
  const TorusPoint y{Complex(8.0, 0.0), Complex(-4.0, 0.0)};
  const auto fiber = diagonal_fiber(d, y);
  REQUIRE(fiber.size() == 6);
  for (const auto& x : fiber) {
    CHECK(close(std::pow(x[0], 3), y[0], 1e-12));
    CHECK(close(x[1] * x[1], y[1], 1e-12));
  }
  // Principal branch first, last coordinate fastest.
  CHECK(close(fiber[0][0], 2.0));
  CHECK(close(fiber[0][1], Complex(0.0, 2.0)));
  CHECK(close(fiber[1][1], Complex(0.0, -2.0)));
  CHECK(close(fiber[2][0], 2.0 * std::polar(1.0, 2.0 * std::numbers::pi / 3.0)));
}

TEST_CASE("fiber restriction of the cubic-in-z example") {
  // Over the fiber (u0/z, v0/z, z): 1 + (3 + 81 u0 + 243 u0 v0) z^2 + (9 + 27 v0) z^4.
  const SparseSystem f = testing::triangular_system();
  const auto proj = LatticeMatrix::from_rows({{-1, -1, 1}});
  const std::size_t j[] = {2};
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const Complex u0 = rng.unit_complex() * rng.uniform(0.5, 2.0), v0 = rng.unit_complex() * rng.uniform(0.5, 2.0);
    const TorusPoint y0{u0, v0, Complex(1.0)};
    const SparseSystem g = restrict_to_fiber(f, j, proj, y0);
    REQUIRE(g.n() == 1);
    REQUIRE(g[0].size() == 3);
    CHECK(g[0].support[0] == Point{0});
    CHECK(g[0].support[1] == Point{2});
    CHECK(g[0].support[2] == Point{4});
    CHECK(close(g[0].coefficients[0], 1.0));
    CHECK(close(g[0].coefficients[1], 3.0 + 81.0 * u0 + 243.0 * u0 * v0));
    CHECK(close(g[0].coefficients[2], 9.0 + 27.0 * v0));

    const TorusPoint z{rng.unit_complex()};
    const TorusPoint x = fiber_point(proj, y0, z);
    CHECK(close(evaluate(f[2], x), evaluate(g[0], z), 1e-11));
  }
}

TEST_CASE("fiber restriction detects total cancellation") {
  const SparseSystem h({SparsePolynomial(2, Terms{{{0, 0}, 1.0}, {{1, 0}, 1.0}}),
                        SparsePolynomial(2, Terms{{{1, 0}, 1.0}, {{0, 1}, -1.0}})});
  const std::size_t j[] = {1};
  CHECK(restrict_to_fiber(h, j, LatticeMatrix::from_rows({{0, 1}}), TorusPoint{1.0, 1.0})[0].size() == 2);
  // Both terms of h_2 land on z^1 with coefficients 1 and -1.
  CHECK_THROWS_AS(restrict_to_fiber(h, j, LatticeMatrix::from_rows({{1, 1}}), TorusPoint{1.0, 1.0}),
                  DegenerateFiberError);
}

TEST_CASE("relabel moves coefficients onto the preimage") {
  const SparseSystem f = testing::lacunary_system();
  const Preimage p = preimage_supports(normalize(f.supports()).system, LatticeMatrix::from_rows({{3, 0}, {-1, 4}}));
  const SparseSystem g = relabel(normalize(f).system, p);
  // g(Phi(x)) = f(x) with Phi(x, y) = (x^3 / y, y^4).
  const TorusPoint x{Complex(0.8, 0.3), Complex(-0.4, 1.1)};
  const TorusPoint w = MonomialMap(LatticeMatrix::from_rows({{3, 0}, {-1, 4}}))(x);
  for (std::size_t i = 0; i < 2; ++i) CHECK(close(evaluate(g[i], w), evaluate(f[i], x), 1e-11));
}
