#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "sparsesolve/error.hpp"
#include "sparsesolve/random.hpp"
#include "sparsesolve/tracking.hpp"

using namespace sparsesolve;
using testing::Terms;

namespace {

SparseSystem univariate(Terms t) { return SparseSystem({SparsePolynomial(1, std::move(t))}); }

}  // namespace

TEST_CASE("newton converges to the square root of two") {
  // Classical iteration x <- (x + 2/x) / 2 from 1.4, to double precision.
  double oracle = 1.4;
  for (int k = 0; k < 8; ++k) oracle = 0.5 * (oracle + 2.0 / oracle);
  const auto r = newton_refine(univariate({{{0}, -2.0}, {{2}, 1.0}}), {Complex(1.4)}, TrackerSettings{});
  REQUIRE(r.ok());
  CHECK(std::abs(r.point[0] - oracle) < 1e-15);
  CHECK(r.residual < 1e-14);
  CHECK(r.relative_residual < 1e-14);
}

TEST_CASE("newton on laurent terms and singular jacobians") {
  // x^2 (1 + x) has a simple root at -1 on the torus.
  const auto r = newton_refine(univariate({{{2}, 1.0}, {{3}, 1.0}}), {Complex(-1.0 + 1e-3)}, TrackerSettings{});
  CHECK(r.ok());
  CHECK(std::abs(r.point[0] + 1.0) < 1e-12);
  const auto inv = newton_refine(univariate({{{-1}, 1.0}, {{0}, -4.0}}), {Complex(0.3)}, TrackerSettings{});
  CHECK(inv.ok());
  CHECK(std::abs(inv.point[0] - 0.25) < 1e-14);
  const SparseSystem flat({SparsePolynomial(2, Terms{{{0, 0}, 1.0}, {{1, 1}, -1.0}}),
                           SparsePolynomial(2, Terms{{{0, 0}, 2.0}, {{1, 1}, -2.0}})});
  CHECK(newton_refine(flat, {Complex(1.0), Complex(1.0)}, TrackerSettings{}).status == RefineStatus::Singular);
}

TEST_CASE("square roots by continuation") {
  // x^2 - 1 deforms to x^2 - 4: the endpoints are the roots of the target, 2 and -2.
  const auto g = univariate({{{0}, -1.0}, {{2}, 1.0}});
  const auto f = univariate({{{0}, -4.0}, {{2}, 1.0}});
  Rng rng(7);
  for (int trial = 0; trial < 4; ++trial) {
    const Homotopy h = Homotopy::between(g, f, rng.unit_complex());
    const TrackReport rep = track_all(h, {{Complex(1.0)}, {Complex(-1.0)}}, TrackerSettings{});
    REQUIRE(rep.solutions.size() == 2);
    CHECK(std::abs(rep.solutions.points[0][0] + 2.0) < 1e-12);
    CHECK(std::abs(rep.solutions.points[1][0] - 2.0) < 1e-12);
    CHECK(rep.failures.empty());
  }
}

TEST_CASE("cube roots of unity track to cube roots of eight") {
  const auto g = univariate({{{0}, -1.0}, {{3}, 1.0}});
  const auto f = univariate({{{0}, -8.0}, {{3}, 1.0}});
  const Homotopy h = Homotopy::between(g, f, Complex(0.6, 0.8));
  std::vector<TorusPoint> starts;
  for (int k = 0; k < 3; ++k) starts.push_back({std::polar(1.0, 2.0 * M_PI * k / 3.0)});
  const TrackReport rep = track_all(h, starts, TrackerSettings{}, 2);
  REQUIRE(rep.solutions.size() == 3);
  for (const auto& x : rep.solutions.points) CHECK(std::abs(std::abs(x[0]) - 2.0) < 1e-12);
}

TEST_CASE("homotopy between pads missing terms with zero") {
  const auto g = univariate({{{0}, -1.0}, {{2}, 1.0}});
  const auto f = univariate({{{0}, -4.0}, {{1}, 3.0}, {{2}, 1.0}});
  const Homotopy h = Homotopy::between(g, f, Complex(1.0));
  REQUIRE(h.supports[0].size() == 3);
  CHECK(h.start[0][1] == Complex(0.0));
  CHECK(h.target[0][1] == Complex(3.0));
}

TEST_CASE("a path that heads to zero leaves the torus") {
  const auto g = univariate({{{0}, -1.0}, {{1}, 1.0}});
  const auto f = univariate({{{1}, 1.0}, {{2}, 1.0}});
  const Homotopy h = Homotopy::between(g, f, Complex(1.0));
  // t x^2 + x - (1 - t) = 0: the root through x = 1 is (sqrt(1 + 4t(1-t)) - 1) / 2t, which ends at 0.
  const PathResult r = track_path(h, {Complex(1.0)}, TrackerSettings{});
  CHECK(r.status == PathStatus::LeftTorus);
}

TEST_CASE("solution sets sort and deduplicate") {
  SolutionSet s;
  s.add({Complex(1.0, 0.0)}, 0.0);
  s.add({Complex(-1.0, 0.0)}, 0.0);
  s.add({Complex(1.0 + 1e-9, 0.0)}, 0.0);
  CHECK(s.deduplicate(1e-6) == 1);
  s.sort();
  CHECK(s.points[0][0] == Complex(-1.0));
  CHECK(relative_distance(std::vector<Complex>{Complex(10.0)}, std::vector<Complex>{Complex(11.0)}) ==
        doctest::Approx(1.0 / 11.0));
}

TEST_CASE("settings validation") {
  TrackerSettings s;
  CHECK_NOTHROW(s.validate());
  s.min_step = 1.0;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("parallel_for visits every index once") {
  std::vector<int> hits(100, 0);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i] += 1; });
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}
