#include <doctest.h>

#include <string>

#include "fixtures.hpp"
#include "sparsesolve/decompose.hpp"
#include "sparsesolve/error.hpp"
#include "sparsesolve/geometry.hpp"

using namespace sparsesolve;

TEST_CASE("lacunary classification") {
  const Classification c = classify(testing::lacunary_system().supports());
  const auto* lac = std::get_if<Lacunary>(&c);
  REQUIRE(lac);
  CHECK(lac->index == 12);
  CHECK(lac->factors == std::vector<std::uint64_t>{1, 12});
  CHECK(lac->phi == LatticeMatrix::from_rows({{3, 0}, {-1, 4}}));
  CHECK(lac->preimage.supports[0] == Support(2, {{0, 0}, {0, 1}, {1, 1}, {2, 2}, {4, 1}}));
  CHECK(lac->preimage.supports[1] == Support(2, {{0, 0}, {1, 2}, {2, 1}, {3, 1}, {3, 2}}));
  // psi * phi * to_smith = diag(d)
  CHECK(lac->psi * lac->phi * lac->to_smith == LatticeMatrix::from_rows({{1, 0}, {0, 12}}));
}

TEST_CASE("triangular classification and split") {
  const SupportSystem s({Support(2, {{0, 0}, {2, 0}, {3, 0}}), Support(2, {{0, 0}, {1, 0}, {0, 2}, {1, 3}})});
  const Classification c = classify(s);
  const auto* tri = std::get_if<Triangular>(&c);
  REQUIRE(tri);
  CHECK(tri->quotient.witness == std::vector<std::size_t>{0});
  CHECK(tri->base_mv == 3);
  CHECK(tri->fiber_mv == 3);
  CHECK(mixed_volume(s) == 9);
  const std::size_t i[] = {0};
  CHECK(is_strictly_triangular(s, i));

  const std::size_t ij[] = {0, 1};
  const Triangular t = triangular_split(testing::triangular_system().supports(), ij);
  CHECK(t.base_mv == 8);
  CHECK(t.fiber_mv == 4);
}

TEST_CASE("indecomposable and degenerate supports") {
  CHECK(std::holds_alternative<Indecomposable>(classify(testing::bullet_supports())));
  CHECK(std::holds_alternative<Indecomposable>(classify(testing::start_supports())));
  const SupportSystem collinear({Support(2, {{0, 0}, {1, 1}}), Support(2, {{0, 0}, {2, 2}, {3, 3}})});
  try {
    (void)classify(collinear);
    FAIL("expected SupportError");
  } catch (const SupportError& e) {
    CHECK(std::string(e.what()).find("witness I = {1,2}") != std::string::npos);
  }
}

TEST_CASE("start supports restricted to vertices are lacunary") {
  const Support v = vertices(testing::start_support());
  const Classification c = classify(SupportSystem({v, v}));
  const auto* lac = std::get_if<Lacunary>(&c);
  REQUIRE(lac);
  CHECK(lac->index == 6);
  CHECK(mixed_volume(lac->preimage.supports) == 5);
}

TEST_CASE("plan predicts the tree") {
  const DecompositionTree lac = plan(testing::lacunary_system().supports());
  CHECK(lac.kind == NodeKind::Lacunary);
  CHECK(lac.mv == 120);
  REQUIRE(lac.children.size() == 1);
  CHECK(lac.children[0].kind == NodeKind::Blackbox);
  CHECK(lac.children[0].mv == 10);

  const DecompositionTree tri = plan(testing::triangular_system().supports());
  CHECK(tri.mv == 32);
  // Every exponent has x + y + z even, so the root is lacunary of index 2.
  CHECK(tri.kind == NodeKind::Lacunary);
  CHECK(tri.index == 2);
  const DecompositionTree& lifted = tri.children.at(0);
  CHECK(lifted.kind == NodeKind::Triangular);
  CHECK(lifted.children.at(0).mv == 8);
  CHECK(lifted.children.at(1).kind == NodeKind::Univariate);

  std::size_t nodes = 0;
  tri.visit([&](const DecompositionTree&) { ++nodes; });
  CHECK(nodes == 4);
}
