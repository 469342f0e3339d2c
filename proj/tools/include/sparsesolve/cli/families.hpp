#pragma once

// The five-variable benchmark family A(i, j) = (i(A_1), i(A_2), j(B_1), j(B_2), C)
// for injective linear maps i, j : Z^2 -> Z^5 with i(Z^2) and j(Z^2) meeting
// only in 0. C is the unit cube {0,1}^5.

#include <array>
#include <optional>
#include <string>

#include "sparsesolve/random.hpp"
#include "sparsesolve/supports.hpp"

namespace sparsesolve::cli {

struct Embedding {
  std::array<Point, 2> i;  ///< images of e_1, e_2 under i
  std::array<Point, 2> j;
};

/// i = (e_1, e_2), j = (e_3, e_4). MV 50.
Embedding standard_embedding();
/// i = (e_1 - e_2, e_2 - e_3), j = (e_3 - e_4, e_4 - e_5). MV 250.
Embedding shifted_embedding();
/// Entries uniform in [-2, 2], rejected until the four vectors are independent.
Embedding random_embedding(Rng& rng);

bool is_independent(const Embedding& e);

SupportSystem family_supports(const Embedding& e);

/// "e-basis", "shifted", "random", or four comma separated vectors
/// "i1;i2;j1;j2" such as "1,0,0,0,0;0,1,0,0,0;0,0,1,0,0;0,0,0,1,0".
/// Returns the fixed embedding, or nullopt for "random".
std::optional<Embedding> parse_family(const std::string& spec);

}  // namespace sparsesolve::cli
