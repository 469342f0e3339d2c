#pragma once

// Classification of support systems as lacunary, triangular or indecomposable.

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "sparsesolve/intlinalg.hpp"
#include "sparsesolve/supports.hpp"

namespace sparsesolve {

/// Z A != Z^n. phi is an LLL-reduced basis of Z A, so B = phi^{-1}(A) does not
/// depend on how the Smith form happened to pivot. With A = P D Q and psi = P^{-1},
/// the Smith basis P D_n equals phi * to_smith and psi * P D_n = diag(d).
struct Lacunary {
  LatticeMatrix phi;
  LatticeMatrix psi;
  LatticeMatrix to_smith;  ///< unimodular; lifted solutions w map to Smith coordinates by w^to_smith
  std::vector<std::uint64_t> factors;  ///< invariant factors d_1 | ... | d_n
  std::uint64_t index = 1;             ///< [Z^n : Z A] = prod d_i
  Preimage preimage;                   ///< B = phi^{-1}(A) and the point bijection
};

/// Some proper I has rank Z A_I = |I|.
struct Triangular {
  Quotient quotient;
  std::uint64_t base_mv = 0;   ///< MV(A_I) in Z^k
  std::uint64_t fiber_mv = 0;  ///< MV of the projected A_J
};

struct Indecomposable {};

using Classification = std::variant<Lacunary, Triangular, Indecomposable>;

/// Classifies the translated supports (each A_i moved so that its least point is 0).
/// The lacunary test runs first, then witnesses I by size and lexicographically.
/// Throws SupportError when MV(A) = 0.
Classification classify(const SupportSystem& s);

/// The triangular data for a given witness I, whether or not classify would
/// pick it. Throws SupportError if rank Z A_I != |I| or I is not proper.
Triangular triangular_split(const SupportSystem& s, std::span<const std::size_t> indices);

/// 1 < MV(A_I) < MV(A).
bool is_strictly_triangular(const SupportSystem& s, std::span<const std::size_t> indices);

enum class NodeKind { Lacunary, Triangular, Blackbox, Univariate, Homotopy };

std::string to_string(NodeKind k);

/// Per-node record of how a system was (or would be) solved. `paths` is the
/// path ledger of the node itself: blackbox solves count their solutions,
/// fiber transfers count one path per fiber point per homotopy, root
/// extraction and univariate solves count nothing. `raw_paths` counts every
/// path actually tracked, including total-degree paths and retries.
struct DecompositionTree {
  NodeKind kind = NodeKind::Blackbox;
  std::string role;  ///< "root", "base", "fiber", "lifted" or "start"
  std::size_t variables = 0;
  std::uint64_t mv = 0;
  std::uint64_t index = 1;             ///< lacunary nodes
  std::vector<std::uint64_t> factors;  ///< lacunary nodes
  std::vector<std::size_t> witness;    ///< triangular nodes
  std::size_t solutions = 0;
  std::size_t paths = 0;
  std::size_t raw_paths = 0;
  std::size_t fiber_homotopies = 0;
  std::size_t retries = 0;
  double time_ms = 0.0;
  std::vector<DecompositionTree> children;

  std::size_t total_paths() const;
  std::size_t total_raw_paths() const;
  /// Depth-first visit, parents before children.
  template <class F>
  void visit(F&& f) const {
    f(*this);
    for (const auto& c : children) c.visit(f);
  }
};

/// Predicted tree from the supports alone (no solving).
DecompositionTree plan(const SupportSystem& s);

}  // namespace sparsesolve
