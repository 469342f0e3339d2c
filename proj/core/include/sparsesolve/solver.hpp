#pragma once

// Recursive solving of sparse systems along lacunary / triangular structure.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sparsesolve/decompose.hpp"
#include "sparsesolve/error.hpp"
#include "sparsesolve/random.hpp"
#include "sparsesolve/supports.hpp"
#include "sparsesolve/tracking.hpp"

namespace sparsesolve {

struct SolverSettings {
  TrackerSettings tracker;
  std::size_t threads = 1;
  /// Extra attempts with a fresh gamma after a homotopy comes up short.
  std::size_t max_retries = 3;
};

struct SolveReport {
  SolutionSet solutions;
  DecompositionTree tree;
  std::uint64_t mv = 0;
  std::size_t paths_tracked = 0;  ///< tree.total_paths()
  std::size_t raw_paths = 0;      ///< tree.total_raw_paths()
  std::size_t blackbox_calls = 0;
  Seed seed = 0;
  std::vector<std::string> warnings;

  bool complete() const { return solutions.size() == mv; }
};

/// Number of solutions found differs from the mixed volume. Carries what was found.
class CountMismatch : public Error {
 public:
  CountMismatch(const std::string& what, SolveReport partial)
      : Error(what), partial_(std::move(partial)) {}
  const SolveReport& partial() const { return partial_; }

 private:
  SolveReport partial_;
};

/// All MV isolated torus solutions of a generic F, following its decomposition.
SolveReport solve_decomposable(const SparseSystem& f, Seed seed, const SolverSettings& settings = {});

/// `lac` must be classify(f.supports()). Solves iota(F) recursively and
/// extracts roots along the diagonal fibers.
SolveReport solve_lacunary(const SparseSystem& f, const Lacunary& lac, Seed seed,
                           const SolverSettings& settings = {});

/// `tri` must come from classify(f.supports()). Solves F_I, one fiber system,
/// and moves to the other fibers by parameter homotopy.
SolveReport solve_triangular(const SparseSystem& f, const Triangular& tri, Seed seed,
                             const SolverSettings& settings = {});

struct BlackboxResult {
  SolutionSet solutions;
  std::uint64_t mv = 0;
  std::size_t raw_paths = 0;  ///< total-degree paths, summed over attempts
  std::size_t retries = 0;
  bool univariate = false;
  std::vector<std::string> warnings;

  bool complete() const { return solutions.size() == mv; }
};

/// Companion-matrix roots for n = 1; total-degree homotopy for n >= 2.
/// Never throws on a short count; check complete().
BlackboxResult blackbox(const SparseSystem& f, Seed seed, const SolverSettings& settings = {});

/// Product of the total degrees after translating each support into the positive orthant.
std::uint64_t bezout_number(const SupportSystem& s);

/// Total-degree paths per blackbox attempt, i.e. the Bezout number in the
/// coordinates the blackbox actually uses. 0 for n = 1.
std::uint64_t blackbox_path_bound(const SupportSystem& s);

struct StartSystem {
  SparseSystem system;  ///< random coefficients on the vertex sets v(A_i)
  SolveReport report;   ///< its solutions
};

StartSystem decomposable_start_system(const SupportSystem& s, Seed seed, const SolverSettings& settings = {});

/// Start system on the vertex sets, then a gamma-twisted straight-line
/// homotopy to F. Short counts are reported as warnings, not errors.
SolveReport solve_general(const SparseSystem& f, Seed seed, const SolverSettings& settings = {});

}  // namespace sparsesolve
