#pragma once

// Predictor-corrector continuation for H(t) = t F + (1 - t) gamma G.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "sparsesolve/supports.hpp"
#include "sparsesolve/torus.hpp"

namespace sparsesolve {

struct TrackerSettings {
  double initial_step = 1e-2;
  double min_step = 1e-10;
  double max_step = 1e-1;
  /// Corrector convergence: max-norm of the Newton update relative to max(1, |x|).
  double corrector_tolerance = 1e-7;
  /// Refinement convergence, same scale.
  double newton_tolerance = 1e-11;
  std::size_t max_newton_iters = 3;  ///< corrector iterations per step
  std::size_t refine_iters = 12;
  std::size_t max_steps = 50000;
  /// Bound on the relative residual max_i |f_i| / sum_k |c_k x^a_k| of accepted points.
  double success_residual = 1e-8;
  double divergence_bound = 1e8;
  /// Plain Newton on F once t >= 1 - endgame_threshold.
  double endgame_threshold = 1e-6;
  double dedup_tolerance = 1e-6;
  /// Fail paths that approach a coordinate hyperplane. Off for projective tracking.
  bool torus_check = true;

  /// Throws Error on inconsistent values.
  void validate() const;
};

/// Coefficient-space homotopy on fixed supports. Start or target coefficients
/// may be zero, e.g. a vertex-supported G embedded in the supports of F.
struct Homotopy {
  SupportSystem supports;
  std::vector<std::vector<Complex>> start;
  std::vector<std::vector<Complex>> target;
  Complex gamma{1.0, 0.0};

  Homotopy() = default;
  Homotopy(SupportSystem s, std::vector<std::vector<Complex>> g, std::vector<std::vector<Complex>> f,
           Complex gamma);

  /// G and F on the union of their supports, missing terms padded with zero.
  static Homotopy between(const SparseSystem& g, const SparseSystem& f, Complex gamma);

  std::size_t n() const { return supports.n(); }
};

enum class PathStatus { Success, StepUnderflow, Divergence, LeftTorus, MaxSteps, Singular, NoConvergence };

std::string to_string(PathStatus s);

struct PathResult {
  PathStatus status = PathStatus::Success;
  TorusPoint point;
  double t = 0.0;
  std::size_t steps = 0;
  double residual = 0.0;

  bool ok() const { return status == PathStatus::Success; }
};

PathResult track_path(const Homotopy& h, const TorusPoint& x0, const TrackerSettings& settings);

/// Where a solution came from: path index in the homotopy that produced it and
/// the chain of base-solution indices through the decomposition.
struct Provenance {
  std::size_t path = 0;
  std::vector<std::size_t> ancestry;
};

struct SolutionSet {
  std::vector<TorusPoint> points;
  std::vector<double> residuals;
  std::vector<Provenance> provenance;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  void add(TorusPoint x, double residual, Provenance p = {});
  void append(const SolutionSet& other);
  /// Lexicographic by rounded (real, imaginary) parts.
  void sort();
  /// Removes later points within `tolerance` of an earlier one; returns the count removed.
  std::size_t deduplicate(double tolerance);
};

/// max_i |x_i - y_i| / max(1, |x|, |y|)
double relative_distance(std::span<const Complex> x, std::span<const Complex> y);

struct TrackReport {
  SolutionSet solutions;
  std::vector<PathResult> failures;  ///< one entry per failed path, in start order
  std::vector<std::size_t> failed_paths;
  std::size_t paths = 0;
  std::size_t duplicates = 0;
  std::vector<std::string> warnings;
};

/// Tracks every start; successes are refined on F, deduplicated and sorted.
TrackReport track_all(const Homotopy& h, const std::vector<TorusPoint>& starts,
                      const TrackerSettings& settings, std::size_t threads = 1);

enum class RefineStatus { Converged, Singular, NoConvergence, LeftTorus };

struct Refinement {
  RefineStatus status = RefineStatus::Converged;
  TorusPoint point;
  double residual = 0.0;           ///< max_i |f_i(x)|
  double relative_residual = 0.0;  ///< max_i |f_i(x)| / sum_k |c_k x^a_k|
  std::size_t iterations = 0;

  bool ok() const { return status == RefineStatus::Converged; }
};

/// Newton's method on F. Converged means the last update is below
/// newton_tolerance and the relative residual is below success_residual.
Refinement newton_refine(const SparseSystem& f, const TorusPoint& x, const TrackerSettings& settings);

/// Runs body(i) for i in [0, count). threads <= 1 runs inline. Bodies must not
/// start parallel regions of their own.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body);

}  // namespace sparsesolve
