#include "sparsesolve/solver.hpp"

#include <chrono>

#include "sparsesolve/geometry.hpp"
#include "sparsesolve/torus.hpp"

namespace sparsesolve {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void finalize(SolveReport& r, Seed seed) {
  r.seed = seed;
  r.mv = r.tree.mv;
  r.tree.solutions = r.solutions.size();
  r.paths_tracked = r.tree.total_paths();
  r.raw_paths = r.tree.total_raw_paths();
  r.blackbox_calls = 0;
  r.tree.visit([&](const DecompositionTree& t) {
    if (t.kind == NodeKind::Blackbox || t.kind == NodeKind::Univariate) ++r.blackbox_calls;
  });
}

// Newton polish on F; points that do not converge keep their plain residual.
void refine_all(const SparseSystem& f, SolutionSet& s, const TrackerSettings& ts) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Refinement r = newton_refine(f, s.points[i], ts);
    if (r.ok()) {
      s.points[i] = r.point;
      s.residuals[i] = r.residual;
    } else {
      s.residuals[i] = residual(f, s.points[i]);
    }
  }
}

void check_count(SolveReport& r, const std::string& where) {
  if (r.solutions.size() == r.tree.mv) return;
  const std::string msg = where + ": found " + std::to_string(r.solutions.size()) + " solutions, mixed volume " +
                          std::to_string(r.tree.mv);
  throw CountMismatch(msg, std::move(r));
}

std::vector<std::size_t> extend(std::vector<std::size_t> a, std::size_t s) {
  a.insert(a.begin(), s);
  return a;
}

// F_I written in the first k coordinates after psi.
SparseSystem base_system(const SparseSystem& f, const Quotient& q) {
  std::vector<SparsePolynomial> polys;
  for (std::size_t t = 0; t < q.witness.size(); ++t) {
    const SparsePolynomial& p = f[q.witness[t]];
    std::vector<Complex> c(q.base[t].size());
    for (std::size_t k = 0; k < p.size(); ++k) {
      Point img = q.psi.apply(p.support[k]);
      img.resize(q.k);
      c[*q.base[t].index_of(img)] = p.coefficients[k];
    }
    polys.emplace_back(q.base[t], std::move(c));
  }
  return SparseSystem(std::move(polys));
}

SolveReport solve_node(const SparseSystem& f, Seed seed, const SolverSettings& settings, const std::string& role);

SolveReport lacunary_node(const SparseSystem& fn, const Lacunary& lac, Seed seed, const SolverSettings& settings) {
  const auto t0 = Clock::now();
  SolveReport child = solve_node(relabel(fn, lac.preimage), derive_seed(seed, 1), settings, "lifted");
  const MonomialMap psi(lac.psi);
  const MonomialMap to_smith(lac.to_smith);

  SolveReport out;
  for (std::size_t s = 0; s < child.solutions.size(); ++s) {
    const auto fiber = diagonal_fiber(lac.factors, to_smith(child.solutions.points[s]));
    for (std::size_t j = 0; j < fiber.size(); ++j)
      out.solutions.add(psi(fiber[j]), 0.0, Provenance{j, extend(child.solutions.provenance[s].ancestry, s)});
  }
  refine_all(fn, out.solutions, settings.tracker);
  const std::size_t dups = out.solutions.deduplicate(settings.tracker.dedup_tolerance);
  if (dups) out.warnings.push_back(std::to_string(dups) + " coincident lifted point(s) removed");
  out.solutions.sort();

  out.tree.kind = NodeKind::Lacunary;
  out.tree.variables = fn.n();
  out.tree.index = lac.index;
  out.tree.factors = lac.factors;
  out.tree.mv = lac.index * child.tree.mv;
  out.tree.solutions = out.solutions.size();
  out.tree.children.push_back(std::move(child.tree));
  out.warnings.insert(out.warnings.end(), child.warnings.begin(), child.warnings.end());
  out.tree.time_ms = ms_since(t0);
  return out;
}

SolveReport triangular_node(const SparseSystem& fn, const Triangular& tri, Seed seed,
                            const SolverSettings& settings) {
  const auto t0 = Clock::now();
  const Quotient& q = tri.quotient;
  const std::size_t n = fn.n();

  SolveReport base = solve_node(base_system(fn, q), derive_seed(seed, 1), settings, "base");
  const MonomialMap psi(q.psi);
  std::vector<TorusPoint> y0s;
  for (const TorusPoint& y : base.solutions.points) {
    TorusPoint w(n, Complex(1.0, 0.0));
    std::copy(y.begin(), y.end(), w.begin());
    y0s.push_back(psi(w));
  }

  SolveReport out;
  out.tree.kind = NodeKind::Triangular;
  out.tree.variables = n;
  out.tree.witness = q.witness;
  out.tree.mv = tri.base_mv * tri.fiber_mv;
  out.warnings = base.warnings;

  if (!y0s.empty()) {
    // One fiber solved from scratch, the others reached by parameter homotopy.
    SolveReport fib = solve_node(restrict_to_fiber(fn, q.complement, q.projection, y0s[0]), derive_seed(seed, 2),
                                 settings, "fiber");
    const std::vector<TorusPoint>& z0 = fib.solutions.points;
    const auto c0 = fiber_coefficients(fn, q.complement, q.projection, y0s[0], q.images);

    std::vector<SolutionSet> fibers(y0s.size());
    std::vector<std::size_t> raw(y0s.size(), 0), retries(y0s.size(), 0);
    std::vector<std::vector<std::string>> notes(y0s.size());
    fibers[0] = fib.solutions;
    const Seed transfer_seed = derive_seed(seed, 3);
    parallel_for(y0s.size() - 1, settings.threads, [&](std::size_t idx) {
      const std::size_t s = idx + 1;
      const auto cs = fiber_coefficients(fn, q.complement, q.projection, y0s[s], q.images);
      SolutionSet acc;
      for (std::size_t attempt = 0; attempt <= settings.max_retries; ++attempt) {
        Rng rng(derive_seed(transfer_seed, s * 64 + attempt));
        const Homotopy h(q.images, c0, cs, rng.unit_complex());
        TrackReport rep = track_all(h, z0, settings.tracker, 1);
        raw[s] += z0.size();
        acc.append(rep.solutions);
        acc.deduplicate(settings.tracker.dedup_tolerance);
        if (acc.size() >= z0.size()) break;
        if (attempt < settings.max_retries) ++retries[s];
      }
      if (acc.size() != z0.size())
        notes[s].push_back("fiber " + std::to_string(s) + ": " + std::to_string(acc.size()) + " of " +
                           std::to_string(z0.size()) + " points reached");
      acc.sort();
      fibers[s] = std::move(acc);
    });

    for (std::size_t s = 0; s < y0s.size(); ++s) {
      for (std::size_t r = 0; r < fibers[s].size(); ++r)
        out.solutions.add(fiber_point(q.projection, y0s[s], fibers[s].points[r]), 0.0,
                          Provenance{r, extend(base.solutions.provenance[s].ancestry, s)});
      out.tree.raw_paths += raw[s];
      out.tree.retries += retries[s];
      out.warnings.insert(out.warnings.end(), notes[s].begin(), notes[s].end());
    }
    out.tree.fiber_homotopies = y0s.size() - 1;
    out.tree.paths = (y0s.size() - 1) * z0.size();
    out.warnings.insert(out.warnings.end(), fib.warnings.begin(), fib.warnings.end());
    out.tree.children.push_back(std::move(base.tree));
    out.tree.children.push_back(std::move(fib.tree));
  } else {
    out.tree.children.push_back(std::move(base.tree));
  }

  refine_all(fn, out.solutions, settings.tracker);
  const std::size_t dups = out.solutions.deduplicate(settings.tracker.dedup_tolerance);
  if (dups) out.warnings.push_back(std::to_string(dups) + " coincident fiber point(s) removed");
  out.solutions.sort();
  out.tree.solutions = out.solutions.size();
  out.tree.time_ms = ms_since(t0);
  return out;
}

SolveReport blackbox_node(const SparseSystem& fn, Seed seed, const SolverSettings& settings) {
  const auto t0 = Clock::now();
  BlackboxResult bb = blackbox(fn, seed, settings);
  SolveReport out;
  out.solutions = std::move(bb.solutions);
  out.warnings = std::move(bb.warnings);
  out.tree.kind = bb.univariate ? NodeKind::Univariate : NodeKind::Blackbox;
  out.tree.variables = fn.n();
  out.tree.mv = bb.mv;
  out.tree.solutions = out.solutions.size();
  out.tree.paths = bb.univariate ? 0 : out.solutions.size();
  out.tree.raw_paths = bb.raw_paths;
  out.tree.retries = bb.retries;
  out.tree.time_ms = ms_since(t0);
  return out;
}

SolveReport solve_node(const SparseSystem& f, Seed seed, const SolverSettings& settings, const std::string& role) {
  const SparseSystem fn = normalize(f).system;
  const Classification c = classify(fn.supports());
  SolveReport r;
  if (const auto* lac = std::get_if<Lacunary>(&c))
    r = lacunary_node(fn, *lac, seed, settings);
  else if (const auto* tri = std::get_if<Triangular>(&c))
    r = triangular_node(fn, *tri, seed, settings);
  else
    r = blackbox_node(fn, seed, settings);
  r.tree.role = role;
  finalize(r, seed);
  check_count(r, to_string(r.tree.kind) + " node");
  return r;
}

// Residuals against the caller's system (normalization divides by monomials).
void report_residuals(const SparseSystem& f, SolveReport& r) {
  for (std::size_t i = 0; i < r.solutions.size(); ++i) r.solutions.residuals[i] = residual(f, r.solutions.points[i]);
}

}  // namespace

SolveReport solve_decomposable(const SparseSystem& f, Seed seed, const SolverSettings& settings) {
  settings.tracker.validate();
  SolveReport r = solve_node(f, seed, settings, "root");
  report_residuals(f, r);
  return r;
}

SolveReport solve_lacunary(const SparseSystem& f, const Lacunary& lac, Seed seed, const SolverSettings& settings) {
  settings.tracker.validate();
  SolveReport r = lacunary_node(normalize(f).system, lac, seed, settings);
  r.tree.role = "root";
  finalize(r, seed);
  report_residuals(f, r);
  check_count(r, "lacunary solve");
  return r;
}

SolveReport solve_triangular(const SparseSystem& f, const Triangular& tri, Seed seed,
                             const SolverSettings& settings) {
  settings.tracker.validate();
  SolveReport r = triangular_node(normalize(f).system, tri, seed, settings);
  r.tree.role = "root";
  finalize(r, seed);
  report_residuals(f, r);
  check_count(r, "triangular solve");
  return r;
}

StartSystem decomposable_start_system(const SupportSystem& s, Seed seed, const SolverSettings& settings) {
  std::vector<Support> v;
  for (const Support& a : s) v.push_back(vertices(a));
  StartSystem out;
  out.system = random_system(SupportSystem(std::move(v)), derive_seed(seed, 1));
  out.report = solve_decomposable(out.system, derive_seed(seed, 2), settings);
  out.report.tree.role = "start";
  return out;
}

SolveReport solve_general(const SparseSystem& f, Seed seed, const SolverSettings& settings) {
  settings.tracker.validate();
  const auto t0 = Clock::now();
  StartSystem start = decomposable_start_system(f.supports(), derive_seed(seed, 1), settings);
  const std::vector<TorusPoint>& starts = start.report.solutions.points;
  const std::uint64_t mv = start.report.mv;

  SolveReport out;
  out.tree.kind = NodeKind::Homotopy;
  out.tree.role = "root";
  out.tree.variables = f.n();
  out.tree.mv = mv;
  out.tree.paths = starts.size();
  out.warnings = start.report.warnings;
  for (std::size_t attempt = 0; attempt <= settings.max_retries; ++attempt) {
    Rng rng(derive_seed(seed, 100 + attempt));
    const Homotopy h = Homotopy::between(start.system, f, rng.unit_complex());
    TrackReport rep = track_all(h, starts, settings.tracker, settings.threads);
    out.tree.raw_paths += starts.size();
    out.solutions.append(rep.solutions);
    out.solutions.deduplicate(settings.tracker.dedup_tolerance);
    for (std::size_t k = 0; k < rep.failures.size(); ++k)
      out.warnings.push_back("attempt " + std::to_string(attempt) + ", path " +
                             std::to_string(rep.failed_paths[k]) + ": " + to_string(rep.failures[k].status));
    if (out.solutions.size() >= mv) break;
    if (attempt < settings.max_retries) ++out.tree.retries;
  }
  out.solutions.sort();
  if (out.solutions.size() != mv)
    out.warnings.push_back("found " + std::to_string(out.solutions.size()) + " of " + std::to_string(mv) +
                           " torus solutions");
  out.tree.children.push_back(std::move(start.report.tree));
  out.tree.time_ms = ms_since(t0);
  finalize(out, seed);
  report_residuals(f, out);
  return out;
}

}  // namespace sparsesolve
