#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "sparsesolve/geometry.hpp"
#include "sparsesolve/solver.hpp"
#include "sparsesolve/torus.hpp"

namespace sparsesolve {

namespace {

// Endpoints with |X_0| below this fraction of |X| are taken to lie at infinity.
constexpr double kInfinity = 1e-8;

void polish_and_add(const SparseSystem& f, const TorusPoint& x, const TrackerSettings& ts, SolutionSet& out,
                    Provenance p) {
  const Refinement r = newton_refine(f, x, ts);
  if (r.ok()) out.add(r.point, r.residual, std::move(p));
}

BlackboxResult univariate(const SparseSystem& f, const SolverSettings& settings) {
  BlackboxResult out;
  out.univariate = true;
  const SparsePolynomial& p = f[0];
  const std::int64_t lo = p.support[0][0];
  const auto degree = static_cast<std::size_t>(p.support[p.size() - 1][0] - lo);
  out.mv = degree;
  if (degree == 0) return out;

  std::vector<Complex> c(degree + 1, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < p.size(); ++k) c[static_cast<std::size_t>(p.support[k][0] - lo)] = p.coefficients[k];

  std::vector<Complex> roots;
  if (degree == 1) {
    roots.push_back(-c[0] / c[1]);
  } else {
    const auto d = static_cast<Eigen::Index>(degree);
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    for (Eigen::Index i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (Eigen::Index i = 0; i < d; ++i) companion(i, d - 1) = -c[static_cast<std::size_t>(i)] / c[degree];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(companion, false);
    if (es.info() != Eigen::Success) {
      out.warnings.push_back("companion eigenvalue solver did not converge");
      return out;
    }
    for (Eigen::Index i = 0; i < d; ++i) roots.push_back(es.eigenvalues()(i));
  }
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!(std::abs(roots[i]) > kTorusThreshold)) continue;
    polish_and_add(f, {roots[i]}, settings.tracker, out.solutions, Provenance{i, {}});
  }
  const std::size_t dups = out.solutions.deduplicate(settings.tracker.dedup_tolerance);
  if (dups) out.warnings.push_back(std::to_string(dups) + " repeated root(s) merged");
  out.solutions.sort();
  return out;
}

struct Homogenized {
  std::vector<Point> shift;
  std::vector<std::uint64_t> degree;
};

Homogenized homogenize_data(const SupportSystem& s) {
  Homogenized h;
  for (const Support& a : s) {
    Point m = a[0];
    for (const Point& p : a)
      for (std::size_t j = 0; j < p.size(); ++j) m[j] = std::min(m[j], p[j]);
    std::int64_t d = 0;
    for (const Point& p : a) {
      std::int64_t t = 0;
      for (std::size_t j = 0; j < p.size(); ++j) t += p[j] - m[j];
      d = std::max(d, t);
    }
    h.shift.push_back(std::move(m));
    h.degree.push_back(static_cast<std::uint64_t>(std::max<std::int64_t>(d, 1)));
  }
  return h;
}

BlackboxResult total_degree(const SparseSystem& f, Seed seed, const SolverSettings& settings) {
  BlackboxResult out;
  const std::size_t n = f.n();
  const std::size_t dim = n + 1;  // (X_0, X_1, ..., X_n)
  out.mv = mixed_volume(f.supports());
  const Homogenized hd = homogenize_data(f.supports());

  TrackerSettings ts = settings.tracker;
  ts.torus_check = false;

  auto unit = [dim](std::size_t j, std::int64_t d) {
    Point p(dim, 0);
    p[j] = d;
    return p;
  };

  for (std::size_t attempt = 0; attempt <= settings.max_retries; ++attempt) {
    Rng rng(derive_seed(seed, attempt));
    std::vector<Support> supports;
    std::vector<std::vector<Complex>> start, target;
    std::vector<Complex> cs(n), bs(n);
    for (std::size_t i = 0; i < n; ++i) {
      cs[i] = rng.unit_complex();
      bs[i] = rng.unit_complex();
      const auto d = static_cast<std::int64_t>(hd.degree[i]);
      std::vector<Point> pts;
      for (const Point& p : f[i].support) {
        Point q(dim);
        std::int64_t tot = 0;
        for (std::size_t j = 0; j < n; ++j) {
          q[j + 1] = p[j] - hd.shift[i][j];
          tot += q[j + 1];
        }
        q[0] = d - tot;
        pts.push_back(std::move(q));
      }
      std::vector<Point> all = pts;
      all.push_back(unit(i + 1, d));
      all.push_back(unit(0, d));
      Support u = Support::from_multiset(dim, all);
      std::vector<Complex> g(u.size()), t(u.size());
      for (std::size_t k = 0; k < pts.size(); ++k) t[*u.index_of(pts[k])] = f[i].coefficients[k];
      g[*u.index_of(unit(i + 1, d))] = cs[i];
      g[*u.index_of(unit(0, d))] = -bs[i];
      supports.push_back(std::move(u));
      start.push_back(std::move(g));
      target.push_back(std::move(t));
    }
    // Random affine patch a . X = 1.
    std::vector<Point> patch_pts{Point(dim, 0)};
    for (std::size_t j = 0; j < dim; ++j) patch_pts.push_back(unit(j, 1));
    Support patch(dim, patch_pts);
    std::vector<Complex> a(dim), pc(patch.size());
    for (auto& v : a) v = rng.unit_complex();
    pc[*patch.index_of(Point(dim, 0))] = -1.0;
    for (std::size_t j = 0; j < dim; ++j) pc[*patch.index_of(unit(j, 1))] = a[j];
    supports.push_back(patch);
    start.push_back(pc);
    target.push_back(pc);
    const Complex gamma = rng.unit_complex();
    const Homotopy h(SupportSystem(std::move(supports)), std::move(start), std::move(target), gamma);

    // Start points: X_0 = 1, X_i a d_i-th root of b_i / c_i, rescaled onto the patch.
    std::vector<std::vector<Complex>> roots(n);
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
      const Complex r = bs[i] / cs[i];
      const double dd = static_cast<double>(hd.degree[i]);
      for (std::uint64_t j = 0; j < hd.degree[i]; ++j)
        roots[i].push_back(std::polar(std::pow(std::abs(r), 1.0 / dd),
                                      (std::arg(r) + 2.0 * std::numbers::pi * static_cast<double>(j)) / dd));
      total *= hd.degree[i];
    }
    std::vector<TorusPoint> starts;
    starts.reserve(total);
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t count = 0; count < total; ++count) {
      TorusPoint x(dim);
      x[0] = 1.0;
      for (std::size_t i = 0; i < n; ++i) x[i + 1] = roots[i][idx[i]];
      Complex s(0.0, 0.0);
      for (std::size_t j = 0; j < dim; ++j) s += a[j] * x[j];
      for (auto& v : x) v /= s;
      starts.push_back(std::move(x));
      for (std::size_t i = n; i-- > 0;) {
        if (++idx[i] < hd.degree[i]) break;
        idx[i] = 0;
      }
    }

    const TrackReport rep = track_all(h, starts, ts, settings.threads);
    out.raw_paths += starts.size();
    // Endpoints near a coordinate hyperplane can be ill-conditioned for the
    // shifted projective system yet regular for F itself, so every path that
    // reached t = 1 gets a chance at polishing on F.
    auto consider = [&](const TorusPoint& X, Provenance p) {
      double scale = 0.0;
      for (const Complex& v : X) scale = std::max(scale, std::abs(v));
      if (!(std::abs(X[0]) > kInfinity * scale)) return;
      TorusPoint x(n);
      for (std::size_t j = 0; j < n; ++j) x[j] = X[j + 1] / X[0];
      if (!on_torus(x)) return;
      polish_and_add(f, x, settings.tracker, out.solutions, std::move(p));
    };
    for (std::size_t k = 0; k < rep.solutions.size(); ++k) consider(rep.solutions.points[k], rep.solutions.provenance[k]);
    for (std::size_t k = 0; k < rep.failures.size(); ++k) {
      const PathResult& r = rep.failures[k];
      if (r.t >= 1.0 && (r.status == PathStatus::NoConvergence || r.status == PathStatus::Singular))
        consider(r.point, Provenance{rep.failed_paths[k], {}});
    }
    out.solutions.deduplicate(settings.tracker.dedup_tolerance);
    if (out.solutions.size() >= out.mv) break;
    if (attempt < settings.max_retries) ++out.retries;
  }
  if (out.solutions.size() != out.mv)
    out.warnings.push_back("blackbox found " + std::to_string(out.solutions.size()) + " of " +
                           std::to_string(out.mv) + " solutions");
  out.solutions.sort();
  return out;
}

// Greedy search over elementary unimodular row operations for coordinates in
// which the total-degree start system is small. Returns M with the solve done
// on the supports M * A_i; solutions pull back through x_i = y^(column i of M).
LatticeMatrix reduce_coordinates(const SupportSystem& s) {
  const std::size_t n = s.n();
  LatticeMatrix m = LatticeMatrix::identity(n);
  auto cost = [](const SupportSystem& t) {
    long double b = 1.0L;
    for (std::uint64_t d : homogenize_data(t).degree) b *= static_cast<long double>(d);
    return b;
  };
  SupportSystem cur = s;
  long double best = cost(cur);
  for (std::size_t round = 0; round < 64; ++round) {
    bool improved = false;
    for (std::size_t i = 0; i < n && !improved; ++i)
      for (std::size_t j = 0; j < n && !improved; ++j) {
        if (i == j) continue;
        for (long sign : {1L, -1L}) {
          LatticeMatrix e = LatticeMatrix::identity(n);
          e(i, j) = sign;
          const SupportSystem cand = transform(cur, e);
          const long double c = cost(cand);
          if (c < best) {
            best = c;
            cur = cand;
            m = e * m;
            improved = true;
            break;
          }
        }
      }
    if (!improved) break;
  }
  return m;
}

}  // namespace

std::uint64_t bezout_number(const SupportSystem& s) {
  std::uint64_t b = 1;
  for (std::uint64_t d : homogenize_data(s).degree) b *= d;
  return b;
}

std::uint64_t blackbox_path_bound(const SupportSystem& s) {
  if (s.n() <= 1) return 0;
  return bezout_number(transform(s, reduce_coordinates(s)));
}

BlackboxResult blackbox(const SparseSystem& f, Seed seed, const SolverSettings& settings) {
  if (f.n() == 0) throw Error("blackbox: empty system");
  if (f.n() == 1) return univariate(f, settings);
  const LatticeMatrix m = reduce_coordinates(f.supports());
  if (m.is_identity()) return total_degree(f, seed, settings);

  BlackboxResult out = total_degree(transform(f, m), seed, settings);
  const MonomialMap back(m);
  SolutionSet pulled;
  for (std::size_t k = 0; k < out.solutions.size(); ++k)
    polish_and_add(f, back(out.solutions.points[k]), settings.tracker, pulled, out.solutions.provenance[k]);
  pulled.deduplicate(settings.tracker.dedup_tolerance);
  pulled.sort();
  if (pulled.size() != out.solutions.size())
    out.warnings.push_back("coordinate change lost " + std::to_string(out.solutions.size() - pulled.size()) +
                           " solution(s)");
  out.solutions = std::move(pulled);
  return out;
}

}  // namespace sparsesolve
