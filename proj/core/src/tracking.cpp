#include "sparsesolve/tracking.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "evaluator.hpp"
#include "sparsesolve/error.hpp"

namespace sparsesolve {

// ---------------------------------------------------------- TermEvaluator

namespace detail {

TermEvaluator::TermEvaluator(const SupportSystem& s) : n_(s.n()) {
  lo_.assign(n_, 0);
  hi_.assign(n_, 0);
  for (std::size_t i = 0; i < s.n(); ++i)
    for (const Point& p : s[i]) {
      owner_.push_back(i);
      exps_.push_back(p);
      for (std::size_t j = 0; j < n_; ++j) {
        lo_[j] = std::min(lo_[j], p[j]);
        hi_[j] = std::max(hi_[j], p[j]);
      }
    }
  // Derivatives need one power below the smallest negative exponent.
  for (std::size_t j = 0; j < n_; ++j)
    if (lo_[j] < 0) --lo_[j];
  pow_.resize(n_);
  for (std::size_t j = 0; j < n_; ++j) pow_[j].resize(static_cast<std::size_t>(hi_[j] - lo_[j] + 1));
  mono_.resize(static_cast<Eigen::Index>(exps_.size()));
  grad_.resize(static_cast<Eigen::Index>(exps_.size()), static_cast<Eigen::Index>(n_));
}

void TermEvaluator::update(const Vec& x) {
  for (std::size_t j = 0; j < n_; ++j) {
    auto& t = pow_[j];
    const std::size_t zero = static_cast<std::size_t>(-lo_[j]);
    const Complex xj = x(static_cast<Eigen::Index>(j));
    t[zero] = 1.0;
    for (std::size_t e = zero + 1; e < t.size(); ++e) t[e] = t[e - 1] * xj;
    if (zero > 0) {
      const Complex inv = 1.0 / xj;
      for (std::size_t e = zero; e-- > 0;) t[e] = t[e + 1] * inv;
    }
  }
  std::vector<Complex> fac(n_), prefix(n_ + 1), suffix(n_ + 1);
  for (std::size_t k = 0; k < exps_.size(); ++k) {
    const Point& a = exps_[k];
    for (std::size_t j = 0; j < n_; ++j) fac[j] = pow_[j][static_cast<std::size_t>(a[j] - lo_[j])];
    prefix[0] = 1.0;
    for (std::size_t j = 0; j < n_; ++j) prefix[j + 1] = prefix[j] * fac[j];
    suffix[n_] = 1.0;
    for (std::size_t j = n_; j-- > 0;) suffix[j] = suffix[j + 1] * fac[j];
    const auto row = static_cast<Eigen::Index>(k);
    mono_(row) = prefix[n_];
    for (std::size_t j = 0; j < n_; ++j) {
      const auto col = static_cast<Eigen::Index>(j);
      if (a[j] == 0) {
        grad_(row, col) = 0.0;
      } else {
        const Complex d = pow_[j][static_cast<std::size_t>(a[j] - 1 - lo_[j])];
        grad_(row, col) = static_cast<double>(a[j]) * d * prefix[j] * suffix[j + 1];
      }
    }
  }
}

void TermEvaluator::combine(const Vec& coeffs, Vec& f, Mat* jac) const {
  const auto n = static_cast<Eigen::Index>(n_);
  f.setZero(n);
  if (jac) jac->setZero(n, n);
  for (std::size_t k = 0; k < exps_.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    const Complex c = coeffs(row);
    if (c == Complex(0.0, 0.0)) continue;
    const auto i = static_cast<Eigen::Index>(owner_[k]);
    f(i) += c * mono_(row);
    if (jac) jac->row(i) += c * grad_.row(row);
  }
}

Eigen::VectorXd TermEvaluator::magnitudes(const Vec& coeffs) const {
  Eigen::VectorXd m = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_));
  for (std::size_t k = 0; k < exps_.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    m(static_cast<Eigen::Index>(owner_[k])) += std::abs(coeffs(row) * mono_(row));
  }
  return m;
}

Vec flatten(const std::vector<std::vector<Complex>>& c) {
  std::size_t total = 0;
  for (const auto& v : c) total += v.size();
  Vec out(static_cast<Eigen::Index>(total));
  Eigen::Index k = 0;
  for (const auto& v : c)
    for (const Complex& z : v) out(k++) = z;
  return out;
}

}  // namespace detail

namespace {

using detail::max_abs;
using detail::Mat;
using detail::TermEvaluator;
using detail::Vec;

constexpr double kSingularRcond = 1e-12;

Vec to_vec(std::span<const Complex> x) {
  Vec v(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) v(static_cast<Eigen::Index>(i)) = x[i];
  return v;
}

TorusPoint to_point(const Vec& v) { return TorusPoint(v.data(), v.data() + v.size()); }

bool finite(const Vec& v) { return v.allFinite(); }

bool near_hyperplane(const Vec& x) {
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(std::abs(x(i)) > kTorusThreshold)) return true;
  return false;
}

// Newton step: solves J d = f. False when J is numerically singular.
// Rows are equilibrated first so that the rcond test ignores row scaling.
bool newton_update(const Mat& jac, const Vec& f, Vec& d) {
  Eigen::VectorXd w = jac.rowwise().lpNorm<Eigen::Infinity>();
  for (Eigen::Index i = 0; i < w.size(); ++i) w(i) = w(i) > 0 ? 1.0 / w(i) : 1.0;
  Eigen::PartialPivLU<Mat> lu(w.asDiagonal() * jac);
  if (!(lu.rcond() >= kSingularRcond)) return false;
  d = lu.solve(w.asDiagonal() * f);
  return finite(d);
}

// max_i |f_i(x)| / sum_k |c_k x^a_k|; assumes ev.update(x) was called.
double relative_residual(const TermEvaluator& ev, const Vec& coeffs, const Vec& f) {
  const Eigen::VectorXd m = ev.magnitudes(coeffs);
  double r = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) r = std::max(r, m(i) > 0 ? std::abs(f(i)) / m(i) : std::abs(f(i)));
  return r;
}

Refinement refine(TermEvaluator& ev, const Vec& coeffs, Vec x, const TrackerSettings& s) {
  Refinement r;
  Vec f, d;
  Mat jac;
  bool small_update = false;
  for (std::size_t it = 0; it < s.refine_iters; ++it) {
    if (s.torus_check && near_hyperplane(x)) {
      r.status = RefineStatus::LeftTorus;
      break;
    }
    ev.update(x);
    ev.combine(coeffs, f, &jac);
    r.residual = max_abs(f);
    r.relative_residual = relative_residual(ev, coeffs, f);
    if (small_update && r.relative_residual <= s.success_residual) break;
    if (!newton_update(jac, f, d)) {
      r.status = RefineStatus::Singular;
      break;
    }
    x -= d;
    r.iterations = it + 1;
    small_update = max_abs(d) <= s.newton_tolerance * std::max(1.0, max_abs(x));
  }
  if (r.status == RefineStatus::Converged) {
    ev.update(x);
    ev.combine(coeffs, f, nullptr);
    r.residual = max_abs(f);
    r.relative_residual = relative_residual(ev, coeffs, f);
    if (!(small_update && r.relative_residual <= s.success_residual && finite(x)))
      r.status = RefineStatus::NoConvergence;
    if (s.torus_check && near_hyperplane(x)) r.status = RefineStatus::LeftTorus;
  }
  r.point = to_point(x);
  return r;
}

class Tracker {
 public:
  Tracker(const Homotopy& h, const TrackerSettings& s)
      : s_(s), ev_(h.supports), target_(detail::flatten(h.target)), start_(h.gamma * detail::flatten(h.start)),
        dt_(target_ - start_) {}

  PathResult run(const TorusPoint& x0) {
    PathResult out;
    Vec x = to_vec(x0);
    double t = 0.0;
    double h = s_.initial_step;
    std::size_t streak = 0;
    Vec f, ht, dx, d;
    Mat jac;

    if (!correct(0.0, x, s_.refine_iters)) return fail(out, PathStatus::Singular, x, 0.0);

    while (t < 1.0 - s_.endgame_threshold) {
      if (++out.steps > s_.max_steps) return fail(out, PathStatus::MaxSteps, x, t);
      const double t1 = std::min(1.0, t + h);

      // Euler predictor on H_x dx/dt = -H_t.
      ev_.update(x);
      ev_.combine(coefficients(t), f, &jac);
      ev_.combine(dt_, ht, nullptr);
      bool ok = newton_update(jac, ht, dx);
      Vec y = x;
      if (ok) {
        y -= (t1 - t) * dx;
        ok = correct(t1, y, s_.max_newton_iters);
      }
      if (ok) {
        x = y;
        t = t1;
        if (max_abs(x) > s_.divergence_bound) return fail(out, PathStatus::Divergence, x, t);
        if (s_.torus_check && near_hyperplane(x)) return fail(out, PathStatus::LeftTorus, x, t);
        if (++streak >= 4) {
          h = std::min(s_.max_step, h * 1.5);
          streak = 0;
        }
      } else {
        h *= 0.5;
        streak = 0;
        if (h < s_.min_step) return fail(out, PathStatus::StepUnderflow, x, t);
      }
    }

    Refinement r = refine(ev_, target_, x, s_);
    out.t = 1.0;
    out.point = r.point;
    out.residual = r.residual;
    switch (r.status) {
      case RefineStatus::Converged: out.status = PathStatus::Success; break;
      case RefineStatus::Singular: out.status = PathStatus::Singular; break;
      case RefineStatus::NoConvergence: out.status = PathStatus::NoConvergence; break;
      case RefineStatus::LeftTorus: out.status = PathStatus::LeftTorus; break;
    }
    if (out.ok() && max_abs(to_vec(out.point)) > s_.divergence_bound) out.status = PathStatus::Divergence;
    return out;
  }

  TermEvaluator& evaluator() { return ev_; }
  const Vec& target() const { return target_; }

 private:
  Vec coefficients(double t) const { return t * target_ + (1.0 - t) * start_; }

  bool correct(double t, Vec& x, std::size_t iters) {
    const Vec c = coefficients(t);
    Vec f, d;
    Mat jac;
    for (std::size_t it = 0; it < iters; ++it) {
      ev_.update(x);
      ev_.combine(c, f, &jac);
      if (!newton_update(jac, f, d)) return false;
      x -= d;
      if (!finite(x)) return false;
      if (max_abs(d) <= s_.corrector_tolerance * std::max(1.0, max_abs(x))) return true;
    }
    return false;
  }

  static PathResult fail(PathResult& out, PathStatus status, const Vec& x, double t) {
    out.status = status;
    out.point = to_point(x);
    out.t = t;
    return out;
  }

  const TrackerSettings& s_;
  TermEvaluator ev_;
  Vec target_, start_, dt_;
};

// Rounded sort key for one coordinate part.
double key(double v) { return std::round(v * 1e6); }

bool point_less(const TorusPoint& a, const TorusPoint& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    const double ar = key(a[i].real()), br = key(b[i].real());
    if (ar != br) return ar < br;
    const double ai = key(a[i].imag()), bi = key(b[i].imag());
    if (ai != bi) return ai < bi;
  }
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
    if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
  }
  return a.size() < b.size();
}

}  // namespace

// --------------------------------------------------------------- Settings

void TrackerSettings::validate() const {
  if (!(min_step > 0 && min_step <= initial_step && initial_step <= max_step && max_step < 1))
    throw Error("tracker settings: need 0 < min_step <= initial_step <= max_step < 1");
  if (!(corrector_tolerance > 0 && newton_tolerance > 0 && success_residual > 0 && dedup_tolerance > 0 &&
        divergence_bound > 0 && endgame_threshold > 0))
    throw Error("tracker settings: tolerances must be positive");
  if (max_newton_iters == 0 || refine_iters == 0 || max_steps == 0)
    throw Error("tracker settings: iteration limits must be positive");
}

// --------------------------------------------------------------- Homotopy

Homotopy::Homotopy(SupportSystem s, std::vector<std::vector<Complex>> g, std::vector<std::vector<Complex>> f,
                   Complex gm)
    : supports(std::move(s)), start(std::move(g)), target(std::move(f)), gamma(gm) {
  if (start.size() != supports.n() || target.size() != supports.n())
    throw Error("homotopy: coefficient lists do not match the supports");
  for (std::size_t i = 0; i < supports.n(); ++i)
    if (start[i].size() != supports[i].size() || target[i].size() != supports[i].size())
      throw Error("homotopy: coefficient count mismatch in polynomial " + std::to_string(i));
}

Homotopy Homotopy::between(const SparseSystem& g, const SparseSystem& f, Complex gamma) {
  if (g.n() != f.n()) throw Error("homotopy: systems of different size");
  std::vector<Support> supports;
  std::vector<std::vector<Complex>> gc, fc;
  for (std::size_t i = 0; i < f.n(); ++i) {
    std::vector<Point> pts = g[i].support.points();
    pts.insert(pts.end(), f[i].support.begin(), f[i].support.end());
    Support u = Support::from_multiset(f.n(), std::move(pts));
    std::vector<Complex> a(u.size()), b(u.size());
    for (std::size_t k = 0; k < g[i].size(); ++k) a[*u.index_of(g[i].support[k])] = g[i].coefficients[k];
    for (std::size_t k = 0; k < f[i].size(); ++k) b[*u.index_of(f[i].support[k])] = f[i].coefficients[k];
    supports.push_back(std::move(u));
    gc.push_back(std::move(a));
    fc.push_back(std::move(b));
  }
  return Homotopy(SupportSystem(std::move(supports)), std::move(gc), std::move(fc), gamma);
}

std::string to_string(PathStatus s) {
  switch (s) {
    case PathStatus::Success: return "success";
    case PathStatus::StepUnderflow: return "step-underflow";
    case PathStatus::Divergence: return "divergence";
    case PathStatus::LeftTorus: return "left-torus";
    case PathStatus::MaxSteps: return "max-steps";
    case PathStatus::Singular: return "singular";
    case PathStatus::NoConvergence: return "no-convergence";
  }
  return "unknown";
}

PathResult track_path(const Homotopy& h, const TorusPoint& x0, const TrackerSettings& settings) {
  if (x0.size() != h.n()) throw Error("track_path: start point has the wrong dimension");
  Tracker tracker(h, settings);
  return tracker.run(x0);
}

// ------------------------------------------------------------ SolutionSet

void SolutionSet::add(TorusPoint x, double residual, Provenance p) {
  points.push_back(std::move(x));
  residuals.push_back(residual);
  provenance.push_back(std::move(p));
}

void SolutionSet::append(const SolutionSet& other) {
  points.insert(points.end(), other.points.begin(), other.points.end());
  residuals.insert(residuals.end(), other.residuals.begin(), other.residuals.end());
  provenance.insert(provenance.end(), other.provenance.begin(), other.provenance.end());
}

void SolutionSet::sort() {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return point_less(points[a], points[b]); });
  SolutionSet out;
  for (std::size_t i : order) out.add(std::move(points[i]), residuals[i], std::move(provenance[i]));
  *this = std::move(out);
}

std::size_t SolutionSet::deduplicate(double tolerance) {
  SolutionSet out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    bool dup = false;
    for (const auto& q : out.points)
      if (relative_distance(points[i], q) < tolerance) {
        dup = true;
        break;
      }
    if (!dup) out.add(std::move(points[i]), residuals[i], std::move(provenance[i]));
  }
  const std::size_t removed = points.size() - out.points.size();
  *this = std::move(out);
  return removed;
}

double relative_distance(std::span<const Complex> x, std::span<const Complex> y) {
  if (x.size() != y.size()) throw Error("relative_distance: dimension mismatch");
  double d = 0.0, scale = 1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::max(d, std::abs(x[i] - y[i]));
    scale = std::max({scale, std::abs(x[i]), std::abs(y[i])});
  }
  return d / scale;
}

// -------------------------------------------------------------- track_all

TrackReport track_all(const Homotopy& h, const std::vector<TorusPoint>& starts, const TrackerSettings& settings,
                      std::size_t threads) {
  settings.validate();
  std::vector<PathResult> results(starts.size());
  parallel_for(starts.size(), threads, [&](std::size_t i) { results[i] = track_path(h, starts[i], settings); });

  TrackReport report;
  report.paths = starts.size();
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].ok()) {
      report.solutions.add(std::move(results[i].point), results[i].residual, Provenance{i, {}});
    } else {
      report.failed_paths.push_back(i);
      report.failures.push_back(std::move(results[i]));
    }
  }
  report.duplicates = report.solutions.deduplicate(settings.dedup_tolerance);
  if (report.duplicates)
    report.warnings.push_back(std::to_string(report.duplicates) + " duplicate endpoint(s) removed");
  if (!report.failures.empty())
    report.warnings.push_back(std::to_string(report.failures.size()) + " path(s) failed");
  report.solutions.sort();
  return report;
}

Refinement newton_refine(const SparseSystem& f, const TorusPoint& x, const TrackerSettings& settings) {
  if (x.size() != f.n()) throw Error("newton_refine: point has the wrong dimension");
  TermEvaluator ev(f.supports());
  std::vector<std::vector<Complex>> c;
  for (const auto& p : f.polynomials()) c.push_back(p.coefficients);
  return refine(ev, detail::flatten(c), to_vec(x), settings);
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& body) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t k = 0; k < std::min(threads, count); ++k) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace sparsesolve
