// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "hungarian.hpp"
#include "sparsesolve/cli/commands.hpp"
#include "sparsesolve/cli/families.hpp"
#include "sparsesolve/decompose.hpp"
#include "sparsesolve/geometry.hpp"
#include "sparsesolve/intlinalg.hpp"
#include "sparsesolve/random.hpp"
#include "sparsesolve/solver.hpp"
#include "sparsesolve/torus.hpp"

using namespace sparsesolve;
using testing::Terms;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << "[failed: " << what << "] ";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double max_residual(const SparseSystem& f, const SolutionSet& s) {
  double m = 0.0;
  for (const auto& x : s.points) m = std::max(m, residual(f, x));
  return m;
}

bool has_point(const SolutionSet& s, const TorusPoint& x, double tol) {
  return std::any_of(s.points.begin(), s.points.end(),
                     [&](const TorusPoint& y) { return relative_distance(x, y) < tol; });
}

// Each support translated so that its least point is the origin, as sorted point lists.
std::vector<std::vector<Point>> up_to_translation(const SupportSystem& s) {
  std::vector<std::vector<Point>> out;
  for (const Support& a : normalize(s).system) out.push_back(a.points());
  return out;
}

void mixed_volumes(Outcome& o) {
  auto timed = [&](const std::string& name, const SupportSystem& s, std::uint64_t expected) {
    const auto t0 = Clock::now();
    const std::uint64_t mv = mixed_volume(s);
    const double dt = seconds_since(t0);
    o.detail << name << "=" << mv << " (" << dt << " s) ";
    o.require(mv == expected, name + " != " + std::to_string(expected));
    o.require(dt < 10.0, name + " took >= 10 s");
  };
  timed("MV(B)", testing::bullet_supports(), 10);
  timed("MV(start)", testing::start_supports(), 30);
  timed("MV(A(e))", cli::family_supports(cli::standard_embedding()), 50);
  timed("MV(A(shifted))", cli::family_supports(cli::shifted_embedding()), 250);
}

void lacunary_index(Outcome& o) {
  const Classification c = classify(testing::lacunary_system().supports());
  const auto* lac = std::get_if<Lacunary>(&c);
  o.require(lac != nullptr, "not classified lacunary");
  if (!lac) return;
  o.detail << "index " << lac->index << "; B1 " << lac->preimage.supports[0] << "; B2 " << lac->preimage.supports[1];
  o.require(lac->index == 12, "index != 12");
  const SupportSystem expected({Support(2, {{0, 0}, {0, 1}, {1, 1}, {2, 2}, {4, 1}}),
                                Support(2, {{0, 0}, {1, 2}, {2, 1}, {3, 1}, {3, 2}})});
  o.require(up_to_translation(lac->preimage.supports) == up_to_translation(expected), "preimage supports differ");
}

void triangular_example(Outcome& o) {
  const SparseSystem f = testing::triangular_system();
  const SolveReport r = solve_decomposable(f, 2024);
  const double res = max_residual(f, r.solutions);
  o.detail << "decomposable " << r.solutions.size() << " solutions, max residual " << res << "; ";
  o.require(r.solutions.size() == 32, "decomposable count != 32");
  o.require(res <= 1e-8, "residual > 1e-8");

  // f1, f2 depend only on (u, v) = (xz, yz); group the solutions by that base point.
  std::vector<std::pair<Complex, Complex>> bases;
  std::vector<std::size_t> sizes;
  for (const auto& x : r.solutions.points) {
    const Complex u = x[0] * x[2], v = x[1] * x[2];
    std::size_t k = 0;
    while (k < bases.size() && std::abs(bases[k].first - u) + std::abs(bases[k].second - v) >
                                   1e-6 * std::max(1.0, std::abs(u) + std::abs(v)))
      ++k;
    if (k == bases.size()) {
      bases.push_back({u, v});
      sizes.push_back(0);
    }
    ++sizes[k];
  }
  o.detail << bases.size() << " base points, fiber sizes";
  for (std::size_t s : sizes) o.detail << ' ' << s;
  o.detail << "; ";
  o.require(bases.size() == 8, "base points != 8");
  o.require(std::all_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 4; }), "fiber size != 4");

  const std::size_t ij[] = {0, 1};
  const SolveReport t = solve_triangular(f, triangular_split(f.supports(), ij), 2024);
  o.detail << "split I={1,2}: base " << t.tree.children.at(0).solutions << ", fiber MV " << t.tree.children.at(1).mv
           << ", total " << t.solutions.size() << "; ";
  o.require(t.tree.children.at(0).solutions == 8, "split base != 8");
  o.require(t.tree.children.at(1).mv == 4 && t.tree.children.at(1).solutions == 4, "split fiber != 4");
  o.require(t.solutions.size() == 32, "split total != 32");

  // The eight base solutions, topped up with random base points to ten.
  Rng rng(99);
  while (bases.size() < 10) bases.push_back({rng.unit_complex() * rng.uniform(0.5, 2.0), rng.unit_complex()});
  const auto proj = LatticeMatrix::from_rows({{-1, -1, 1}});
  const std::size_t j[] = {2};
  double worst = 0.0;
  for (const auto& [u0, v0] : bases) {
    const SparseSystem g = restrict_to_fiber(f, j, proj, TorusPoint{u0, v0, Complex(1.0)});
    const Complex want[] = {1.0, 3.0 + 81.0 * u0 + 243.0 * u0 * v0, 9.0 + 27.0 * v0};
    const bool shape = g[0].size() == 3 && g[0].support[0] == Point{0} && g[0].support[1] == Point{2} &&
                       g[0].support[2] == Point{4};
    o.require(shape, "fiber support != {0,2,4}");
    if (!shape) continue;
    for (std::size_t k = 0; k < 3; ++k)
      worst = std::max(worst, std::abs(g[0].coefficients[k] - want[k]) / std::max(1.0, std::abs(want[k])));
  }
  o.detail << "fiber formula error " << worst;
  o.require(worst <= 1e-12, "fiber formula error > 1e-12");
}

void start_system(Outcome& o) {
  const SupportSystem s = testing::start_supports();
  const StartSystem st = decomposable_start_system(s, 31);
  const SolutionSet& v = st.report.solutions;
  o.detail << "start system " << v.size() << " solutions; ";
  o.require(v.size() == 30, "start count != 30");
  const Complex eta = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  std::size_t open = 0;
  for (const auto& x : v.points) {
    if (!has_point(v, {eta * x[0], x[1]}, 1e-8)) ++open;
    if (!has_point(v, {x[0], -x[1]}, 1e-8)) ++open;
  }
  o.detail << open << " orbit misses; ";
  o.require(open == 0, "not closed under the deck group");

  const SparseSystem f = random_system(s, 32);
  Rng rng(33);
  const Homotopy h = Homotopy::between(st.system, f, rng.unit_complex());
  const TrackReport rep = track_all(h, v.points, TrackerSettings{});
  const double res = max_residual(f, rep.solutions);
  o.detail << "homotopy " << rep.solutions.size() << " endpoints, max residual " << res;
  o.require(rep.solutions.size() == 30, "endpoints != 30");
  o.require(res <= 1e-8, "residual > 1e-8");
}

void ledger(Outcome& o) {
  const auto t0 = Clock::now();
  const SupportSystem s = cli::family_supports(cli::standard_embedding());
  const SparseSystem f = random_system(s, 404);
  const SolveReport r = solve_decomposable(f, 405);
  const double t_dec = seconds_since(t0);

  std::multiset<std::uint64_t> blackbox_sizes;
  std::vector<std::size_t> fiber_homotopies;
  r.tree.visit([&](const DecompositionTree& t) {
    if (t.kind == NodeKind::Blackbox) blackbox_sizes.insert(t.mv);
    if (t.kind == NodeKind::Triangular) fiber_homotopies.push_back(t.fiber_homotopies);
  });
  o.detail << "solutions " << r.solutions.size() << ", paths " << r.paths_tracked << ", blackbox sizes";
  for (auto b : blackbox_sizes) o.detail << ' ' << b;
  o.detail << ", fiber homotopies";
  for (auto h : fiber_homotopies) o.detail << ' ' << h;
  o.detail << "; ";
  o.require(r.solutions.size() == 50, "solutions != 50");
  o.require(r.paths_tracked == 64, "paths != 64");
  o.require(blackbox_sizes == std::multiset<std::uint64_t>{5, 10}, "blackbox sizes != {5, 10}");
  o.require(fiber_homotopies == std::vector<std::size_t>{4, 9}, "fiber homotopies != outer 4, inner 9");

  const BlackboxResult b = blackbox(f, 406);
  o.detail << "direct blackbox " << b.solutions.size() << "; ";
  o.require(b.solutions.size() == r.solutions.size(), "direct count differs");
  if (b.solutions.size() == r.solutions.size()) {
    const std::size_t n = r.solutions.size();
    std::vector<std::vector<double>> cost(n, std::vector<double>(n));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t c = 0; c < n; ++c) cost[a][c] = relative_distance(r.solutions.points[a], b.solutions.points[c]);
    const auto match = testing::hungarian(cost);
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a) worst = std::max(worst, cost[a][match[a]]);
    o.detail << "worst matched distance " << worst << "; ";
    o.require(worst < 1e-6, "matching distance >= 1e-6");
  }
  const double total = seconds_since(t0);
  o.detail << "time " << t_dec << " s decomposable, " << total << " s total";
  o.require(total < 120.0, "runtime >= 2 min");
}

SupportSystem random_triangular(Rng& rng, std::size_t& k_out, std::vector<std::size_t>& witness) {
  while (true) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 4));
    const std::size_t k = static_cast<std::size_t>(rng.integer(1, static_cast<std::int64_t>(n) - 1));
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[static_cast<std::size_t>(rng.integer(0, i - 1))]);
    witness.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(witness.begin(), witness.end());

    std::vector<Point> basis(k, Point(n));
    for (auto& b : basis)
      for (auto& x : b) x = rng.integer(-2, 2);
    std::vector<Support> supports;
    for (std::size_t i = 0; i < n; ++i) {
      const bool in_i = std::binary_search(witness.begin(), witness.end(), i);
      std::vector<Point> pts(static_cast<std::size_t>(rng.integer(2, 8)), Point(n, 0));
      for (auto& p : pts) {
        if (in_i) {
          for (const Point& b : basis) {
            const std::int64_t c = rng.integer(0, 2);
            for (std::size_t r = 0; r < n; ++r) p[r] += c * b[r];
          }
        } else {
          for (auto& x : p) x = rng.integer(0, 3);
        }
      }
      supports.push_back(Support::from_multiset(n, pts));
    }
    SupportSystem s(std::move(supports));
    if (span_rank(s, witness) != k) continue;
    k_out = k;
    return s;
  }
}

void product_formula(Outcome& o) {
  Rng rng(6);
  std::size_t checked = 0, nonzero = 0, bad = 0;
  while (nonzero < 60) {
    std::size_t k = 0;
    std::vector<std::size_t> witness;
    const SupportSystem s = random_triangular(rng, k, witness);
    const std::uint64_t mv = mixed_volume(s);
    const Triangular t = triangular_split(s, witness);
    ++checked;
    if (mv) ++nonzero;
    if (mv != t.base_mv * t.fiber_mv) ++bad;
  }
  o.detail << checked << " triangular systems (" << nonzero << " with MV > 0), " << bad << " violations";
  o.require(nonzero >= 50, "fewer than 50 instances");
  o.require(bad == 0, "MV != MV(A_I) * MV(A_J image)");
}

void bkk(Outcome& o) {
  Rng rng(7);
  std::size_t instances = 0, exact = 0, no_retry = 0;
  while (instances < 60) {
    const std::size_t n = static_cast<std::size_t>(rng.integer(2, 3));
    const std::int64_t box = n == 2 ? 5 : 3;
    std::vector<Support> supports;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Point> pts(static_cast<std::size_t>(rng.integer(3, 6)), Point(n));
      for (auto& p : pts)
        for (auto& x : p) x = rng.integer(0, box);
      supports.push_back(Support::from_multiset(n, pts));
    }
    const SupportSystem s(std::move(supports));
    const std::uint64_t mv = mixed_volume(s);
    if (mv == 0 || mv > 60) continue;
    ++instances;
    const SparseSystem f = random_system(s, rng.next());
    const BlackboxResult r = blackbox(f, rng.next());
    if (r.solutions.size() == mv) ++exact;
    if (r.complete() && r.retries == 0) ++no_retry;
  }
  const double rate = static_cast<double>(no_retry) / static_cast<double>(instances);
  o.detail << instances << " instances, " << exact << " with count = MV, " << no_retry << " without retry ("
           << 100.0 * rate << "%)";
  o.require(exact == instances, "some count != MV");
  o.require(rate >= 0.95, "retry-free rate < 95%");
}

void smith_suite(Outcome& o) {
  Rng rng(8);
  std::size_t bad = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto rows = static_cast<std::size_t>(rng.integer(1, 6)), cols = static_cast<std::size_t>(rng.integer(1, 6));
    LatticeMatrix a(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) a(r, c) = static_cast<long>(rng.integer(-20, 20));
    if (a.is_zero()) a(0, 0) = 1;
    const SmithForm s = smith_normal_form(a);
    bool ok = s.P * s.D * s.Q == a && abs(determinant(s.P)) == 1 && abs(determinant(s.Q)) == 1;
    for (std::size_t i = 0; i + 1 < s.invariant_factors.size(); ++i)
      ok = ok && s.invariant_factors[i + 1] % s.invariant_factors[i] == 0;
    if (!ok) ++bad;
  }
  o.detail << "1000 matrices, " << bad << " failures";
  o.require(bad == 0, "factorization failed");
}

void determinism(Outcome& o) {
  cli::CommandOptions opts;
  opts.seed = 77;
  opts.json = true;
  auto run = [&] {
    std::ostringstream out, err;
    const int code = cli::cmd_solve(testing::data_file("triangular.json"), opts, out, err);
    o.require(code == cli::kExitOk, "exit code " + std::to_string(code));
    return nlohmann::json::parse(out.str())["solutions"];
  };
  const auto a = run(), b = run();
  o.require(a.size() == b.size() && a.size() == 32, "solution counts differ");
  double worst = 0.0;
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k)
    for (std::size_t i = 0; i < a[k].size(); ++i)
      worst = std::max(worst, std::hypot(a[k][i][0].get<double>() - b[k][i][0].get<double>(),
                                         a[k][i][1].get<double>() - b[k][i][1].get<double>()));
  o.detail << a.size() << " solutions twice, max coordinate difference " << worst;
  o.require(worst <= 1e-8, "runs differ");
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"mixed volumes", mixed_volumes},
      {"lacunary index and preimage", lacunary_index},
      {"triangular example", triangular_example},
      {"vertex start system", start_system},
      {"path ledger on the five-variable family", ledger},
      {"product formula", product_formula},
      {"bkk count", bkk},
      {"smith normal form suite", smith_suite},
      {"determinism", determinism},
  };
  int failed = 0, number = 0;
  for (const auto& [name, run] : criteria) {
    ++number;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "[exception: " << e.what() << "]";
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << number << " " << name << " (" << seconds_since(t0)
              << " s): " << o.detail.str() << std::endl;
  }
  return failed ? 1 : 0;
}
