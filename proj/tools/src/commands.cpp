#include "sparsesolve/cli/commands.hpp"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "sparsesolve/cli/families.hpp"
#include "sparsesolve/cli/system_file.hpp"
#include "sparsesolve/geometry.hpp"

namespace sparsesolve::cli {

using nlohmann::json;

namespace {

std::string subset(const std::vector<std::size_t>& w) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i] + 1;
  os << '}';
  return os.str();
}

std::string node_line(const DecompositionTree& t) {
  std::ostringstream os;
  switch (t.kind) {
    case NodeKind::Lacunary:
      os << "lacunary, index " << t.index << "; child MV " << (t.children.empty() ? 0 : t.children[0].mv)
         << "; total " << t.mv;
      break;
    case NodeKind::Triangular:
      os << "triangular, I = " << subset(t.witness) << ", MV " << t.children.at(0).mv << " × "
         << t.children.at(1).mv << " = " << t.mv;
      break;
    case NodeKind::Blackbox: os << "indecomposable, MV " << t.mv; break;
    case NodeKind::Univariate: os << "univariate, MV " << t.mv; break;
    case NodeKind::Homotopy: os << "homotopy from start system, MV " << t.mv; break;
  }
  return os.str();
}

void describe_into(const DecompositionTree& t, std::size_t depth, std::ostream& os) {
  os << std::string(2 * depth, ' ');
  if (depth > 0) os << t.role << ": ";
  os << node_line(t) << '\n';
  for (const auto& c : t.children) describe_into(c, depth + 1, os);
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
};

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(pos);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

std::string quartiles(const std::vector<double>& v) {
  if (v.empty()) return "-";
  std::ostringstream os;
  os << std::setprecision(4) << quantile(v, 0.0) << '/' << quantile(v, 0.25) << '/' << quantile(v, 0.5) << '/'
     << quantile(v, 0.75) << '/' << quantile(v, 1.0);
  return os.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + '"';
}

}  // namespace

SolverSettings make_settings(const CommandOptions& opts) {
  SolverSettings s;
  s.tracker.success_residual = opts.tolerance;
  s.tracker.validate();
  s.threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  return s;
}

std::string describe_tree(const DecompositionTree& t) {
  std::ostringstream os;
  describe_into(t, 0, os);
  return os.str();
}

json to_json(const DecompositionTree& t) {
  json j = {{"kind", to_string(t.kind)}, {"role", t.role},      {"variables", t.variables},
            {"mv", t.mv},                {"solutions", t.solutions}, {"paths", t.paths},
            {"raw_paths", t.raw_paths},  {"time_ms", t.time_ms}};
  if (t.kind == NodeKind::Lacunary) {
    j["index"] = t.index;
    j["factors"] = t.factors;
  }
  if (t.kind == NodeKind::Triangular) {
    std::vector<std::size_t> w;
    for (std::size_t i : t.witness) w.push_back(i + 1);
    j["witness"] = w;
    j["fiber_homotopies"] = t.fiber_homotopies;
  }
  if (t.retries) j["retries"] = t.retries;
  json children = json::array();
  for (const auto& c : t.children) children.push_back(to_json(c));
  j["children"] = children;
  return j;
}

json to_json(const SolveReport& r) {
  return {{"seed", r.seed},
          {"mv", r.mv},
          {"complete", r.complete()},
          {"solutions", to_json(r.solutions)},
          {"residuals", r.solutions.residuals},
          {"paths_tracked", r.paths_tracked},
          {"raw_paths", r.raw_paths},
          {"blackbox_calls", r.blackbox_calls},
          {"tree", to_json(r.tree)},
          {"warnings", r.warnings}};
}

int cmd_analyze(const std::string& path, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const SystemFile file = read_system_file(path);
    const ZeroMixedVolume z = mv_is_zero(file.supports);
    if (z.zero) {
      err << "mixed volume 0, witness I = " << subset(z.witness) << '\n';
      return kExitError;
    }
    const DecompositionTree t = plan(file.supports);
    if (opts.json)
      out << json{{"mv", t.mv}, {"tree", to_json(t)}}.dump(2) << '\n';
    else
      out << describe_tree(t);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_mv(const std::string& path, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const SystemFile file = read_system_file(path);
    const std::uint64_t mv = mixed_volume(file.supports);
    if (opts.json)
      out << json{{"mv", mv}}.dump() << '\n';
    else
      out << mv << '\n';
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

int cmd_solve(const std::string& path, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  SolveReport report;
  try {
    const SystemFile file = read_system_file(path);
    if (!file.system) {
      err << "error: coefficients required\n";
      return kExitError;
    }
    const SolverSettings settings = make_settings(opts);
    try {
      report = solve_decomposable(*file.system, opts.seed, settings);
    } catch (const CountMismatch& e) {
      err << "warning: " << e.what() << "; falling back to a start-system homotopy\n";
      SolveReport general = solve_general(*file.system, derive_seed(opts.seed, 0x5eed), settings);
      report = general.solutions.size() >= e.partial().solutions.size() ? std::move(general) : e.partial();
    } catch (const DegenerateFiberError& e) {
      err << "warning: " << e.what() << "; falling back to a start-system homotopy\n";
      report = solve_general(*file.system, derive_seed(opts.seed, 0x5eed), settings);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  report.seed = opts.seed;

  if (opts.json) {
    out << to_json(report).dump(2) << '\n';
  } else {
    out << "solutions " << report.solutions.size() << " / MV " << report.mv << ", paths " << report.paths_tracked
        << ", seed " << report.seed << '\n';
    out << describe_tree(report.tree);
    out << std::setprecision(16);
    for (std::size_t k = 0; k < report.solutions.size(); ++k) {
      for (const Complex& z : report.solutions.points[k]) out << z.real() << ' ' << z.imag() << "  ";
      out << "# residual " << std::setprecision(3) << report.solutions.residuals[k] << std::setprecision(16)
          << '\n';
    }
  }
  for (const auto& w : report.warnings) err << "warning: " << w << '\n';
  return report.complete() ? kExitOk : kExitPartial;
}

int cmd_start(const std::string& path, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  StartSystem start;
  try {
    const SystemFile file = read_system_file(path);
    start = decomposable_start_system(file.supports, opts.seed, make_settings(opts));
  } catch (const CountMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitPartial;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  json j = to_json(start.system);
  j["seed"] = opts.seed;
  j["mv"] = start.report.mv;
  j["solutions"] = to_json(start.report.solutions);
  j["residuals"] = start.report.solutions.residuals;
  out << j.dump(2) << '\n';
  return start.report.complete() ? kExitOk : kExitPartial;
}

int cmd_bench(const BenchOptions& bench, const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  std::optional<Embedding> fixed;
  try {
    fixed = parse_family(bench.family);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  const SolverSettings settings = make_settings(opts);

  struct Row {
    std::uint64_t mv = 0;
    std::size_t paths_dec = 0;
    double time_dec = 0.0;
    std::optional<double> time_bb;
  };
  std::vector<Row> good;
  std::size_t failures = 0;

  out << "instance_id,mv,paths_dec,paths_bb,time_dec_ms,time_bb_ms,status\n";
  for (std::size_t id = 0; id < bench.count; ++id) {
    const Seed inst = derive_seed(opts.seed, id);
    Row row;
    std::string paths_bb, time_bb, status = "ok";
    try {
      Rng rng(derive_seed(inst, 1));
      const Embedding e = fixed ? *fixed : random_embedding(rng);
      const SupportSystem supports = family_supports(e);
      const SparseSystem f = random_system(supports, derive_seed(inst, 2));
      row.mv = mixed_volume(supports);

      Timer t;
      SolveReport r;
      try {
        r = solve_decomposable(f, derive_seed(inst, 3), settings);
      } catch (const CountMismatch& m) {
        r = m.partial();
        status = "dec-short";
      }
      row.time_dec = t.ms();
      row.paths_dec = r.paths_tracked;

      if (blackbox_path_bound(supports) > bench.blackbox_limit) {
        if (status == "ok") status = "bb-skipped";
      } else {
        Timer tb;
        const BlackboxResult b = blackbox(f, derive_seed(inst, 4), settings);
        row.time_bb = tb.ms();
        paths_bb = std::to_string(b.raw_paths);
        std::ostringstream ts;
        ts << std::fixed << std::setprecision(3) << *row.time_bb;
        time_bb = ts.str();
        if (!b.complete() && status == "ok") status = "bb-short";
      }
    } catch (const Error& ex) {
      status = std::string("error: ") + ex.what();
    }
    out << id << ',' << row.mv << ',' << row.paths_dec << ',' << paths_bb << ',' << std::fixed
        << std::setprecision(3) << row.time_dec << ',' << time_bb << ',' << csv_field(status) << '\n';
    out.unsetf(std::ios::floatfield);
    if (status == "ok" || status == "bb-skipped")
      good.push_back(row);
    else
      ++failures;
  }

  if (bench.count == 0) return kExitOk;
  std::map<std::uint64_t, std::vector<const Row*>> buckets;
  for (const Row& r : good) buckets[r.mv].push_back(&r);
  err << "summary (min/q1/median/q3/max), " << failures << " instance(s) excluded\n";
  for (const auto& [mv, rows] : buckets) {
    std::vector<double> paths, td, tb;
    for (const Row* r : rows) {
      paths.push_back(static_cast<double>(r->paths_dec));
      td.push_back(r->time_dec);
      if (r->time_bb) tb.push_back(*r->time_bb);
    }
    err << "MV " << mv << " (" << rows.size() << "): paths_dec " << quartiles(paths) << "; time_dec_ms "
        << quartiles(td) << "; time_bb_ms " << quartiles(tb) << '\n';
  }
  return failures ? kExitPartial : kExitOk;
}

}  // namespace sparsesolve::cli
