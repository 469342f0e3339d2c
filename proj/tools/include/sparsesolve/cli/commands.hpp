#pragma once

// The five subcommands. Each returns the process exit code:
// 0 success, 1 input or structural error, 2 numerical partial success.

#include <cstddef>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "sparsesolve/decompose.hpp"
#include "sparsesolve/random.hpp"
#include "sparsesolve/solver.hpp"

namespace sparsesolve::cli {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPartial = 2;

struct CommandOptions {
  Seed seed = 0;
  double tolerance = 1e-8;
  bool json = false;
  std::size_t threads = 0;  ///< 0 means all hardware threads
};

struct BenchOptions {
  std::string family = "random";
  std::size_t count = 10;
  /// Instances whose blackbox would track more total-degree paths than this
  /// get status "bb-skipped".
  std::uint64_t blackbox_limit = 2000;
};

SolverSettings make_settings(const CommandOptions& opts);

int cmd_analyze(const std::string& path, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_mv(const std::string& path, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_solve(const std::string& path, const CommandOptions& opts, std::ostream& out, std::ostream& err);
int cmd_start(const std::string& path, const CommandOptions& opts, std::ostream& out, std::ostream& err);
/// CSV on `out`, quartile summary per MV bucket on `err`.
int cmd_bench(const BenchOptions& bench, const CommandOptions& opts, std::ostream& out, std::ostream& err);

nlohmann::json to_json(const DecompositionTree& t);
nlohmann::json to_json(const SolveReport& r);

/// One line per node, e.g. "lacunary, index 12; child MV 10; total 120".
std::string describe_tree(const DecompositionTree& t);

}  // namespace sparsesolve::cli
