#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "sparsesolve/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace sparsesolve::cli;

  CLI::App app{"Sparse polynomial systems on the complex torus"};
  app.require_subcommand(1);

  CommandOptions opts;
  app.add_option("--seed", opts.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--tolerance", opts.tolerance, "Residual tolerance")->capture_default_str()->check(
      CLI::PositiveNumber);
  app.add_flag("--json", opts.json, "Machine-readable output");
  app.add_option("--threads", opts.threads, "Worker threads, 0 for all")->capture_default_str();

  std::string input;
  auto* analyze = app.add_subcommand("analyze", "Print the predicted decomposition tree");
  auto* mv = app.add_subcommand("mv", "Mixed volume of the supports");
  auto* solve = app.add_subcommand("solve", "All isolated torus solutions");
  auto* start = app.add_subcommand("start", "Random start system on the vertex sets, with its solutions");
  for (auto* sub : {analyze, mv, solve, start}) {
    sub->add_option("input", input, "System file (JSON)")->required()->check(CLI::ExistingFile);
    sub->fallthrough();
  }

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Decomposable versus blackbox on the five-variable family");
  bench_cmd->add_option("family", bench.family, "e-basis, shifted, random, or i1;i2;j1;j2")->capture_default_str();
  bench_cmd->add_option("--count", bench.count, "Number of instances")->capture_default_str();
  bench_cmd->add_option("--blackbox-limit", bench.blackbox_limit, "Skip the blackbox above this many paths")
      ->capture_default_str();
  bench_cmd->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (analyze->parsed()) return cmd_analyze(input, opts, std::cout, std::cerr);
  if (mv->parsed()) return cmd_mv(input, opts, std::cout, std::cerr);
  if (solve->parsed()) return cmd_solve(input, opts, std::cout, std::cerr);
  if (start->parsed()) return cmd_start(input, opts, std::cout, std::cerr);
  return cmd_bench(bench, opts, std::cout, std::cerr);
}
