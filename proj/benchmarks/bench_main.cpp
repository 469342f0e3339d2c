#include <benchmark/benchmark.h>

#include "sparsesolve/geometry.hpp"
#include "sparsesolve/intlinalg.hpp"
#include "sparsesolve/random.hpp"
#include "sparsesolve/solver.hpp"

#ifdef SPARSESOLVE_BENCH_FAMILY
#include "sparsesolve/cli/families.hpp"
#endif

using namespace sparsesolve;

namespace {

SupportSystem random_supports(std::size_t n, std::int64_t box, Seed seed) {
  Rng rng(seed);
  std::vector<Support> supports;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Point> pts(6, Point(n));
    for (auto& p : pts)
      for (auto& x : p) x = rng.integer(0, box);
    supports.push_back(Support::from_multiset(n, pts));
  }
  return SupportSystem(std::move(supports));
}

void BM_MixedVolumeRandom(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const SupportSystem s = random_supports(n, 3, 11);
  for (auto _ : state) benchmark::DoNotOptimize(mixed_volume(s));
}
BENCHMARK(BM_MixedVolumeRandom)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Rng rng(12);
  LatticeMatrix a(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < 2 * n; ++c) a(r, c) = rng.integer(-20, 20);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->RangeMultiplier(2)->Range(2, 16);

void BM_BlackboxRandom(benchmark::State& state) {
  const SupportSystem s = random_supports(2, 5, 13);
  const SparseSystem f = random_system(s, 14);
  for (auto _ : state) benchmark::DoNotOptimize(blackbox(f, 15));
  state.counters["mv"] = static_cast<double>(mixed_volume(s));
}
BENCHMARK(BM_BlackboxRandom)->Unit(benchmark::kMillisecond);

#ifdef SPARSESOLVE_BENCH_FAMILY
void BM_FamilyMixedVolume(benchmark::State& state) {
  const SupportSystem s = cli::family_supports(cli::standard_embedding());
  for (auto _ : state) benchmark::DoNotOptimize(mixed_volume(s));
}
BENCHMARK(BM_FamilyMixedVolume)->Unit(benchmark::kMillisecond);

void BM_FamilyDecomposable(benchmark::State& state) {
  const SparseSystem f = random_system(cli::family_supports(cli::standard_embedding()), 16);
  for (auto _ : state) benchmark::DoNotOptimize(solve_decomposable(f, 17));
}
BENCHMARK(BM_FamilyDecomposable)->Unit(benchmark::kMillisecond);
#endif

}  // namespace
BENCHMARK_MAIN();
