#include <random>

#include <benchmark/benchmark.h>

#include "patrol/harness.hpp"

using namespace patrol;

namespace {

void BM_FuseVectors(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(7);
  BeliefVector a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = belief_from_half_units(static_cast<int>(gen() % 3));
    b[i] = belief_from_half_units(static_cast<int>(gen() % 3));
  }
  for (auto _ : state) benchmark::DoNotOptimize(fuse_vectors(a, b));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_FuseVectors)->Arg(50)->Arg(1000);

void BM_Jacobi(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 gen(11);
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) w[i * n + j] = w[j * n + i] = static_cast<double>(gen() % 50);
  CommGraph g(n, w);
  for (auto _ : state) benchmark::DoNotOptimize(algebraic_connectivity(g));
}
BENCHMARK(BM_Jacobi)->Arg(10)->Arg(40);

void BM_ShortestPaths(benchmark::State& state) {
  const auto text = serialize_map(generate_default_map(1));
  for (auto _ : state) benchmark::DoNotOptimize(parse_map(text));
}
BENCHMARK(BM_ShortestPaths);

void BM_CyclicRoute(benchmark::State& state) {
  const auto g = load_map(PATROL_DEFAULT_MAP);
  for (auto _ : state) benchmark::DoNotOptimize(build_cyclic_route(g));
}
BENCHMARK(BM_CyclicRoute);

void BM_RunOne(benchmark::State& state) {
  const auto g = load_map(PATROL_DEFAULT_MAP);
  auto cfg = parse_config("");
  const CellId cell{static_cast<StrategyKind>(state.range(0)), 0.05, 0};
  for (auto _ : state) benchmark::DoNotOptimize(run_one(cfg, g, cell));
}
BENCHMARK(BM_RunOne)->DenseRange(0, static_cast<int>(kAllStrategies.size()) - 1)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
