#include <benchmark/benchmark.h>

#include "cscope/bipartition.hpp"
#include "cscope/graph.hpp"
#include "cscope/synth.hpp"

namespace {

using namespace cscope;

// Mean in-block degree 8, about one cross edge per 16 in-block ones.
EndorsementGraph planted(std::size_t per_side) {
  const double p_in = 8.0 / static_cast<double>(per_side);
  return planted_partition({per_side, p_in, p_in / 16.0, 1}).graph;
}

void BM_KCore(benchmark::State& state) {
  const auto g = planted(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(k_core(g, 2));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()));
}
BENCHMARK(BM_KCore)->Arg(500)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_LargestComponent(benchmark::State& state) {
  const auto g = planted(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(largest_component(g));
}
BENCHMARK(BM_LargestComponent)->Arg(500)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_Bisect(benchmark::State& state) {
  const auto g = planted(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(bisect(g, 0.05, 1));
  state.counters["nodes"] = static_cast<double>(g.node_count());
}
BENCHMARK(BM_Bisect)->Arg(500)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);

}  // namespace
