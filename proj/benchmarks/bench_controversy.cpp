#include <benchmark/benchmark.h>

#include "cscope/bipartition.hpp"
#include "cscope/controversy.hpp"
#include "cscope/synth.hpp"

namespace {

using namespace cscope;

struct Fixture {
  EndorsementGraph graph;
  Bipartition partition;
};

Fixture fixture(std::size_t per_side) {
  const double p_in = 8.0 / static_cast<double>(per_side);
  auto planted = planted_partition({per_side, p_in, p_in / 16.0, 1});
  auto p = bisect(planted.graph, 0.05, 1);
  return {std::move(planted.graph), std::move(p)};
}

void BM_RwcExact(benchmark::State& state) {
  const auto f = fixture(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rwc_score(f.graph, f.partition));
}
BENCHMARK(BM_RwcExact)->Arg(500)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_RwcMonteCarlo(benchmark::State& state) {
  const auto f = fixture(5000);
  const auto walks = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(rwc_monte_carlo(f.graph, f.partition, {}, walks, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 2);
}
BENCHMARK(BM_RwcMonteCarlo)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

}  // namespace
