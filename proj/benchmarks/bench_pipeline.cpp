#include <benchmark/benchmark.h>

#include "cscope/pipeline.hpp"
#include "cscope/synth.hpp"

namespace {

using namespace cscope;

void BM_PipelineTwoCommunities(benchmark::State& state) {
  const auto per_side = static_cast<std::size_t>(state.range(0));
  CorpusSpec spec;
  spec.communities = {{per_side, {"vaxx"}, 0.8}, {per_side, {"vaxx"}, -0.8}};
  spec.background_share = 0.5;
  spec.background_mixing = 1.0;
  PipelineInputs in;
  in.records = synth_corpus(spec).records;
  in.lexicon.set("good", 1.0);
  in.lexicon.set("bad", -1.0);
  PipelineConfig cfg;
  cfg.top_n = 5;
  for (auto _ : state) benchmark::DoNotOptimize(run_pipeline(cfg, in));
  state.counters["records"] = static_cast<double>(in.records.size());
}
BENCHMARK(BM_PipelineTwoCommunities)->Arg(650)->Arg(5000)->Unit(benchmark::kMillisecond);

}  // namespace
