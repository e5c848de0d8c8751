#include <benchmark/benchmark.h>

#include "scissor/components.hpp"
#include "scissor/harness.hpp"
#include "scissor/pipeline.hpp"
#include "scissor/tokens.hpp"

namespace {

using namespace scissor;

TokenMatrix bench_tokens(std::size_t n, std::size_t d) {
  SyntheticSpec spec{1, n, d, 8, 0.05, 0.0, 1};
  return gen_synthetic_video(spec).video.flatten();
}

void BM_SimilarityGraph(benchmark::State& state) {
  const auto k = bench_tokens(static_cast<std::size_t>(state.range(0)), 64);
  for (auto _ : state) benchmark::DoNotOptimize(similarity_graph(k, 0.9f));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SimilarityGraph)->RangeMultiplier(2)->Range(128, 2048)->Complexity();

void BM_ApproxComponents(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = random_graph(n, 0.05, 7);
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(approx_components(g, 0.05, seed++));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ApproxComponents)->RangeMultiplier(2)->Range(1000, 16000)->Complexity();

void BM_ExactComponents(benchmark::State& state) {
  const auto g = random_graph(static_cast<std::size_t>(state.range(0)), 0.05, 7);
  for (auto _ : state) benchmark::DoNotOptimize(exact_components(g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ExactComponents)->RangeMultiplier(2)->Range(1000, 16000)->Complexity();

void BM_CompressVideo(benchmark::State& state) {
  SyntheticSpec spec{16, static_cast<std::size_t>(state.range(0)), 128, 12, 0.05, 0.01, 3};
  const auto video = gen_synthetic_video(spec).video;
  const auto cfg = PipelineConfig::with_defaults(0.9f, 0.05, 0);
  for (auto _ : state) benchmark::DoNotOptimize(compress_video(video, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(video.total_tokens()));
}
BENCHMARK(BM_CompressVideo)->Arg(64)->Arg(196)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
