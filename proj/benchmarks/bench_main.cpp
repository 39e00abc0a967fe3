#include <benchmark/benchmark.h>

#include <cstdint>

#include "hierperc/clusters.hpp"
#include "hierperc/embedding.hpp"
#include "hierperc/sampler.hpp"

namespace {

hierperc::PercolationParams params_for(const benchmark::State& state) {
  hierperc::PercolationParams p;
  p.order = 2;
  p.alpha = 1.0;
  p.beta = 3.0;
  p.radius = static_cast<unsigned>(state.range(0));
  p.seed = 7;
  return p;
}

void BM_SampleNaive(benchmark::State& state) {
  auto p = params_for(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hierperc::sample_ball_naive(p));
    ++p.replicate;
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.vertex_count()));
}
BENCHMARK(BM_SampleNaive)->DenseRange(6, 12, 3);

void BM_SampleSkip(benchmark::State& state) {
  auto p = params_for(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hierperc::sample_ball_skip(p));
    ++p.replicate;
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(p.vertex_count()));
}
BENCHMARK(BM_SampleSkip)->DenseRange(6, 18, 3);

void BM_ClusterStats(benchmark::State& state) {
  const auto config = hierperc::sample_ball_skip(params_for(state));
  for (auto _ : state) benchmark::DoNotOptimize(hierperc::cluster_stats(config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(config.edges().size()));
}
BENCHMARK(BM_ClusterStats)->DenseRange(6, 18, 3);

void BM_OdometerStep(benchmark::State& state) {
  hierperc::Engine rng = hierperc::make_stream(1, 0, 0);
  auto digits = hierperc::embedding::DigitState::random(3, static_cast<unsigned>(state.range(0)), rng);
  for (auto _ : state) {
    digits = hierperc::embedding::kvn_step_truncated(digits);
    benchmark::DoNotOptimize(digits);
  }
}
BENCHMARK(BM_OdometerStep)->Arg(8)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
