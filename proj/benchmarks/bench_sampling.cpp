#include <benchmark/benchmark.h>

#include "cantor/random.hpp"
#include "cantor/stochastic.hpp"

using namespace cantor;

static void BM_PhiloxBelow(benchmark::State& state) {
  Philox4x32 gen(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(gen.below(std::uint64_t{1000003}));
}
BENCHMARK(BM_PhiloxBelow);

static void BM_SamplePrefix(benchmark::State& state) {
  const auto seq = BasicSequence::parse("powfloor:1/2,2");
  const auto n = static_cast<std::uint64_t>(state.range(0));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_prefix(seq, n, ++seed));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SamplePrefix)->Range(1 << 10, 1 << 18);

static void BM_LilExperiment(benchmark::State& state) {
  LilConfig cfg{BasicSequence::parse("powfloor:1/2,2"), Block{0}, 100'000, 16, 1, 3.0, 1, false};
  for (auto _ : state) benchmark::DoNotOptimize(run_lil_experiment(cfg));
}
BENCHMARK(BM_LilExperiment)->Unit(benchmark::kMillisecond);
