#include <benchmark/benchmark.h>

#include "cantor/counting.hpp"
#include "cantor/stochastic.hpp"

using namespace cantor;

static void BM_CountOccurrences(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto prefix = sample_prefix(BasicSequence::constant(4), n + 8, 1);
  const Block block{0, 1, 2};
  for (auto _ : state) benchmark::DoNotOptimize(count_occurrences(prefix.digits(), block, n));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_CountOccurrences)->Range(1 << 12, 1 << 22);

static void BM_CountStrided(benchmark::State& state) {
  const auto n = static_cast<std::uint64_t>(state.range(0));
  const auto prefix = sample_prefix(BasicSequence::constant(4), n + 8, 2);
  const Block block{0, 1, 2};
  for (auto _ : state) benchmark::DoNotOptimize(count_strided(prefix.digits(), block, n, 2));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_CountStrided)->Range(1 << 12, 1 << 22);

static void BM_StrongNormalityReport(benchmark::State& state) {
  const auto prefix = sample_prefix(BasicSequence::affine(1, 1), 100'010, 3);
  for (auto _ : state) benchmark::DoNotOptimize(strong_normality_report(prefix, 100'000, 2, 4));
}
BENCHMARK(BM_StrongNormalityReport)->Unit(benchmark::kMillisecond);
