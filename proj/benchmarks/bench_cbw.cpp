#include <benchmark/benchmark.h>

#include "cantor/cbw.hpp"
#include "cantor/construct.hpp"

using namespace cantor;

static void BM_CbwTables(benchmark::State& state) {
  const auto b = static_cast<std::uint64_t>(state.range(0));
  const auto w = static_cast<std::uint64_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(CbwOrdering(b, w).best_bias());
}
BENCHMARK(BM_CbwTables)->Args({4, 25})->Args({6, 49})->Args({8, 81})->Unit(benchmark::kMillisecond);

static void BM_CbwDigitAt(benchmark::State& state) {
  const CbwOrdering ord(4, 25);
  const Natural step = ord.length() / 1009;
  Natural idx = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ord.digit_at(idx));
    idx += step;
    if (idx > ord.length()) idx -= ord.length();
  }
}
BENCHMARK(BM_CbwDigitAt);

static void BM_CbwMaterialize(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(CbwOrdering(8, 7).materialize());
}
BENCHMARK(BM_CbwMaterialize)->Unit(benchmark::kMillisecond);

static void BM_StandardStream(benchmark::State& state) {
  const auto spec = standard_spec();
  for (auto _ : state) benchmark::DoNotOptimize(stream_digits(spec, Natural(1), 10'000));
  state.SetItemsProcessed(state.iterations() * 10'000);
}
BENCHMARK(BM_StandardStream)->Unit(benchmark::kMillisecond);
