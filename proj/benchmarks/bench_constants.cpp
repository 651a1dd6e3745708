#include <benchmark/benchmark.h>

#include "mertensk/constants.hpp"
#include "mertensk/expansion.hpp"

using namespace mertensk;

static void BM_constants_table_build(benchmark::State& state) {
  for (auto _ : state) {
    ConstantsTable t(192);
    benchmark::DoNotOptimize(t.alpha(1).to_double());
  }
}
BENCHMARK(BM_constants_table_build)->Unit(benchmark::kMillisecond);

static void BM_ratio_table_26(benchmark::State& state) {
  for (auto _ : state) {
    ConstantsTable t(192);  // fresh table: no memoized alphas
    benchmark::DoNotOptimize(t.ratio_table(26).size());
  }
}
BENCHMARK(BM_ratio_table_26)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_generate_r4(benchmark::State& state) {
  static ConstantsTable t(192);
  ExpansionBuilder eb(t);
  for (auto _ : state) benchmark::DoNotOptimize(eb.generate_r4(3).terms().size());
}
BENCHMARK(BM_generate_r4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
