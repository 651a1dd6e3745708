#include <benchmark/benchmark.h>

#include "mertensk/oracle.hpp"

using namespace mertensk;

static void BM_rk_sieve(benchmark::State& state) {
  const uint64_t x = static_cast<uint64_t>(state.range(0));
  for (auto _ : state) {
    Oracle o;  // fresh: defeat the histogram cache
    benchmark::DoNotOptimize(o.rk_sieve(2, x, /*streaming_large=*/true).value.to_double());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(x));
}
// 1e9 exercises the streaming mode past the default ceiling; run it
// explicitly with --benchmark_filter=BM_rk_sieve/1000000000
BENCHMARK(BM_rk_sieve)->Arg(1'000'000)->Arg(10'000'000)->Arg(1'000'000'000)
    ->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_sk_recursive(benchmark::State& state) {
  const uint64_t x = static_cast<uint64_t>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  for (auto _ : state) {
    Oracle o;
    benchmark::DoNotOptimize(o.sk_recursive(k, x).value.to_double());
  }
}
BENCHMARK(BM_sk_recursive)->Args({1'000'000, 3})->Args({1'000'000, 4})
    ->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_pq_a_sum(benchmark::State& state) {
  for (auto _ : state) {
    Oracle o;
    benchmark::DoNotOptimize(o.pq_a_sum(2, 10'000'000).value.to_double());
  }
}
BENCHMARK(BM_pq_a_sum)->Unit(benchmark::kMillisecond)->Iterations(1);

BENCHMARK_MAIN();
