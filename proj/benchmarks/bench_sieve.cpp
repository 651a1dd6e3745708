#include <benchmark/benchmark.h>

#include "mertensk/prime_store.hpp"

using namespace mertensk;

static void BM_prime_enumeration(benchmark::State& state) {
  const uint64_t limit = static_cast<uint64_t>(state.range(0));
  uint64_t count = 0;
  for (auto _ : state) {
    count = 0;
    for_each_prime(limit, [&](uint64_t) { ++count; });
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(limit));
  state.counters["primes"] = static_cast<double>(count);
}
BENCHMARK(BM_prime_enumeration)->Arg(1'000'000)->Arg(10'000'000)->Arg(100'000'000)
    ->Unit(benchmark::kMillisecond);

static void BM_omega_block(benchmark::State& state) {
  const uint64_t lo = 100'000'000;
  const uint64_t width = static_cast<uint64_t>(state.range(0));
  for (auto _ : state) {
    OmegaBlock blk = omega_sieve(lo, lo + width);
    benchmark::DoNotOptimize(blk.omega.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(width));
}
BENCHMARK(BM_omega_block)->Arg(1 << 20)->Arg(1 << 22)->Unit(benchmark::kMillisecond);

static void BM_prime_store_build(benchmark::State& state) {
  const uint64_t limit = static_cast<uint64_t>(state.range(0));
  for (auto _ : state) {
    PrimeStore::Options o;
    o.limit = limit;
    o.workers = 1;
    PrimeStore st = PrimeStore::build_or_load(o);
    benchmark::DoNotOptimize(st.limit());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(limit));
}
BENCHMARK(BM_prime_store_build)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_mertens_prefix_query(benchmark::State& state) {
  PrimeStore::Options o;
  o.limit = 10'000'000;
  static PrimeStore st = PrimeStore::build_or_load(o);
  uint64_t x = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(st.mertens_prefix(2 + (x = (x * 48271) % 9'999'937)));
  }
}
BENCHMARK(BM_mertens_prefix_query);

BENCHMARK_MAIN();
