#include <benchmark/benchmark.h>

#include "mertensk/power_series.hpp"
#include "mertensk/zeta.hpp"

using namespace mertensk;

namespace {
PowerSeries make_series(int order, long prec) {
  std::vector<HPReal> c;
  c.reserve(static_cast<size_t>(order) + 1);
  uint64_t s = 12345;
  for (int i = 0; i <= order; ++i) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    c.push_back(HPReal::of(static_cast<double>(s >> 40) / (1ULL << 24), prec));
  }
  return PowerSeries(std::move(c));
}
}  // namespace

static void BM_series_mul(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  PowerSeries a = make_series(order, 192), b = make_series(order, 192);
  for (auto _ : state) benchmark::DoNotOptimize(series_mul(a, b).order());
}
BENCHMARK(BM_series_mul)->Arg(16)->Arg(64);

static void BM_series_exp(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  PowerSeries a = make_series(order, 192);
  std::vector<HPReal> c = a.coeffs();
  c[0] = HPReal(192);
  PowerSeries az(std::move(c));
  for (auto _ : state) benchmark::DoNotOptimize(series_exp(az).order());
}
BENCHMARK(BM_series_exp)->Arg(16)->Arg(64);

static void BM_zeta_jet(benchmark::State& state) {
  HPReal s = HPReal::of(2LL, 224);
  for (auto _ : state)
    benchmark::DoNotOptimize(zeta_jet(s, static_cast<int>(state.range(0)), 224).order());
}
BENCHMARK(BM_zeta_jet)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

#include "mertensk/logpow_sums.hpp"

static void BM_stieltjes_table(benchmark::State& state) {
  for (auto _ : state) {
    // the raw computation, bypassing the process-wide memo
    benchmark::DoNotOptimize(stieltjes_constants(32, 192).size());
  }
}
BENCHMARK(BM_stieltjes_table)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
