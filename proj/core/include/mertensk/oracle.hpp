#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mertensk/dd.hpp"
#include "mertensk/hpreal.hpp"

namespace mertensk {

struct OracleResult {
  std::string quantity;
  uint64_t x = 0;
  int k_or_j = 0;
  HPReal value;
  HPReal abs_error_budget;
  std::chrono::duration<double> wall_time{0};
};

/// Brute-force reference evaluations: streamed Omega-sieve R_k, the
/// recursive S_k with batched Mertens-prefix resolution, sums over p q^a,
/// and the limit-definition alpha_j estimates. Everything is double-double
/// accumulated in a fixed order, so results are bit-identical across runs
/// and worker counts. The block loops parallelize internally with an
/// ordered reduction; one Oracle instance is not reentrant (the histogram
/// memo mutates), so use an instance per calling thread.
class Oracle {
 public:
  struct Options {
    long prec_bits = 192;
    uint64_t rk_ceiling = 100'000'000;
    uint64_t sk_ceiling_k2 = 20'000'000;
    uint64_t sk_ceiling_k3 = 10'000'000;
    uint64_t sk_ceiling_k4 = 1'000'000;
    int workers = 0;  // 0: hardware_concurrency
  };

  Oracle() : Oracle(Options{}) {}
  explicit Oracle(Options opts);

  /// sum over n <= x with Omega(n) = k of 1/n. Streams Omega blocks; the
  /// whole histogram for a given x is cached, so repeated k at one x are
  /// free. `streaming_large` lifts the default ceiling (benchmarks).
  OracleResult rk_sieve(int k, uint64_t x, bool streaming_large = false);

  /// S_k(x) = sum_{p <= x/2^(k-1)} (1/p) S_{k-1}(x/p), ordered-tuple sum,
  /// with the S_1 base case resolved by one ascending sieve sweep over the
  /// collected thresholds.
  OracleResult sk_recursive(int k, uint64_t x);

  /// sum_{p q^a <= x} 1/(p q^a): outer q <= (x/2)^(1/a), inner Mertens
  /// prefix at x/q^a.
  OracleResult pq_a_sum(int a, uint64_t x);

  /// (1/j)(log^j(x)/j - sum_{p<=x} log^j(p)/p), the slowly-convergent limit
  /// definition of alpha_j at finite x.
  OracleResult alpha_limit_estimate(int j, uint64_t x);

  /// sum_{p^a <= x} 1/p^a.
  OracleResult prime_power_sum(int a, uint64_t x);
  /// sum over ordered pairs p^2 q^2 <= x of 1/(p^2 q^2).
  OracleResult p2q2_sum(uint64_t x);
  /// sum over ordered (p, q, r) with p^2 q r <= x, as sum_p p^-2 S_2(x/p^2).
  OracleResult p2qr_sum(uint64_t x);

  long prec() const { return opts_.prec_bits; }

 private:
  const std::vector<DD>& omega_histogram(uint64_t x);
  OracleResult finish(const char* quantity, uint64_t x, int kj, const DD& value,
                      double budget,
                      std::chrono::steady_clock::time_point start) const;

  Options opts_;
  std::map<uint64_t, std::vector<DD>> hist_cache_;
};

}  // namespace mertensk
