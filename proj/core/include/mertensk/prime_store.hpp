#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mertensk/dd.hpp"
#include "mertensk/hpreal.hpp"

namespace mertensk {

/// Simple monolithic sieve; primes <= limit. Intended for base primes and
/// small-scale work (limit up to ~10^7). limit < 2 yields an empty vector.
std::vector<uint64_t> primes_up_to(uint64_t limit);

/// Segmented enumeration of all primes <= limit in increasing order,
/// O(sqrt(limit) + segment) memory. fn is called once per prime.
void for_each_prime(uint64_t limit, const std::function<void(uint64_t)>& fn);
/// Same, restricted to primes in [lo, hi).
void for_each_prime_in(uint64_t lo, uint64_t hi,
                       const std::function<void(uint64_t)>& fn);

/// Omega(n) = number of prime factors with multiplicity, for n in [lo, hi).
struct OmegaBlock {
  uint64_t lo = 0;
  uint64_t hi = 0;
  std::vector<uint8_t> omega;  // omega[n - lo]
};

/// Counts one per prime-power divisor class: every p^e <= hi dividing n
/// contributes 1. 2 <= lo < hi required.
OmegaBlock omega_sieve(uint64_t lo, uint64_t hi);

/// Persistent prefix sums over primes: sum 1/p and sum log^j(p)/p at
/// checkpoints every 2^20 integers, double-double accumulated in segment
/// order (deterministic for any worker count). Queries between checkpoints
/// rescan a single segment.
///
/// Error budget: each term is dd-exact to 2^-104 relative, so a prefix over
/// pi(x) primes drifts at most ~pi(x) * 2^-102 absolutely (documented, double
/// counted in budget()). log p comes from double precision log, which bounds
/// the j >= 1 tables at ~2^-50 * log^j(x) absolute.
class PrimeStore {
 public:
  static constexpr uint64_t kSpacing = 1ULL << 20;
  static constexpr int kLogPowMax = 4;  // j = 1..4 tables
  static constexpr uint32_t kCacheVersion = 1;

  struct Options {
    uint64_t limit = 100'000'000;
    long prec_bits = 192;
    std::filesystem::path cache_dir;  // empty: no persistence
    int workers = 0;                  // 0: hardware_concurrency
  };

  /// Loads matching cache files when present and coherent, otherwise sieves
  /// and (if cache_dir is set) writes them. Corrupt or version-mismatched
  /// files are rebuilt silently with a warning on stderr.
  static PrimeStore build_or_load(const Options& opts);

  uint64_t limit() const { return limit_; }
  long prec_bits() const { return prec_bits_; }

  /// sum_{p <= x} 1/p. Throws std::out_of_range for x > limit (re-sieve with
  /// a larger store).
  HPReal mertens_prefix(uint64_t x) const;

  /// sum_{p <= x} log^j(p)/p for 0 <= j <= kLogPowMax; j = 0 is
  /// mertens_prefix.
  HPReal logpow_prefix(int j, uint64_t x) const;

  /// Absolute error budget for the j-th prefix table at x.
  HPReal budget(int j, uint64_t x) const;

  /// Raw checkpoint access, for the cache round-trip tests.
  const std::vector<DD>& checkpoints(int j) const;

 private:
  PrimeStore() = default;
  void sieve_all(int workers);
  bool load_cache();
  void store_cache() const;
  DD scan_segment(int j, uint64_t seg_lo, uint64_t x) const;

  uint64_t limit_ = 0;
  long prec_bits_ = 192;
  std::filesystem::path cache_dir_;
  // ckpt_[j][i] = sum over primes p < min((i+1)*kSpacing, limit+1)
  std::vector<std::vector<DD>> ckpt_;
  std::vector<uint64_t> base_primes_;
};

}  // namespace mertensk
