#include "mertensk/prime_store.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <thread>

namespace mertensk {

namespace {

uint64_t isqrt_u64(uint64_t n) {
  if (n == 0) return 0;
  uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Marks composites of base_primes within [lo, hi) in `composite`.
void mark_segment(uint64_t lo, uint64_t hi, const std::vector<uint64_t>& base_primes,
                  std::vector<uint8_t>& composite) {
  composite.assign(hi - lo, 0);
  for (uint64_t p : base_primes) {
    if (p * p >= hi) break;
    uint64_t start = std::max(p * p, ((lo + p - 1) / p) * p);
    for (uint64_t m = start; m < hi; m += p) composite[m - lo] = 1;
  }
  if (lo == 0) {
    if (hi > 0) composite[0] = 1;
    if (hi > 1) composite[1] = 1;
  } else if (lo == 1) {
    composite[0] = 1;
  }
}

constexpr uint64_t kSegment = 1ULL << 20;

uint64_t fnv1a(const void* data, size_t n, uint64_t seed = 0xcbf29ce484222325ULL) {
  const auto* b = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < n; ++i) {
    h ^= b[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::vector<uint64_t> primes_up_to(uint64_t limit) {
  std::vector<uint64_t> primes;
  if (limit < 2) return primes;
  std::vector<uint8_t> composite(limit + 1, 0);
  for (uint64_t i = 2; i * i <= limit; ++i)
    if (!composite[i])
      for (uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  for (uint64_t i = 2; i <= limit; ++i)
    if (!composite[i]) primes.push_back(i);
  return primes;
}

void for_each_prime_in(uint64_t lo, uint64_t hi,
                       const std::function<void(uint64_t)>& fn) {
  if (hi <= 2 || hi <= lo) return;
  lo = std::max<uint64_t>(lo, 2);
  auto base = primes_up_to(isqrt_u64(hi - 1));
  std::vector<uint8_t> composite;
  for (uint64_t seg_lo = lo; seg_lo < hi; seg_lo += kSegment) {
    uint64_t seg_hi = std::min(hi, seg_lo + kSegment);
    mark_segment(seg_lo, seg_hi, base, composite);
    for (uint64_t n = seg_lo; n < seg_hi; ++n)
      if (!composite[n - seg_lo]) fn(n);
  }
}

void for_each_prime(uint64_t limit, const std::function<void(uint64_t)>& fn) {
  if (limit < 2) return;
  for_each_prime_in(2, limit + 1, fn);
}

OmegaBlock omega_sieve(uint64_t lo, uint64_t hi) {
  if (!(2 <= lo && lo < hi))
    throw std::invalid_argument("omega_sieve: need 2 <= lo < hi");
  OmegaBlock blk;
  blk.lo = lo;
  blk.hi = hi;
  blk.omega.assign(hi - lo, 0);
  std::vector<uint64_t> rem(hi - lo);
  for (uint64_t n = lo; n < hi; ++n) rem[n - lo] = n;
  auto base = primes_up_to(isqrt_u64(hi - 1));
  for (uint64_t p : base) {
    for (uint64_t m = ((lo + p - 1) / p) * p; m < hi; m += p) {
      uint64_t& r = rem[m - lo];
      while (r % p == 0) {
        r /= p;
        ++blk.omega[m - lo];
      }
    }
  }
  for (uint64_t n = lo; n < hi; ++n)
    if (rem[n - lo] > 1) ++blk.omega[n - lo];  // one prime factor > sqrt(hi)
  return blk;
}

// --- PrimeStore -------------------------------------------------------------

namespace {

struct SegmentSums {
  DD sums[PrimeStore::kLogPowMax + 1];
};

SegmentSums sum_segment(uint64_t seg_lo, uint64_t seg_hi,
                        const std::vector<uint64_t>& base) {
  SegmentSums out;
  std::vector<uint8_t> composite;
  mark_segment(std::max<uint64_t>(seg_lo, 2), seg_hi, base, composite);
  uint64_t lo = std::max<uint64_t>(seg_lo, 2);
  for (uint64_t n = lo; n < seg_hi; ++n) {
    if (composite[n - lo]) continue;
    DD inv = DD::inv(n);
    out.sums[0] += inv;
    double lg = std::log(static_cast<double>(n));
    DD t = inv;
    for (int j = 1; j <= PrimeStore::kLogPowMax; ++j) {
      t = t * lg;
      out.sums[j] += t;
    }
  }
  return out;
}

}  // namespace

PrimeStore PrimeStore::build_or_load(const Options& opts) {
  if (opts.limit < 10'000)
    throw std::invalid_argument("PrimeStore: limit must be >= 10^4");
  PrimeStore st;
  // checkpoint spacing divides the stored limit; round the request up
  st.limit_ = ((opts.limit + kSpacing - 1) / kSpacing) * kSpacing;
  st.prec_bits_ = opts.prec_bits;
  st.cache_dir_ = opts.cache_dir;
  st.base_primes_ = primes_up_to(isqrt_u64(opts.limit));
  if (!st.cache_dir_.empty() && st.load_cache()) return st;
  int workers = opts.workers > 0
                    ? opts.workers
                    : static_cast<int>(std::thread::hardware_concurrency());
  st.sieve_all(std::max(workers, 1));
  if (!st.cache_dir_.empty()) st.store_cache();
  return st;
}

void PrimeStore::sieve_all(int workers) {
  const uint64_t n_segs = limit_ / kSpacing;
  std::vector<SegmentSums> per_seg(n_segs);
  std::atomic<uint64_t> next{0};
  auto work = [&] {
    for (;;) {
      uint64_t i = next.fetch_add(1);
      if (i >= n_segs) return;
      uint64_t lo = i * kSpacing;
      uint64_t hi = std::min(limit_ + 1, lo + kSpacing);
      per_seg[i] = sum_segment(lo, hi, base_primes_);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  // Single writer folds segments in order: identical result for any pool size.
  ckpt_.assign(kLogPowMax + 1, {});
  for (int j = 0; j <= kLogPowMax; ++j) {
    ckpt_[j].resize(n_segs);
    DD run;
    for (uint64_t i = 0; i < n_segs; ++i) {
      run += per_seg[i].sums[j];
      ckpt_[j][i] = run;
    }
  }
}

DD PrimeStore::scan_segment(int j, uint64_t seg_lo, uint64_t x) const {
  DD acc;
  std::vector<uint8_t> composite;
  uint64_t lo = std::max<uint64_t>(seg_lo, 2);
  if (x < lo) return acc;
  mark_segment(lo, x + 1, base_primes_, composite);
  for (uint64_t n = lo; n <= x; ++n) {
    if (composite[n - lo]) continue;
    DD t = DD::inv(n);
    if (j > 0) {
      double lg = std::log(static_cast<double>(n));
      for (int k = 0; k < j; ++k) t = t * lg;
    }
    acc += t;
  }
  return acc;
}

HPReal PrimeStore::mertens_prefix(uint64_t x) const { return logpow_prefix(0, x); }

HPReal PrimeStore::logpow_prefix(int j, uint64_t x) const {
  if (j < 0 || j > kLogPowMax)
    throw std::invalid_argument("logpow_prefix: j out of stored range");
  if (x > limit_)
    throw std::out_of_range(
        "logpow_prefix: x exceeds the sieved limit; rebuild the store with a "
        "larger limit");
  if (x < 2) return HPReal(prec_bits_);
  uint64_t seg = x / kSpacing;
  DD acc;
  if (seg > 0) acc = ckpt_[j][seg - 1];
  acc += scan_segment(j, seg * kSpacing, x);
  return to_hpreal(acc, prec_bits_);
}

HPReal PrimeStore::budget(int j, uint64_t x) const {
  // pi(x) < 1.3 x / log x for x >= 17; dd drift 2^-102 per term, doubled.
  double pix = x >= 17 ? 1.3 * static_cast<double>(x) / std::log(static_cast<double>(x))
                       : 8.0;
  double per_term = std::ldexp(1.0, -102);
  if (j > 0) per_term = std::ldexp(std::pow(std::log(static_cast<double>(x)), j), -50);
  return HPReal::of(2.0 * pix * per_term, prec_bits_);
}

const std::vector<DD>& PrimeStore::checkpoints(int j) const {
  return ckpt_.at(static_cast<size_t>(j));
}

// --- cache ------------------------------------------------------------------

namespace {

constexpr char kMagic[4] = {'M', 'P', 'S', 'C'};

std::filesystem::path table_path(const std::filesystem::path& dir, uint64_t limit,
                                 int j) {
  return dir / ("primestore_" + std::to_string(limit) + "_j" + std::to_string(j) +
                ".bin");
}

std::filesystem::path manifest_path(const std::filesystem::path& dir, uint64_t limit) {
  return dir / ("primestore_" + std::to_string(limit) + ".manifest.json");
}

}  // namespace

bool PrimeStore::load_cache() {
  for (int j = 0; j <= kLogPowMax; ++j) {
    std::ifstream in(table_path(cache_dir_, limit_, j), std::ios::binary);
    if (!in) return false;
    char magic[4];
    uint32_t version = 0, jj = 0;
    uint64_t limit = 0, spacing = 0, count = 0;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    in.read(reinterpret_cast<char*>(&limit), sizeof limit);
    in.read(reinterpret_cast<char*>(&spacing), sizeof spacing);
    in.read(reinterpret_cast<char*>(&jj), sizeof jj);
    in.read(reinterpret_cast<char*>(&count), sizeof count);
    if (!in || std::memcmp(magic, kMagic, 4) != 0 || version != kCacheVersion ||
        limit != limit_ || spacing != kSpacing || jj != static_cast<uint32_t>(j)) {
      std::fprintf(stderr,
                   "mertensk: prime store cache %s stale or corrupt, rebuilding\n",
                   table_path(cache_dir_, limit_, j).c_str());
      ckpt_.clear();
      return false;
    }
    std::vector<DD> table(count);
    in.read(reinterpret_cast<char*>(table.data()),
            static_cast<std::streamsize>(count * sizeof(DD)));
    uint64_t checksum = 0;
    in.read(reinterpret_cast<char*>(&checksum), sizeof checksum);
    if (!in || fnv1a(table.data(), count * sizeof(DD)) != checksum) {
      std::fprintf(stderr,
                   "mertensk: prime store cache %s failed checksum, rebuilding\n",
                   table_path(cache_dir_, limit_, j).c_str());
      ckpt_.clear();
      return false;
    }
    if (ckpt_.empty()) ckpt_.assign(kLogPowMax + 1, {});
    ckpt_[static_cast<size_t>(j)] = std::move(table);
  }
  return true;
}

void PrimeStore::store_cache() const {
  std::error_code ec;
  std::filesystem::create_directories(cache_dir_, ec);
  for (int j = 0; j <= kLogPowMax; ++j) {
    std::ofstream out(table_path(cache_dir_, limit_, j),
                      std::ios::binary | std::ios::trunc);
    if (!out) {
      std::fprintf(stderr, "mertensk: cannot write prime store cache under %s\n",
                   cache_dir_.c_str());
      return;
    }
    const auto& table = ckpt_[static_cast<size_t>(j)];
    uint32_t version = kCacheVersion, jj = static_cast<uint32_t>(j);
    uint64_t limit = limit_, spacing = kSpacing, count = table.size();
    out.write(kMagic, 4);
    out.write(reinterpret_cast<const char*>(&version), sizeof version);
    out.write(reinterpret_cast<const char*>(&limit), sizeof limit);
    out.write(reinterpret_cast<const char*>(&spacing), sizeof spacing);
    out.write(reinterpret_cast<const char*>(&jj), sizeof jj);
    out.write(reinterpret_cast<const char*>(&count), sizeof count);
    out.write(reinterpret_cast<const char*>(table.data()),
              static_cast<std::streamsize>(table.size() * sizeof(DD)));
    uint64_t checksum = fnv1a(table.data(), table.size() * sizeof(DD));
    out.write(reinterpret_cast<const char*>(&checksum), sizeof checksum);
  }
  std::ofstream man(manifest_path(cache_dir_, limit_), std::ios::trunc);
  man << "{\n"
      << "  \"format\": \"mertensk-primestore\",\n"
      << "  \"version\": " << kCacheVersion << ",\n"
      << "  \"limit\": " << limit_ << ",\n"
      << "  \"prec_bits\": " << prec_bits_ << ",\n"
      << "  \"checkpoint_spacing\": " << kSpacing << ",\n"
      << "  \"logpow_max\": " << kLogPowMax << ",\n"
      << "  \"endianness\": \"little\",\n"
      << "  \"entry\": \"double hi, double lo\"\n"
      << "}\n";
}

}  // namespace mertensk
