#include "mertensk/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mertensk/prime_store.hpp"

namespace mertensk {

namespace {

constexpr uint64_t kBlock = 1ULL << 22;
constexpr int kMaxOmega = 64;

// Resolves S_1(t) = sum_{p <= t} 1/p for every threshold in `thresholds`
// (sorted ascending, unique) with a single segmented sweep.
std::vector<DD> batched_mertens_prefix(const std::vector<uint64_t>& thresholds) {
  std::vector<DD> out(thresholds.size());
  if (thresholds.empty()) return out;
  DD run;
  size_t next = 0;
  uint64_t max_t = thresholds.back();
  for_each_prime(max_t, [&](uint64_t p) {
    while (next < thresholds.size() && thresholds[next] < p) out[next++] = run;
    run += DD::inv(p);
  });
  while (next < thresholds.size()) out[next++] = run;
  return out;
}

size_t lookup(const std::vector<uint64_t>& thresholds, uint64_t t) {
  auto it = std::lower_bound(thresholds.begin(), thresholds.end(), t);
  return static_cast<size_t>(it - thresholds.begin());
}

}  // namespace

Oracle::Oracle(Options opts) : opts_(opts) {
  if (opts_.workers <= 0)
    opts_.workers = std::max(1u, std::thread::hardware_concurrency());
}

OracleResult Oracle::finish(const char* quantity, uint64_t x, int kj, const DD& value,
                            double budget,
                            std::chrono::steady_clock::time_point start) const {
  OracleResult r;
  r.quantity = quantity;
  r.x = x;
  r.k_or_j = kj;
  r.value = to_hpreal(value, opts_.prec_bits);
  r.abs_error_budget = HPReal::of(std::max(budget, 1e-300), opts_.prec_bits);
  r.wall_time = std::chrono::steady_clock::now() - start;
  return r;
}

const std::vector<DD>& Oracle::omega_histogram(uint64_t x) {
  auto it = hist_cache_.find(x);
  if (it != hist_cache_.end()) return it->second;

  const uint64_t n_blocks = (x - 1) / kBlock + 1;
  std::vector<std::vector<DD>> per_block(n_blocks);
  std::atomic<uint64_t> next{0};
  auto work = [&] {
    for (;;) {
      uint64_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      uint64_t lo = std::max<uint64_t>(2, b * kBlock);
      uint64_t hi = std::min(x + 1, (b + 1) * kBlock);
      std::vector<DD> sums(kMaxOmega);
      if (lo < hi) {
        OmegaBlock blk = omega_sieve(lo, hi);
        for (uint64_t n = lo; n < hi; ++n) {
          uint8_t w = blk.omega[n - lo];
          if (w < kMaxOmega) sums[w] += DD::inv(n);
        }
      }
      per_block[b] = std::move(sums);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < opts_.workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  std::vector<DD> total(kMaxOmega);
  for (uint64_t b = 0; b < n_blocks; ++b)  // ordered reduction
    for (int k = 0; k < kMaxOmega; ++k) total[k] += per_block[b][k];
  return hist_cache_.emplace(x, std::move(total)).first->second;
}

OracleResult Oracle::rk_sieve(int k, uint64_t x, bool streaming_large) {
  auto start = std::chrono::steady_clock::now();
  if (k < 1 || k >= kMaxOmega) throw std::invalid_argument("rk_sieve: bad k");
  if (x < 2) throw std::invalid_argument("rk_sieve: x >= 2");
  if (x > opts_.rk_ceiling && !streaming_large)
    throw std::out_of_range(
        "rk_sieve: x above the default ceiling; pass streaming_large to stream "
        "Omega blocks beyond it");
  const DD v = omega_histogram(x)[static_cast<size_t>(k)];
  // n terms, partial sums < ~log2 x: documented dd drift, doubled
  double budget = 2.0 * static_cast<double>(x) * std::ldexp(4.0, -104);
  return finish("rk_sieve", x, k, v, budget, start);
}

OracleResult Oracle::sk_recursive(int k, uint64_t x) {
  auto start = std::chrono::steady_clock::now();
  if (k < 1 || k > 4) throw std::invalid_argument("sk_recursive: 1 <= k <= 4");
  uint64_t ceiling = k == 2   ? opts_.sk_ceiling_k2
                     : k == 3 ? opts_.sk_ceiling_k3
                     : k == 4 ? opts_.sk_ceiling_k4
                              : opts_.rk_ceiling * 10;
  if (x > ceiling)
    throw std::out_of_range("sk_recursive: x above the default ceiling for this k");
  if (x < (1ULL << k)) {
    return finish("sk_recursive", x, k, DD{}, 1e-30, start);
  }

  // Leaves are (k-1)-tuples of primes (p_1, ..., p_{k-1}); each contributes
  // (1/prod) S_1(x / prod). Enumerate twice: collect thresholds, then fold in
  // the same order against the batch-resolved prefix table.
  std::vector<uint64_t> primes;
  if (k >= 2) primes = primes_up_to(x >> 1);

  std::vector<uint64_t> thresholds;
  auto enumerate = [&](auto&& self, int depth, uint64_t prod, auto&& leaf) -> void {
    // choosing p_d for S_{k-d+1}(x/prod) requires p <= (x/prod)/2^(k-d)
    if (depth == k) {
      leaf(prod);
      return;
    }
    uint64_t cap = (x >> (static_cast<unsigned>(k - depth))) / prod;
    for (uint64_t p : primes) {
      if (p > cap) break;
      self(self, depth + 1, prod * p, leaf);
    }
  };

  enumerate(enumerate, 1, 1, [&](uint64_t prod) { thresholds.push_back(x / prod); });
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  std::vector<DD> s1 = batched_mertens_prefix(thresholds);

  DD acc;
  uint64_t leaves = 0;
  enumerate(enumerate, 1, 1, [&](uint64_t prod) {
    acc += DD::inv(prod) * s1[lookup(thresholds, x / prod)];
    ++leaves;
  });
  double budget =
      2.0 * static_cast<double>(leaves + (x >> 1)) * std::ldexp(16.0, -104);
  return finish("sk_recursive", x, k, acc, budget, start);
}

OracleResult Oracle::pq_a_sum(int a, uint64_t x) {
  auto start = std::chrono::steady_clock::now();
  if (a < 2) throw std::invalid_argument("pq_a_sum: a >= 2");
  if (x < (2ULL << a)) return finish("pq_a_sum", x, a, DD{}, 1e-30, start);

  uint64_t q_cap = static_cast<uint64_t>(
      std::floor(std::pow(static_cast<double>(x) / 2.0, 1.0 / a) + 1e-9));
  while (q_cap > 2 && std::pow(static_cast<double>(q_cap), a) * 2 > static_cast<double>(x))
    --q_cap;
  std::vector<uint64_t> qs = primes_up_to(q_cap);

  std::vector<uint64_t> thresholds;
  auto qa_pow = [&](uint64_t q) {
    uint64_t v = 1;
    for (int i = 0; i < a; ++i) v *= q;
    return v;
  };
  for (uint64_t q : qs) thresholds.push_back(x / qa_pow(q));
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  std::vector<DD> s1 = batched_mertens_prefix(thresholds);

  DD acc;
  for (uint64_t q : qs) {
    uint64_t qa = qa_pow(q);
    acc += DD::inv(qa) * s1[lookup(thresholds, x / qa)];
  }
  double budget = 2.0 * static_cast<double>((x >> 1) + qs.size()) * std::ldexp(16.0, -104);
  return finish("pq_a_sum", x, a, acc, budget, start);
}

OracleResult Oracle::alpha_limit_estimate(int j, uint64_t x) {
  auto start = std::chrono::steady_clock::now();
  if (j < 1) throw std::invalid_argument("alpha_limit_estimate: j >= 1");
  DD sum;
  for_each_prime(x, [&](uint64_t p) {
    double lp = std::log(static_cast<double>(p));
    DD t = DD::inv(p);
    for (int i = 0; i < j; ++i) t = t * lp;
    sum += t;
  });
  const long prec = opts_.prec_bits;
  HPReal lx = log(HPReal::of(x, prec));
  HPReal est = (pow_si(lx, j) / j - to_hpreal(sum, prec)) / j;
  OracleResult r;
  r.quantity = "alpha_limit_estimate";
  r.x = x;
  r.k_or_j = j;
  r.value = est;
  // double log error dominates: ~ j 2^-52 log^j x, doubled
  double lj = std::pow(std::log(static_cast<double>(x)), j);
  r.abs_error_budget = HPReal::of(2.0 * j * std::ldexp(lj, -52) + 1e-200, prec);
  r.wall_time = std::chrono::steady_clock::now() - start;
  return r;
}

OracleResult Oracle::prime_power_sum(int a, uint64_t x) {
  auto start = std::chrono::steady_clock::now();
  if (a < 1) throw std::invalid_argument("prime_power_sum: a >= 1");
  uint64_t cap = static_cast<uint64_t>(
      std::floor(std::pow(static_cast<double>(x), 1.0 / a) + 1e-9));
  while (cap >= 2 && std::pow(static_cast<double>(cap), a) > static_cast<double>(x)) --cap;
  DD acc;
  uint64_t count = 0;
  for_each_prime(cap, [&](uint64_t p) {
    uint64_t pa = 1;
    for (int i = 0; i < a; ++i) pa *= p;
    acc += DD::inv(pa);
    ++count;
  });
  return finish("prime_power_sum", x, a, acc,
                2.0 * static_cast<double>(count + 1) * std::ldexp(1.0, -100), start);
}

OracleResult Oracle::p2q2_sum(uint64_t x) {
  auto start = std::chrono::steady_clock::now();
  uint64_t root = static_cast<uint64_t>(std::floor(std::sqrt(static_cast<double>(x))));
  while (root * root > x) --root;
  std::vector<uint64_t> ps = primes_up_to(root / 2);
  DD acc;
  for (uint64_t p : ps) {
    if (p * p * 4 > x) break;
    for (uint64_t q : ps) {
      if (p * q > root) break;
      acc += DD::div(1.0, static_cast<double>(p * p) * static_cast<double>(q * q));
    }
  }
  return finish("p2q2_sum", x, 2, acc, 1e-25 * static_cast<double>(ps.size() + 1),
                start);
}

OracleResult Oracle::p2qr_sum(uint64_t x) {
  auto start = std::chrono::steady_clock::now();
  // sum_{p <= sqrt(x/4)} p^-2 S_2(x/p^2); expand S_2(y) = sum_q (1/q) S_1(y/q)
  uint64_t p_cap = static_cast<uint64_t>(std::floor(std::sqrt(static_cast<double>(x) / 4.0)));
  while (p_cap >= 2 && p_cap * p_cap * 4 > x) --p_cap;
  std::vector<uint64_t> ps = primes_up_to(p_cap);
  std::vector<uint64_t> qs = primes_up_to(x / 8);  // q <= (x/p^2)/2, p >= 2

  std::vector<uint64_t> thresholds;
  for (uint64_t p : ps) {
    uint64_t y = x / (p * p);
    for (uint64_t q : qs) {
      if (q > y / 2) break;
      thresholds.push_back(y / q);
    }
  }
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                   thresholds.end());
  std::vector<DD> s1 = batched_mertens_prefix(thresholds);

  DD acc;
  uint64_t pairs = 0;
  for (uint64_t p : ps) {
    uint64_t y = x / (p * p);
    DD inner;
    for (uint64_t q : qs) {
      if (q > y / 2) break;
      inner += DD::inv(q) * s1[lookup(thresholds, y / q)];
      ++pairs;
    }
    acc += DD::div(1.0, static_cast<double>(p) * static_cast<double>(p)) * inner;
  }
  double budget = 2.0 * static_cast<double>(pairs + (x >> 3)) * std::ldexp(16.0, -104);
  return finish("p2qr_sum", x, 2, acc, budget, start);
}

}  // namespace mertensk
