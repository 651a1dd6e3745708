#include "mertensk/zeta.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "mertensk/logpow_sums.hpp"

namespace mertensk {

namespace {

std::mutex g_cache_mu;
std::map<std::pair<long, long>, HPReal> g_zeta_int_cache;          // (s, prec)
std::map<std::pair<long, long>, std::vector<HPReal>> g_logzeta;    // (s, prec)
std::map<long, std::vector<HPReal>> g_stieltjes;                   // prec -> gammas
constexpr int kJetOrderCeiling = 48;

void check_domain(const HPReal& s) {
  if (!(s > HPReal::of(1LL, s.prec())))
    throw std::domain_error("zeta/prime_zeta: defined here only for s > 1");
}

}  // namespace

HPReal zeta(const HPReal& s, long prec_bits) {
  check_domain(s);
  return dirichlet_logpow_sums(s, 0, prec_bits)[0];
}

HPReal zeta_int(long s, long prec_bits) {
  if (s <= 1) throw std::domain_error("zeta_int: need s > 1");
  std::lock_guard<std::mutex> lock(g_cache_mu);
  auto key = std::make_pair(s, prec_bits);
  auto it = g_zeta_int_cache.find(key);
  if (it != g_zeta_int_cache.end()) return it->second;
  HPReal v = dirichlet_logpow_sums(HPReal::of(static_cast<long long>(s), prec_bits), 0,
                                   prec_bits)[0];
  g_zeta_int_cache.emplace(key, v);
  return v;
}

PowerSeries zeta_jet(const HPReal& s, int order, long prec_bits) {
  check_domain(s);
  auto sums = dirichlet_logpow_sums(s, order, prec_bits + 32);
  // zeta^(i)(s) = (-1)^i sums[i]; Taylor coefficient divides by i!.
  std::vector<HPReal> coeffs;
  coeffs.reserve(sums.size());
  HPReal fact = HPReal::of(1LL, prec_bits + 32);
  for (int i = 0; i < static_cast<int>(sums.size()); ++i) {
    if (i > 0) fact *= i;
    HPReal c = sums[static_cast<size_t>(i)] / fact;
    if (i % 2 == 1) c = -c;
    coeffs.push_back(c.rounded_to(prec_bits));
  }
  return PowerSeries(std::move(coeffs), "zeta@s");
}

std::vector<HPReal> log_zeta_derivs(long s, int order, long prec_bits) {
  if (s < 2) throw std::domain_error("log_zeta_derivs: need integer s >= 2");
  if (order > kJetOrderCeiling)
    throw std::invalid_argument("log_zeta_derivs: order beyond jet ceiling");
  {
    std::lock_guard<std::mutex> lock(g_cache_mu);
    auto it = g_logzeta.find({s, prec_bits});
    if (it != g_logzeta.end() && static_cast<int>(it->second.size()) > order)
      return it->second;
  }

  const long wp = prec_bits + 32;
  // Bucket the cached order so interleaved small/large requests don't thrash.
  const int jet_order = std::min(kJetOrderCeiling, ((order + 16) / 16) * 16);
  PowerSeries z = zeta_jet(HPReal::of(static_cast<long long>(s), wp), jet_order, wp);
  // (log zeta)' = zeta'/zeta; integrate coefficientwise:
  // (log zeta)^(j)(s) = (j-1)! * [w^(j-1)] (z'/z) for j >= 1.
  PowerSeries ratio = series_div(series_deriv(z), z.truncated(jet_order - 1));
  std::vector<HPReal> out(static_cast<size_t>(jet_order) + 1, HPReal(prec_bits));
  out[0] = log(z[0]).rounded_to(prec_bits);
  HPReal fact = HPReal::of(1LL, wp);
  for (int j = 1; j <= jet_order; ++j) {
    if (j > 1) fact *= (j - 1);
    out[static_cast<size_t>(j)] = (fact * ratio[j - 1]).rounded_to(prec_bits);
  }

  std::lock_guard<std::mutex> lock(g_cache_mu);
  auto it = g_logzeta.insert_or_assign(std::make_pair(s, prec_bits), std::move(out)).first;
  return it->second;
}

HPReal prime_zeta(const HPReal& s, long prec_bits) {
  check_domain(s);
  const long wp = prec_bits + 16;
  // log zeta(ds) < 2^(1-ds); dropping d > d_max leaves < 2^-(prec+22).
  const long d_max = static_cast<long>((prec_bits + 24) / s.to_double()) + 2;
  HPReal acc(wp);
  for (long d = 1; d <= d_max; ++d) {
    int mu = moebius_mu(static_cast<uint64_t>(d));
    if (mu == 0) continue;
    HPReal lz = log(zeta(s * d, wp));
    acc += lz * mu / d;
  }
  return acc.rounded_to(prec_bits);
}

HPReal prime_zeta_int(long s, long prec_bits) {
  if (s <= 1) throw std::domain_error("prime_zeta_int: need s > 1");
  const long wp = prec_bits + 16;
  const long d_max = (prec_bits + 24) / s + 2;
  HPReal acc(wp);
  for (long d = 1; d <= d_max; ++d) {
    int mu = moebius_mu(static_cast<uint64_t>(d));
    if (mu == 0) continue;
    acc += log(zeta_int(d * s, wp)) * mu / d;
  }
  return acc.rounded_to(prec_bits);
}

const std::vector<HPReal>& stieltjes(int n_max, long prec_bits) {
  if (n_max > 48)
    throw std::invalid_argument("stieltjes: n_max > 48 unsupported at this scheme");
  std::lock_guard<std::mutex> lock(g_cache_mu);
  auto it = g_stieltjes.find(prec_bits);
  if (it == g_stieltjes.end()) {
    // Always build the full table so returned references stay valid.
    auto v = stieltjes_constants(48, prec_bits);
    it = g_stieltjes.emplace(prec_bits, std::move(v)).first;
  }
  return it->second;
}

HPReal euler_gamma(long prec_bits) { return stieltjes(0, prec_bits)[0]; }

EtaTable eta_coeffs(int j_max, long prec_bits) {
  if (j_max < 0 || j_max > 40)
    throw std::invalid_argument(
        "eta_coeffs: J must be in [0, 40]; Stieltjes inputs stop at 48");
  const long wp = prec_bits + 32;
  const auto& gammas = stieltjes(j_max + 1, wp);

  // A(w) = w zeta(1+w) = 1 + sum_{n>=0} (-1)^n gamma_n w^{n+1} / n!
  const int order = j_max + 1;
  std::vector<HPReal> a(static_cast<size_t>(order) + 1, HPReal(wp));
  a[0] = HPReal::of(1LL, wp);
  HPReal fact = HPReal::of(1LL, wp);
  for (int n = 0; n < order; ++n) {
    if (n > 0) fact *= n;
    HPReal c = gammas[static_cast<size_t>(n)] / fact;
    if (n % 2 == 1) c = -c;
    a[static_cast<size_t>(n) + 1] = c;
  }
  PowerSeries series_a(std::move(a), "w=s-1");
  PowerSeries g = series_div(series_deriv(series_a), series_a.truncated(order - 1))
                      .negated();  // g(1+w) = -A'(w)/A(w)

  EtaTable t;
  t.values.reserve(static_cast<size_t>(j_max) + 1);
  for (int j = 0; j <= j_max; ++j) t.values.push_back(g[j].rounded_to(prec_bits));
  t.stieltjes_used.reserve(static_cast<size_t>(j_max) + 2);
  for (int n = 0; n <= j_max + 1; ++n)
    t.stieltjes_used.push_back(gammas[static_cast<size_t>(n)].rounded_to(prec_bits));
  return t;
}

int moebius_mu(uint64_t n) {
  if (n == 0) throw std::invalid_argument("moebius_mu: n >= 1");
  int primes = 0;
  for (uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      ++primes;
    }
  }
  if (n > 1) ++primes;
  return (primes % 2 == 0) ? 1 : -1;
}

}  // namespace mertensk
