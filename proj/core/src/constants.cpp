#include "mertensk/constants.hpp"

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>

#include "mertensk/dd.hpp"

namespace mertensk {

namespace {

// Moebius route switches to a direct small-prime sum past this exponent:
// p^-a then decays fast enough that a handful of primes suffice.
constexpr int kDirectSumA = 49;

// Incomplete Gamma(j, z) = (j-1)! e^-z sum_{r<j} z^r/r!, integer j >= 1.
HPReal upper_gamma_int(int j, const HPReal& z, long prec) {
  HPReal term = HPReal::of(1LL, prec);
  HPReal sum = term;
  HPReal fact = term;
  for (int r = 1; r < j; ++r) {
    term = term * z / r;
    sum += term;
    fact *= r;
  }
  return fact * exp(-z) * sum;
}

}  // namespace

HPReal binom_hp(unsigned long n, unsigned long k, long prec_bits) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  HPReal r(prec_bits);
  mpfr_set_z(r.raw_mut(), b.get_mpz_t(), MPFR_RNDN);
  return r;
}

ConstantsTable::ConstantsTable(long prec_bits)
    : prec_(prec_bits), wp_(prec_bits + 64) {
  gamma_ = euler_gamma(prec_);
  eta_ = eta_coeffs(kJMax, prec_);

  // beta = gamma + sum_p (1/p + log(1-1/p)) = gamma - sum_{k>=2} P(k)/k,
  // the absolutely convergent rearrangement (expand log(1-1/p)); terms fall
  // like 2^-k so the cutoff is prec-driven.
  HPReal acc(wp_);
  long k_max = wp_ + 16;
  for (long k = 2; k <= k_max; ++k) acc += prime_zeta_int(k, wp_) / k;
  beta_ = (euler_gamma(wp_) - acc).rounded_to(prec_);

  std::lock_guard<std::mutex> lock(mu_);
  budgets_.emplace("beta", HPReal::pow2(-prec_ + 8, prec_));
  budgets_.emplace("gamma", HPReal::pow2(-prec_ + 8, prec_));
}

HPReal ConstantsTable::zeta_value(int n) const { return zeta_int(n, prec_); }

HPReal ConstantsTable::prime_zeta_value(int a) const {
  return prime_zeta_int(a, prec_);
}

HPReal ConstantsTable::alpha_ja(int j, int a) const {
  if (j < 0 || a < 2)
    throw std::invalid_argument("alpha_ja: need j >= 0 and a >= 2");
  std::lock_guard<std::mutex> lock(mu_);
  return alpha_ja_unlocked(j, a);
}

HPReal ConstantsTable::alpha_ja_unlocked(int j, int a) const {
  auto it = alpha_ja_cache_.find({j, a});
  if (it != alpha_ja_cache_.end()) return it->second;

  HPReal v(wp_);
  if (j == 0) {
    v = prime_zeta_int(a, wp_);
  } else if (a >= kDirectSumA) {
    // sum_p log^j(p) p^-a over small primes; terms collapse geometrically.
    static const std::vector<uint64_t> small_primes = primes_up_to(4096);
    const HPReal tiny = HPReal::pow2(-(wp_ + 8), wp_);
    for (uint64_t p : small_primes) {
      HPReal lp = log(HPReal::of(p, wp_));
      HPReal term = pow_si(lp, j) * pow_si(HPReal::of(p, wp_), -a);
      v += term;
      if (!v.is_zero() && term < tiny * v) break;
    }
  } else {
    // alpha_{j,a} = (-1)^j P^(j)(a) = (-1)^j sum_m mu(m) m^(j-1) (log zeta)^(j)(m a).
    const HPReal tiny = HPReal::pow2(-(wp_ + 8), wp_);
    int consecutive_small = 0;
    bool converged = false;
    for (long m = 1; m <= 4096; ++m) {
      int mu = moebius_mu(static_cast<uint64_t>(m));
      if (mu == 0) continue;
      const auto jets = log_zeta_derivs(m * a, j, wp_);
      HPReal term = jets[static_cast<size_t>(j)] *
                    pow_si(HPReal::of(static_cast<long long>(m), wp_), j - 1);
      if (mu < 0) term = -term;
      v += term;
      if (m >= 8 && !v.is_zero() && abs(term) < tiny * abs(v)) {
        if (++consecutive_small >= 2) {
          converged = true;
          break;
        }
      } else {
        consecutive_small = 0;
      }
    }
    if (!converged)
      throw std::runtime_error("alpha_ja: Moebius series did not converge");
    if (j % 2 == 1) v = -v;
  }
  HPReal out = v.rounded_to(prec_);
  alpha_ja_cache_.emplace(std::make_pair(j, a), out);
  budgets_.emplace("alpha_ja_" + std::to_string(j) + "_" + std::to_string(a),
                   max(abs(out), HPReal::of(1LL, prec_)) * HPReal::pow2(-prec_ + 8, prec_));
  return out;
}

HPReal ConstantsTable::alpha_j1(int j) const {
  if (j < 1) throw std::invalid_argument("alpha_j1: j >= 1");
  return -(alpha(j) * j);
}

HPReal ConstantsTable::alpha(int j) const {
  if (j < 1 || j > kJMax)
    throw std::invalid_argument("alpha: j in [1, 40] supported");
  std::lock_guard<std::mutex> lock(mu_);
  return alpha_unlocked(j);
}

HPReal ConstantsTable::alpha_unlocked(int j) const {
  auto it = alpha_cache_.find(j);
  if (it != alpha_cache_.end()) return it->second;

  // alpha_j = (1/j) (sum_{k>=2} k^(j-1) alpha_{j,k} + (-1)^j (j-1)! eta_{j-1})
  HPReal sum(wp_);
  const HPReal tiny = HPReal::pow2(-(prec_ + 16), wp_);
  for (int k = 2; k <= 4096; ++k) {
    HPReal term = alpha_ja_unlocked(j, k).rounded_to(wp_) *
                  pow_si(HPReal::of(static_cast<long long>(k), wp_), j - 1);
    sum += term;
    // terms rise until k ~ j/log 2, then die off like k^(j-1) 2^-k
    if (k > 2 * j + 8 && term < tiny * sum) break;
  }
  HPReal fact = HPReal::of(1LL, wp_);
  for (int i = 2; i <= j - 1; ++i) fact *= i;
  HPReal eta_term = fact * eta_.values[static_cast<size_t>(j - 1)].rounded_to(wp_);
  if (j % 2 == 1) eta_term = -eta_term;
  HPReal out = ((sum + eta_term) / j).rounded_to(prec_);

  alpha_cache_.emplace(j, out);
  budgets_.emplace("alpha_" + std::to_string(j),
                   max(abs(out), HPReal::of(1LL, prec_)) * HPReal::pow2(-prec_ + 16, prec_));
  return out;
}

HPReal ConstantsTable::d_jk(int j, int k) const {
  if (j < 1 || k < 2) throw std::invalid_argument("d_jk: need j >= 1, k >= 2");
  HPReal log2 = log(HPReal::of(2LL, wp_));
  return ((alpha_ja(j, k).rounded_to(wp_) -
           prime_zeta_int(k, wp_) * pow_si(log2, j)) /
          j)
      .rounded_to(prec_);
}

HPReal ConstantsTable::ratio(int j) const {
  // alpha_j / (j! 2^j / (2 j^2)) = alpha_j * j / ((j-1)! 2^(j-1))
  HPReal denom = HPReal::of(1LL, wp_);
  for (int i = 2; i <= j - 1; ++i) denom *= i;
  denom = denom * HPReal::pow2(j - 1, wp_);
  return (alpha(j).rounded_to(wp_) * j / denom).rounded_to(prec_);
}

std::vector<std::pair<int, HPReal>> ConstantsTable::ratio_table(int j_max) const {
  if (j_max > kJMax) throw std::invalid_argument("ratio_table: j_max > 40");
  std::vector<std::pair<int, HPReal>> rows;
  rows.reserve(static_cast<size_t>(j_max));
  for (int j = 1; j <= j_max; ++j) rows.emplace_back(j, ratio(j));
  return rows;
}

std::vector<std::pair<int, HPReal>> ConstantsTable::rh_refinement_diagnostic(
    int j_lo, int j_hi) const {
  std::vector<std::pair<int, HPReal>> rows;
  HPReal four_thirds = HPReal::of(4LL, wp_) / 3;
  for (int j = j_lo; j <= j_hi; ++j)
    rows.emplace_back(j,
                      ((ratio(j).rounded_to(wp_) - 1) * pow_si(four_thirds, j))
                          .rounded_to(prec_));
  return rows;
}

HPReal ConstantsTable::budget(const std::string& key) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = budgets_.find(key);
  if (it != budgets_.end()) return it->second;
  return HPReal::pow2(-prec_ + 8, prec_);
}

ValueWithBudget ConstantsTable::alpha_via_convergent_formula(int j, uint64_t plimit,
                                                             double tol) const {
  if (j < 1) throw std::invalid_argument("alpha_via_convergent_formula: j >= 1");
  const long prec = prec_;
  const HPReal log2 = log(HPReal::of(2LL, wp_));
  const HPReal gamma_wp = gamma_.rounded_to(wp_);

  // sum_p log^j(p)/(p(p-1)) over sieved primes, dd-accumulated; tail below.
  DD psum;
  // E-bar integral: E(t) = sum_{p<=t} log p/(p-1) - (log t - gamma) is
  // piecewise log t + const, so the integral against log^{j-2} t / t has a
  // closed form on every inter-prime gap; accumulate those exactly.
  DD integral;
  const double gamma_d = gamma_wp.to_double();
  double a_run = 0.0;  // sum_{p<=t} log p / (p-1)
  double prev_t = 2.0;
  double last_e = 0.0;
  const int je = j - 2;  // log-power in the integrand
  for_each_prime(plimit, [&](uint64_t p) {
    double pd = static_cast<double>(p);
    double lp = std::log(pd);
    if (j >= 2 && p > 2) {
      // integral over [prev_t, p) with E(t) = a_run - log t + gamma
      double l0 = std::log(prev_t), l1 = lp;
      double c = a_run + gamma_d;
      // int (c - log t) log^je t dt/t = c (l^{je+1})/(je+1) - l^{je+2}/(je+2)
      double piece = c * (std::pow(l1, je + 1) - std::pow(l0, je + 1)) / (je + 1) -
                     (std::pow(l1, je + 2) - std::pow(l0, je + 2)) / (je + 2);
      integral += DD(piece);
      prev_t = pd;
    }
    DD lpj = DD(1.0);
    for (int i = 0; i < j; ++i) lpj = lpj * lp;
    psum += lpj * DD::div(1.0, pd * (pd - 1.0));
    a_run += lp / (pd - 1.0);
    last_e = a_run - (lp - gamma_d);
  });

  // Tail budgets: prime-sum tail via the Chebyshev integral, E-bar tail as
  // |E(plimit)| times the trailing log mass (engineering estimate).
  HPReal log_t = log(HPReal::of(plimit, wp_));
  HPReal psum_tail = upper_gamma_int(j, log_t, wp_) * HPReal::of(2.6, wp_) +
                     pow_si(log_t, j) / HPReal::of(plimit, wp_) * HPReal::of(2.6, wp_);
  double ebar_tail = j >= 2 ? std::abs(last_e) * std::pow(std::log(static_cast<double>(plimit)), je + 1) : 0.0;

  HPReal value = gamma_wp * pow_si(log2, j - 1) + to_hpreal(psum, wp_) -
                 pow_si(log2, j) * (j - 1) / j;
  if (j >= 2) value += to_hpreal(integral, wp_) * (j - 1);
  value /= j;

  ValueWithBudget out;
  out.value = value.rounded_to(prec);
  out.budget = (psum_tail + HPReal::of(ebar_tail, wp_) + HPReal::pow2(-40, wp_))
                   .rounded_to(prec);
  out.flagged = out.budget > HPReal::of(tol, prec);
  return out;
}

ValueWithBudget ConstantsTable::alpha_ja_prime_sum(int j, int a, uint64_t plimit,
                                                   long prec_bits, double tol) {
  if (j < 0 || a < 2)
    throw std::invalid_argument("alpha_ja_prime_sum: need j >= 0, a >= 2");
  const long wp = prec_bits + 16;
  // Monotonicity of log^j(t)/t^a past the cutoff needs log t > j/a; demand
  // a margin so the Chebyshev tail integral below is valid.
  double log_t = std::log(static_cast<double>(plimit));
  if (log_t * a < j + 2)
    throw std::runtime_error(
        "alpha_ja_prime_sum: plimit below the integrand mode; needs plimit > "
        "exp((j+2)/a)");

  // Tail: sum_{p>T} f(p) <= 1.3 [ f(T) T/log T + int_T^inf f(t)/log t dt ]
  // with f = log^j t / t^a; the integral is Gamma(j, (a-1) log T)/(a-1)^j.
  HPReal log_t_hp = log(HPReal::of(plimit, wp));
  HPReal z = log_t_hp * (a - 1);
  HPReal tail = upper_gamma_int(std::max(j, 1), z, wp) /
                    pow_si(HPReal::of(static_cast<long long>(a - 1), wp), j) +
                pow_si(log_t_hp, j) * HPReal::of(plimit, wp) /
                    pow_si(HPReal::of(plimit, wp), a) / log_t_hp;
  tail = tail * HPReal::of(1.3, wp) * 2;  // Chebyshev constant, then doubled

  if (tail > HPReal::of(tol, wp)) {
    double needed = std::exp((log_t + 3.0) * 1.5);
    throw std::runtime_error(
        "alpha_ja_prime_sum: tail bound " + tail.str(6) + " above requested " +
        std::to_string(tol) + "; retry with plimit around " +
        std::to_string(needed));
  }

  DD acc;
  for_each_prime(plimit, [&](uint64_t p) {
    double pd = static_cast<double>(p);
    DD t = DD::div(1.0, std::pow(pd, a));
    double lp = std::log(pd);
    for (int i = 0; i < j; ++i) t = t * lp;
    acc += t;
  });

  ValueWithBudget out;
  out.value = to_hpreal(acc, prec_bits);
  out.budget = (tail + abs(out.value) * HPReal::pow2(-48, wp)).rounded_to(prec_bits);
  out.flagged = false;
  return out;
}

ValueWithBudget ConstantsTable::beta_prime_sum(uint64_t plimit, long prec_bits) {
  DD acc;
  for_each_prime(plimit, [&](uint64_t p) {
    DD inv = DD::inv(p);
    acc += inv + DD(std::log1p(-inv.hi));
  });
  // terms are ~ -1/(2p^2): tail below 1.3/(T log T), doubled.
  double log_t = std::log(static_cast<double>(plimit));
  ValueWithBudget out;
  long wp = prec_bits + 16;
  out.value =
      (euler_gamma(wp) + to_hpreal(acc, wp)).rounded_to(prec_bits);
  out.budget = HPReal::of(2.6 / (static_cast<double>(plimit) * log_t) + 1e-14,
                          prec_bits);
  return out;
}

}  // namespace mertensk
