#include "mertensk/logpow_sums.hpp"

#include <cmath>
#include <stdexcept>

#include "mertensk/bernoulli.hpp"

namespace mertensk {

namespace {

// Odd derivatives of f(t) = log^i(t) t^-s evaluated at t = N.
//
// Every derivative is t^-(s+r) times a polynomial in log t:
//   d/dt [c_a log^a t * t^-(s+r)] = ((a+1) c_{a+1} - (s+r) c_a) log^a t * t^-(s+r+1).
// `coeff_` holds that polynomial.
class LogPolyDerivs {
 public:
  // n_pow_s = N^-s precomputed by the caller.
  LogPolyDerivs(int i, const HPReal& s, const HPReal& n_val, const HPReal& n_pow_s,
                long prec)
      : s_(s.rounded_to(prec)),
        n_val_(n_val.rounded_to(prec)),
        log_n_(log(n_val_)),
        n_pow_(n_pow_s.rounded_to(prec)),
        prec_(prec),
        coeff_(static_cast<size_t>(i) + 1, HPReal(prec)) {
    coeff_[static_cast<size_t>(i)] = HPReal::of(1LL, prec);
  }

  void step() {
    HPReal sr = s_ + r_;
    for (size_t a = 0; a < coeff_.size(); ++a) {
      HPReal up = (a + 1 < coeff_.size()) ? coeff_[a + 1] * static_cast<long>(a + 1)
                                          : HPReal(prec_);
      coeff_[a] = up - sr * coeff_[a];
    }
    ++r_;
    n_pow_ /= n_val_;  // now t^-(s+r) at t = N
  }

  HPReal eval() const {
    HPReal acc(prec_);
    for (size_t a = coeff_.size(); a-- > 0;) acc = acc * log_n_ + coeff_[a];
    return acc * n_pow_;
  }

 private:
  HPReal s_;
  HPReal n_val_;
  HPReal log_n_;
  HPReal n_pow_;
  long prec_;
  std::vector<HPReal> coeff_;
  long r_ = 0;
};

// log2 of an upper estimate for |B_{2R+2}/(2R+2)! * f^(2R+1)(N)| with
// f = log^i t * t^-s; cheap double math used to pick N before any mpfr work.
double omitted_term_log2(double s, int i, int big_r, double n) {
  const double ln_n = std::log(n);
  const double two_r1 = 2.0 * big_r + 1.0;
  double t = 1.0 - (2.0 * big_r + 2.0) * std::log2(2.0 * M_PI);
  // coefficient norm of the derivative polynomial <= prod_{r<2R+1}(s + r + i)
  t += (std::lgamma(s + i + two_r1) - std::lgamma(s + i)) / std::log(2.0);
  t += i * std::log2(std::max(ln_n, 1.001));
  t += (-s - two_r1) * std::log2(n);
  return t;
}

// n^-s, using integer powering when s is an exact integer.
HPReal inv_pow(const HPReal& n, const HPReal& s, const HPReal& log_n) {
  if (mpfr_integer_p(s.raw()) && mpfr_fits_slong_p(s.raw(), MPFR_RNDN))
    return pow_si(n, -mpfr_get_si(s.raw(), MPFR_RNDN));
  return exp(s * -log_n);
}

}  // namespace

std::vector<HPReal> dirichlet_logpow_sums(const HPReal& s, int i_max, long prec_bits,
                                          long guard_bits) {
  if (i_max < 0) throw std::invalid_argument("dirichlet_logpow_sums: i_max < 0");
  if (!(s > HPReal::of(1LL, s.prec())))
    throw std::domain_error("dirichlet_logpow_sums: need s > 1");

  const long wp = prec_bits + guard_bits + 32;
  const double sd = s.to_double();

  if (sd >= 64.0) {
    // Plain Dirichlet summation: n^-s already collapses in a few dozen terms,
    // much cheaper than Euler-Maclaurin corrections at huge rising factorials.
    std::vector<HPReal> sums(static_cast<size_t>(i_max) + 1, HPReal(wp));
    const HPReal s_wp = s.rounded_to(wp);
    sums[0] += HPReal::of(1LL, wp);
    // stop when log^i(n) n^-s < 2^-(wp+16) * 2^-s for all i, i.e. the term
    // is negligible against the leading n = 2 term of every sum
    const double stop_log2 = -sd - (wp + 16);
    for (uint64_t n = 2;; ++n) {
      double nd = static_cast<double>(n);
      double term_log2 =
          -sd * std::log2(nd) + i_max * std::log2(std::max(std::log(nd), 1.001));
      HPReal n_hp = HPReal::of(n, wp);
      HPReal u = log(n_hp);
      HPReal pw = inv_pow(n_hp, s_wp, u);
      sums[0] += pw;
      for (int i = 1; i <= i_max; ++i) {
        pw *= u;
        sums[static_cast<size_t>(i)] += pw;
      }
      if (term_log2 < stop_log2) break;
      if (n > 100000)
        throw std::runtime_error("dirichlet_logpow_sums: direct path diverged");
    }
    for (auto& v : sums) v = v.rounded_to(prec_bits);
    return sums;
  }
  const int big_r = static_cast<int>(std::min<long>(64, wp / 5 + 8));

  // Relative target: the i=0 sum is at least max(1, 2^-s)-ish; for large s
  // everything scales like 2^-s, so anchor the absolute target there.
  const double result_floor_log2 = std::min(0.0, -sd);
  const double target = result_floor_log2 - static_cast<double>(wp);

  uint64_t n_cut = 64;
  while (omitted_term_log2(sd, i_max, big_r, static_cast<double>(n_cut)) > target &&
         n_cut < (1ULL << 26))
    n_cut *= 2;
  if (omitted_term_log2(sd, i_max, big_r, static_cast<double>(n_cut)) > target)
    throw std::runtime_error(
        "dirichlet_logpow_sums: correction bound not met at the cutoff cap; "
        "s too close to 1 for this precision");

  std::vector<HPReal> sums(static_cast<size_t>(i_max) + 1, HPReal(wp));
  const HPReal s_wp = s.rounded_to(wp);

  sums[0] += HPReal::of(1LL, wp);  // n = 1
  for (uint64_t n = 2; n < n_cut; ++n) {
    HPReal n_hp = HPReal::of(n, wp);
    HPReal u = log(n_hp);
    HPReal pw = inv_pow(n_hp, s_wp, u);
    sums[0] += pw;
    for (int i = 1; i <= i_max; ++i) {
      pw *= u;
      sums[static_cast<size_t>(i)] += pw;
    }
  }

  const HPReal n_hp = HPReal::of(n_cut, wp);
  const HPReal log_n = log(n_hp);
  const HPReal s1 = s_wp - 1;
  const HPReal n_pow_s = inv_pow(n_hp, s_wp, log_n);
  const HPReal n_pow_s1 = n_pow_s * n_hp;  // N^(1-s)

  for (int i = 0; i <= i_max; ++i) {
    // int_N^inf log^i t * t^-s dt
    //   = (i!/(s-1)^{i+1}) N^{1-s} sum_{r=0..i} ((s-1) log N)^r / r!
    HPReal z = s1 * log_n;
    HPReal term = HPReal::of(1LL, wp);
    HPReal esum = term;
    HPReal fact = term;
    for (int r = 1; r <= i; ++r) {
      term = term * z / r;
      esum += term;
      fact *= r;
    }
    HPReal integral = fact / pow_si(s1, i + 1) * n_pow_s1 * esum;

    HPReal f_at_n = pow_si(log_n, i) * n_pow_s;
    HPReal acc = sums[static_cast<size_t>(i)] + integral + f_at_n / 2;

    LogPolyDerivs derivs(i, s_wp, n_hp, n_pow_s, wp);
    for (int r = 1; r <= big_r; ++r) {
      derivs.step();
      acc -= bernoulli_over_factorial(2 * r, wp) * derivs.eval();
      derivs.step();
    }
    sums[static_cast<size_t>(i)] = acc;
  }

  for (auto& v : sums) v = v.rounded_to(prec_bits);
  return sums;
}

std::vector<HPReal> stieltjes_constants(int n_max, long prec_bits) {
  if (n_max < 0) throw std::invalid_argument("stieltjes_constants: n_max < 0");
  if (n_max > 48)
    throw std::invalid_argument(
        "stieltjes_constants: n_max > 48 unsupported at this precision scheme; "
        "required working precision grows past the validated range");

  const uint64_t n_cut = 4096;
  const int big_r = 48;
  // The head sum peaks near log^{n+1}(N)/(n+1) before cancelling down to the
  // O(1)-ish gamma_n; add those bits to the working precision.
  const double log_log_n = std::log2(std::log(static_cast<double>(n_cut)));
  const long wp = prec_bits + 64 + static_cast<long>((n_max + 1) * log_log_n + 1.0);

  std::vector<HPReal> head(static_cast<size_t>(n_max) + 1, HPReal(wp));
  head[0] += HPReal::of(1LL, wp);  // m = 1
  for (uint64_t m = 2; m < n_cut; ++m) {
    HPReal m_hp = HPReal::of(m, wp);
    HPReal u = log(m_hp);
    HPReal pw = 1 / m_hp;
    head[0] += pw;
    for (int n = 1; n <= n_max; ++n) {
      pw *= u;
      head[static_cast<size_t>(n)] += pw;
    }
  }

  const HPReal n_hp = HPReal::of(n_cut, wp);
  const HPReal log_n = log(n_hp);
  const HPReal one = HPReal::of(1LL, wp);
  const HPReal inv_n = 1 / n_hp;

  std::vector<HPReal> out;
  out.reserve(static_cast<size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) {
    HPReal f_at_n = pow_si(log_n, n) * inv_n;
    HPReal acc =
        head[static_cast<size_t>(n)] + f_at_n / 2 - pow_si(log_n, n + 1) / (n + 1);
    LogPolyDerivs derivs(n, one, n_hp, inv_n, wp);
    for (int r = 1; r <= big_r; ++r) {
      derivs.step();
      acc -= bernoulli_over_factorial(2 * r, wp) * derivs.eval();
      derivs.step();
    }
    out.push_back(acc.rounded_to(prec_bits));
  }
  return out;
}

}  // namespace mertensk
