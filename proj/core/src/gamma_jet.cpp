#include "mertensk/gamma_jet.hpp"

#include <stdexcept>

#include "mertensk/zeta.hpp"

namespace mertensk {

namespace {
constexpr int kOrderCeiling = 56;
}

PowerSeries inv_gamma_series_at_one(int order, long prec_bits) {
  if (order < 0 || order > kOrderCeiling)
    throw std::invalid_argument("inv_gamma_series_at_one: order out of range");
  const long wp = prec_bits + 32;
  // 1/Gamma(1+w) = exp(gamma w + sum_{j>=2} (-1)^(j-1) zeta(j) w^j / j)
  std::vector<HPReal> a(static_cast<size_t>(order) + 1, HPReal(wp));
  if (order >= 1) a[1] = euler_gamma(wp);
  for (int j = 2; j <= order; ++j) {
    HPReal c = zeta_int(j, wp) / j;
    if (j % 2 == 0) c = -c;
    a[static_cast<size_t>(j)] = c;
  }
  PowerSeries e = series_exp(PowerSeries(std::move(a), "w=z-1"));
  std::vector<HPReal> out;
  out.reserve(static_cast<size_t>(order) + 1);
  for (int i = 0; i <= order; ++i) out.push_back(e[i].rounded_to(prec_bits));
  return PowerSeries(std::move(out), "w=z-1");
}

InvGammaJet inv_gamma_jet(int m, int order, long prec_bits) {
  if (m < 1) throw std::invalid_argument("inv_gamma_jet: M >= 1 required");
  if (order < 0 || order + m > kOrderCeiling + 1)
    throw std::invalid_argument("inv_gamma_jet: order too large for series ceiling");

  const long wp = prec_bits + 32;
  const int work_order = order + m - 1;  // polynomial factor has degree m
  PowerSeries base = inv_gamma_series_at_one(std::min(work_order, kOrderCeiling), wp);

  // poly(w) = w * prod_{i=1..M-1} (w - i), exact integer coefficients.
  std::vector<HPReal> poly(static_cast<size_t>(m) + 1, HPReal(wp));
  poly[1] = HPReal::of(1LL, wp);
  int degree = 1;
  for (int i = 1; i <= m - 1; ++i) {
    // multiply by (w - i)
    for (int d = degree + 1; d >= 1; --d)
      poly[static_cast<size_t>(d)] =
          poly[static_cast<size_t>(d - 1)] - poly[static_cast<size_t>(d)] * i;
    poly[0] = -(poly[0] * i);
    ++degree;
  }

  InvGammaJet jet;
  jet.m = m;
  jet.derivs.assign(static_cast<size_t>(order) + 1, HPReal(prec_bits));
  HPReal fact = HPReal::of(1LL, wp);
  for (int n = 0; n <= order; ++n) {
    if (n > 0) fact *= n;
    HPReal coeff(wp);
    for (int d = 0; d <= std::min(n, degree); ++d)
      if (n - d <= base.order()) coeff += poly[static_cast<size_t>(d)] * base[n - d];
    jet.derivs[static_cast<size_t>(n)] = (coeff * fact).rounded_to(prec_bits);
  }
  return jet;
}

HPReal gamma_prime(int m, long prec_bits) {
  if (m < 1) throw std::invalid_argument("gamma_prime: M >= 1 required");
  const long wp = prec_bits + 16;
  HPReal h(wp);
  HPReal fact = HPReal::of(1LL, wp);
  for (int j = 1; j <= m - 1; ++j) {
    h += HPReal::of(1LL, wp) / j;
    fact *= j;
  }
  return (fact * (h - euler_gamma(wp))).rounded_to(prec_bits);
}

HPReal gamma_double_prime(int m, long prec_bits) {
  if (m < 1) throw std::invalid_argument("gamma_double_prime: M >= 1 required");
  const long wp = prec_bits + 16;
  HPReal h(wp), h2(wp);
  HPReal fact = HPReal::of(1LL, wp);
  for (int j = 1; j <= m - 1; ++j) {
    h += HPReal::of(1LL, wp) / j;
    h2 += HPReal::of(1LL, wp) / (static_cast<long long>(j) * j);
    fact *= j;
  }
  HPReal hg = h - euler_gamma(wp);
  return (fact * (hg * hg + zeta_int(2, wp) - h2)).rounded_to(prec_bits);
}

}  // namespace mertensk
