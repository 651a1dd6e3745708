#pragma once

#include <vector>

#include "mertensk/hpreal.hpp"
#include "mertensk/power_series.hpp"

namespace mertensk {

/// Riemann zeta on the real axis s > 1 (Euler-Maclaurin). Throws
/// std::domain_error for s <= 1.
HPReal zeta(const HPReal& s, long prec_bits);
/// Convenience for integer arguments; memoized process-wide.
HPReal zeta_int(long s, long prec_bits);

/// Taylor series of zeta(s + w) around a center s > 1, coefficients
/// zeta^(i)(s)/i! for i = 0..order.
PowerSeries zeta_jet(const HPReal& s, int order, long prec_bits);

/// (log zeta)^(j)(s) for j = 0..order at an integer center s >= 2.
/// j = 0 entry is log zeta(s). Memoized per (s, order ceiling, prec).
std::vector<HPReal> log_zeta_derivs(long s, int order, long prec_bits);

/// Prime zeta P(s) = sum_p p^-s for s > 1, via Moebius inversion of
/// log zeta: P(s) = sum_{d>=1} mu(d)/d log zeta(ds), truncated when
/// log zeta(ds) drops below 2^-(prec+16). Throws for s <= 1.
HPReal prime_zeta(const HPReal& s, long prec_bits);
HPReal prime_zeta_int(long s, long prec_bits);

/// Generalized Euler constants gamma_0..gamma_{n_max} (memoized).
const std::vector<HPReal>& stieltjes(int n_max, long prec_bits);

/// gamma_0 at the given precision, from the Stieltjes computation.
HPReal euler_gamma(long prec_bits);

/// Coefficients eta_j of g(s) = -zeta'/zeta(s) - 1/(s-1) around s = 1.
struct EtaTable {
  std::vector<HPReal> values;         // eta_0..eta_J
  std::vector<HPReal> stieltjes_used; // gamma_0..gamma_J inputs
  int order() const { return static_cast<int>(values.size()) - 1; }
};

/// eta_0..eta_J as the series of -A'(w)/A(w) for A(w) = w zeta(1+w), built
/// from Stieltjes constants. Requires J <= 40 (Stieltjes inputs up to 48 with
/// guard); eta_0 = -gamma.
EtaTable eta_coeffs(int j_max, long prec_bits);

/// Moebius mu(n) for n >= 1.
int moebius_mu(uint64_t n);

}  // namespace mertensk
