#pragma once

#include <vector>

#include "mertensk/hpreal.hpp"
#include "mertensk/power_series.hpp"

namespace mertensk {

/// Derivatives of 1/Gamma at the nonpositive integer 1-M.
/// derivs[n] = (1/Gamma)^(n)(1-M); derivs[0] = 0 always (Gamma poles) and
/// derivs[1] = (-1)^(M-1) (M-1)! exactly to precision.
struct InvGammaJet {
  int m = 1;
  std::vector<HPReal> derivs;
  int order() const { return static_cast<int>(derivs.size()) - 1; }
};

/// Jet at 1-M, M >= 1, from the exact factorization
///   1/Gamma(1-M+w) = [w * prod_{i=1..M-1} (w-i)] * (1/Gamma(1+w)),
/// with 1/Gamma(1+w) as the exponential of its log series. Never numeric
/// differentiation. order <= 56.
InvGammaJet inv_gamma_jet(int m, int order, long prec_bits);

/// Series of 1/Gamma(1+w) up to `order` (the M = 0 center the expansion
/// generator also needs).
PowerSeries inv_gamma_series_at_one(int order, long prec_bits);

/// Gamma'(M) = (M-1)! (H_{M-1} - gamma) for integer M >= 1.
HPReal gamma_prime(int m, long prec_bits);

/// Gamma''(M) = (M-1)! ((H_{M-1} - gamma)^2 + zeta(2) - H^(2)_{M-1}).
HPReal gamma_double_prime(int m, long prec_bits);

}  // namespace mertensk
