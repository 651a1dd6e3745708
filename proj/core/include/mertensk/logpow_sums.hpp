#pragma once

#include <vector>

#include "mertensk/hpreal.hpp"

namespace mertensk {

/// A_i = sum_{n>=1} log^i(n) n^-s for i = 0..i_max, real s > 1, by
/// Euler-Maclaurin: head sum to a cutoff N plus the incomplete-gamma tail
/// integral and derivative corrections. N and the correction order are chosen
/// adaptively so the first omitted correction term stays below
/// 2^-(prec+guard) relative to the result; that term (x4) is the documented
/// budget. All i share one pass over the head terms.
std::vector<HPReal> dirichlet_logpow_sums(const HPReal& s, int i_max, long prec_bits,
                                          long guard_bits = 16);

/// Generalized Euler constants gamma_0..gamma_{n_max}, defined by
/// gamma_n = lim_x (sum_{m<=x} log^n(m)/m - log^{n+1}(x)/(n+1)).
/// Same Euler-Maclaurin scheme with f = log^n t / t. The head sum cancels
/// against the log^{n+1} term, so the computation runs at an elevated working
/// precision covering ~(n+1) log2(log N) lost bits before rounding back.
/// Throws if n_max > 48 (coefficients beyond that need a deeper error
/// analysis than this scheme carries).
std::vector<HPReal> stieltjes_constants(int n_max, long prec_bits);

}  // namespace mertensk
