#pragma once

#include <vector>

#include "mertensk/hpreal.hpp"

namespace mertensk {

/// Li_{-k}(z) for k >= 0 and 0 < z < 1, evaluated exactly as the rational
/// function N_k(z)/(1-z)^(k+1). The integer numerator polynomials follow the
/// derivative recurrence N_{k+1} = z (N_k'(z)(1-z) + (k+1) N_k(z)) from
/// Li_{-k-1} = z d/dz Li_{-k} (their coefficients are the Eulerian triangle);
/// no series truncation beyond final rounding. Supports k <= 400.
HPReal li_neg(int k, const HPReal& z, long prec_bits);

/// I(k, x) = int_1^inf t^k x^-t dt = (1/x) sum_{j=1..k+1} k!/(k+1-j)! log^-j x,
/// closed form; x > 1.
HPReal i_integral(int k, const HPReal& x, long prec_bits);

struct NegPolyEval {
  int k = 0;
  HPReal x;
  HPReal li_value;  // Li_{-k}(1/x)
  HPReal i_value;   // I(k, x)
  HPReal ratio;     // li/i
};

NegPolyEval neg_poly_eval(int k, const HPReal& x, long prec_bits);

struct PolylogBoundReport {
  struct RatioRow {
    int k;
    double x;
    double abs_ratio_err;  // |Li/I - 1|
    double bound;          // x / sqrt(2 pi k)
    bool ok;               // strict inequality held
  };
  std::vector<RatioRow> ratio_rows;
  bool ratio_ok = true;           // every row strict
  bool sandwich_ok = true;        // I(k,x) bounds held on the grid
  bool stirling_ok = true;        // 1 <= k!/((k/e)^k sqrt(2 pi k)) <= e^(1/12k)
  double li_bound_constant = 0;   // max over grid of Li_{1-j}(1/x) log^j x/(j-1)!
  bool monotone_tail_ok = true;   // |ratio-1| eventually decreasing per x
};

/// Bound suite over the x grid (default {1.5, 2, e, 10, e^16}) and k <= k_max.
PolylogBoundReport polylog_bound_suite(const std::vector<double>& x_grid, int k_max,
                                    long prec_bits);
PolylogBoundReport polylog_bound_suite(int k_max, long prec_bits);

}  // namespace mertensk
