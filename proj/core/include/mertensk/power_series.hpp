#pragma once

#include <string>
#include <vector>

#include "mertensk/hpreal.hpp"

namespace mertensk {

/// Truncated Taylor series with HPReal coefficients: coeffs[i] multiplies w^i.
/// Holds exactly order()+1 coefficients; no operation reads past the order,
/// truncation is always explicit via truncated().
class PowerSeries {
 public:
  PowerSeries(std::vector<HPReal> coeffs, std::string center_label = "");
  static PowerSeries zero(int order, long prec_bits, std::string center_label = "");
  /// Multiplicative identity (1, 0, 0, ...).
  static PowerSeries one(int order, long prec_bits, std::string center_label = "");

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const HPReal& operator[](int i) const { return coeffs_.at(static_cast<size_t>(i)); }
  const std::vector<HPReal>& coeffs() const { return coeffs_; }
  const std::string& center_label() const { return center_label_; }
  long prec() const;

  PowerSeries truncated(int new_order) const;
  PowerSeries negated() const;

 private:
  std::vector<HPReal> coeffs_;
  std::string center_label_;
};

/// Cauchy product truncated at the common order. Orders must match.
PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b);

/// exp(a) for a with zero constant term, by the recurrence from
/// (exp a)' = a' * exp a.
PowerSeries series_exp(const PowerSeries& a);

/// q with q*b = a up to the common order; b must have nonzero constant term.
PowerSeries series_div(const PowerSeries& a, const PowerSeries& b);

/// Formal derivative; order drops by one. Constant input yields order-0 zero.
PowerSeries series_deriv(const PowerSeries& a);

/// Horner evaluation of the truncated polynomial at w.
HPReal series_eval(const PowerSeries& a, const HPReal& w);

}  // namespace mertensk
