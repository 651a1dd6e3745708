#include "mertensk/power_series.hpp"

#include <stdexcept>

namespace mertensk {

PowerSeries::PowerSeries(std::vector<HPReal> coeffs, std::string center_label)
    : coeffs_(std::move(coeffs)), center_label_(std::move(center_label)) {
  if (coeffs_.empty())
    throw std::invalid_argument("PowerSeries: need at least the constant term");
}

PowerSeries PowerSeries::zero(int order, long prec_bits, std::string center_label) {
  if (order < 0) throw std::invalid_argument("PowerSeries: negative order");
  return PowerSeries(
      std::vector<HPReal>(static_cast<size_t>(order) + 1, HPReal(prec_bits)),
      std::move(center_label));
}

PowerSeries PowerSeries::one(int order, long prec_bits, std::string center_label) {
  PowerSeries r = zero(order, prec_bits, std::move(center_label));
  r.coeffs_[0] = HPReal::of(1LL, prec_bits);
  return r;
}

long PowerSeries::prec() const {
  long p = HPReal::kMinPrec;
  for (const auto& c : coeffs_) p = std::max(p, c.prec());
  return p;
}

PowerSeries PowerSeries::truncated(int new_order) const {
  if (new_order < 0 || new_order > order())
    throw std::invalid_argument("PowerSeries::truncated: bad order");
  return PowerSeries(
      std::vector<HPReal>(coeffs_.begin(), coeffs_.begin() + new_order + 1),
      center_label_);
}

PowerSeries PowerSeries::negated() const {
  std::vector<HPReal> c;
  c.reserve(coeffs_.size());
  for (const auto& x : coeffs_) c.push_back(-x);
  return PowerSeries(std::move(c), center_label_);
}

PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("series_mul: order mismatch");
  const int n = a.order();
  const long prec = std::max(a.prec(), b.prec());
  std::vector<HPReal> c(static_cast<size_t>(n) + 1, HPReal(prec));
  for (int i = 0; i <= n; ++i) {
    HPReal acc(prec);
    for (int j = 0; j <= i; ++j) acc += a[j] * b[i - j];
    c[static_cast<size_t>(i)] = acc;
  }
  return PowerSeries(std::move(c), a.center_label());
}

PowerSeries series_exp(const PowerSeries& a) {
  if (!a[0].is_zero())
    throw std::invalid_argument("series_exp: nonzero constant term");
  const int n = a.order();
  const long prec = a.prec();
  std::vector<HPReal> e(static_cast<size_t>(n) + 1, HPReal(prec));
  e[0] = HPReal::of(1LL, prec);
  // n*e_n = sum_{i=1..n} i*a_i*e_{n-i}, from (exp a)' = a' exp a.
  for (int k = 1; k <= n; ++k) {
    HPReal acc(prec);
    for (int i = 1; i <= k; ++i)
      acc += a[i] * static_cast<long>(i) * e[static_cast<size_t>(k - i)];
    e[static_cast<size_t>(k)] = acc / static_cast<long>(k);
  }
  return PowerSeries(std::move(e), a.center_label());
}

PowerSeries series_div(const PowerSeries& a, const PowerSeries& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("series_div: order mismatch");
  if (b[0].is_zero())
    throw std::invalid_argument("series_div: zero constant term in divisor");
  const int n = a.order();
  const long prec = std::max(a.prec(), b.prec());
  std::vector<HPReal> q(static_cast<size_t>(n) + 1, HPReal(prec));
  for (int k = 0; k <= n; ++k) {
    HPReal acc = a[k].rounded_to(prec);
    for (int i = 0; i < k; ++i) acc -= q[static_cast<size_t>(i)] * b[k - i];
    q[static_cast<size_t>(k)] = acc / b[0];
  }
  return PowerSeries(std::move(q), a.center_label());
}

PowerSeries series_deriv(const PowerSeries& a) {
  const int n = a.order();
  const long prec = a.prec();
  if (n == 0) return PowerSeries::zero(0, prec, a.center_label());
  std::vector<HPReal> d(static_cast<size_t>(n), HPReal(prec));
  for (int k = 1; k <= n; ++k)
    d[static_cast<size_t>(k - 1)] = a[k] * static_cast<long>(k);
  return PowerSeries(std::move(d), a.center_label());
}

HPReal series_eval(const PowerSeries& a, const HPReal& w) {
  const long prec = std::max(a.prec(), w.prec());
  HPReal acc = a[a.order()].rounded_to(prec);
  for (int k = a.order() - 1; k >= 0; --k) acc = acc * w + a[k];
  return acc;
}

}  // namespace mertensk
