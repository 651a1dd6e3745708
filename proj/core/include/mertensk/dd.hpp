#pragma once

#include <cmath>
#include <cstdint>

#include "mertensk/hpreal.hpp"

namespace mertensk {

/// Unevaluated double-double value hi + lo with |lo| <= ulp(hi)/2.
///
/// This is the accumulator used inside sieve kernels: roughly 106 bits of
/// relative accuracy per operation at double speed. Long reciprocal sums
/// (n terms, partial sums of magnitude S) carry a worst-case drift of about
/// n * 2^-104 * S, which the callers double and record as the budget.
struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double h, double l) : hi(h), lo(l) {}
  explicit constexpr DD(double h) : hi(h), lo(0.0) {}

  static DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
  }

  static DD two_prod(double a, double b) {
    double p = a * b;
    double err = std::fma(a, b, -p);
    return {p, err};
  }

  static DD renorm(double h, double l) {
    double s = h + l;
    double e = l - (s - h);
    return {s, e};
  }

  DD operator+(const DD& o) const {
    DD s = two_sum(hi, o.hi);
    double lo2 = s.lo + lo + o.lo;
    return renorm(s.hi, lo2);
  }

  DD operator-(const DD& o) const { return *this + DD{-o.hi, -o.lo}; }

  DD operator+(double d) const { return *this + DD{d}; }
  DD operator-() const { return {-hi, -lo}; }

  DD operator*(const DD& o) const {
    DD p = two_prod(hi, o.hi);
    double lo2 = p.lo + hi * o.lo + lo * o.hi;
    return renorm(p.hi, lo2);
  }

  DD operator*(double d) const {
    DD p = two_prod(hi, d);
    return renorm(p.hi, p.lo + lo * d);
  }

  DD& operator+=(const DD& o) { return *this = *this + o; }
  DD& operator-=(const DD& o) { return *this = *this - o; }

  double to_double() const { return hi + lo; }

  /// Quotient a/b to dd accuracy (one Newton correction of the double quotient).
  static DD div(double a, double b) {
    double q1 = a / b;
    DD p = two_prod(q1, b);
    double r = ((a - p.hi) - p.lo) / b;
    return renorm(q1, r);
  }

  /// 1/n for integer n; the workhorse of reciprocal sums.
  static DD inv(uint64_t n) { return div(1.0, static_cast<double>(n)); }
};

inline HPReal to_hpreal(const DD& d, long prec_bits) {
  return HPReal::of(d.hi, prec_bits) + HPReal::of(d.lo, prec_bits);
}

}  // namespace mertensk
