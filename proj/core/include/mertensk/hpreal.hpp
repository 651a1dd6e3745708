#pragma once

#include <cinttypes>
#include <cstdint>

#define MPFR_USE_INTMAX_T 1
#include <mpfr.h>

#include <concepts>
#include <string>
#include <string_view>
#include <type_traits>

namespace mertensk {

/// Arbitrary-precision real with an explicit binary precision.
///
/// Every arithmetic operation is correctly rounded (round-to-nearest-even)
/// at the precision of the result, which is the maximum of the operand
/// precisions. Values are immutable in practice: all operations return new
/// objects, so HPReal is safe to share across threads once constructed.
class HPReal {
 public:
  static constexpr long kMinPrec = 64;

  HPReal() : HPReal(kMinPrec) {}
  explicit HPReal(long prec_bits);

  HPReal(const HPReal& o);
  HPReal(HPReal&& o) noexcept;
  HPReal& operator=(const HPReal& o);
  HPReal& operator=(HPReal&& o) noexcept;
  ~HPReal();

  template <std::integral T>
  static HPReal of(T v, long prec_bits) {
    if constexpr (std::is_signed_v<T>)
      return of_ll(static_cast<long long>(v), prec_bits);
    else
      return of_ull(static_cast<unsigned long long>(v), prec_bits);
  }
  static HPReal of(double v, long prec_bits);
  static HPReal parse(std::string_view decimal, long prec_bits);
  static HPReal pi(long prec_bits);
  /// MPFR's Euler-Mascheroni constant. Used only as a test oracle; library
  /// code derives gamma from its own Stieltjes computation.
  static HPReal euler_oracle(long prec_bits);
  /// 2^e with unit mantissa; handy for tolerances.
  static HPReal pow2(long e, long prec_bits);

  long prec() const { return mpfr_get_prec(v_); }
  HPReal rounded_to(long prec_bits) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  long long to_ll() const { return mpfr_get_sj(v_, MPFR_RNDN); }
  /// Decimal string with the given number of significant digits.
  std::string str(int digits = 30) const;

  int cmp(const HPReal& o) const { return mpfr_cmp(v_, o.v_); }
  int cmp(long long v) const { return mpfr_cmp_si(v_, v); }

  HPReal& operator+=(const HPReal& o);
  HPReal& operator-=(const HPReal& o);
  HPReal& operator*=(const HPReal& o);
  HPReal& operator/=(const HPReal& o);
  HPReal& operator*=(long v) { return *this = *this * v; }
  HPReal& operator/=(long v) { return *this = *this / v; }
  HPReal& operator+=(long v) { return *this = *this + v; }
  HPReal& operator-=(long v) { return *this = *this - v; }

  friend HPReal operator+(const HPReal& a, const HPReal& b);
  friend HPReal operator-(const HPReal& a, const HPReal& b);
  friend HPReal operator*(const HPReal& a, const HPReal& b);
  friend HPReal operator/(const HPReal& a, const HPReal& b);
  friend HPReal operator-(const HPReal& a);

  friend HPReal operator*(const HPReal& a, long b);
  friend HPReal operator*(long a, const HPReal& b) { return b * a; }
  friend HPReal operator/(const HPReal& a, long b);
  friend HPReal operator/(long a, const HPReal& b);
  friend HPReal operator+(const HPReal& a, long b);
  friend HPReal operator-(const HPReal& a, long b);
  friend HPReal operator-(long a, const HPReal& b);
  friend HPReal operator+(long a, const HPReal& b) { return b + a; }

  friend bool operator<(const HPReal& a, const HPReal& b) { return a.cmp(b) < 0; }
  friend bool operator>(const HPReal& a, const HPReal& b) { return a.cmp(b) > 0; }
  friend bool operator<=(const HPReal& a, const HPReal& b) { return a.cmp(b) <= 0; }
  friend bool operator>=(const HPReal& a, const HPReal& b) { return a.cmp(b) >= 0; }
  friend bool operator==(const HPReal& a, const HPReal& b) { return a.cmp(b) == 0; }
  friend bool operator!=(const HPReal& a, const HPReal& b) { return a.cmp(b) != 0; }

  friend HPReal sqrt(const HPReal& a);
  friend HPReal log(const HPReal& a);
  friend HPReal log1p(const HPReal& a);
  friend HPReal exp(const HPReal& a);
  friend HPReal abs(const HPReal& a);
  friend HPReal floor(const HPReal& a);
  friend HPReal pow_si(const HPReal& a, long e);
  friend HPReal max(const HPReal& a, const HPReal& b) { return a.cmp(b) >= 0 ? a : b; }
  friend HPReal min(const HPReal& a, const HPReal& b) { return a.cmp(b) <= 0 ? a : b; }

  /// Raw handle for interop (GMP conversions, printf-style formatting).
  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw_mut() { return v_; }

 private:
  static HPReal of_ll(long long v, long prec_bits);
  static HPReal of_ull(unsigned long long v, long prec_bits);

  mpfr_t v_;
};

/// log(log(x)), the iterated logarithm. Requires x > e.
HPReal loglog(const HPReal& x);

}  // namespace mertensk
