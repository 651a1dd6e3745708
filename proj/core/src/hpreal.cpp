#include "mertensk/hpreal.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace mertensk {

namespace {
long checked_prec(long prec_bits) {
  if (prec_bits < HPReal::kMinPrec)
    throw std::invalid_argument("HPReal: prec_bits must be >= 64, got " +
                                std::to_string(prec_bits));
  return prec_bits;
}
}  // namespace

HPReal::HPReal(long prec_bits) {
  mpfr_init2(v_, checked_prec(prec_bits));
  mpfr_set_zero(v_, 1);
}

HPReal::HPReal(const HPReal& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

HPReal::HPReal(HPReal&& o) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, o.v_);
}

HPReal& HPReal::operator=(const HPReal& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}

HPReal& HPReal::operator=(HPReal&& o) noexcept {
  mpfr_swap(v_, o.v_);
  return *this;
}

HPReal::~HPReal() { mpfr_clear(v_); }

HPReal HPReal::of_ll(long long v, long prec_bits) {
  HPReal r(prec_bits);
  mpfr_set_sj(r.v_, v, MPFR_RNDN);
  return r;
}

HPReal HPReal::of_ull(unsigned long long v, long prec_bits) {
  HPReal r(prec_bits);
  mpfr_set_uj(r.v_, v, MPFR_RNDN);
  return r;
}

HPReal HPReal::of(double v, long prec_bits) {
  HPReal r(prec_bits);
  mpfr_set_d(r.v_, v, MPFR_RNDN);
  return r;
}

HPReal HPReal::parse(std::string_view decimal, long prec_bits) {
  HPReal r(prec_bits);
  std::string s(decimal);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
    throw std::invalid_argument("HPReal::parse: bad literal '" + s + "'");
  return r;
}

HPReal HPReal::pi(long prec_bits) {
  HPReal r(prec_bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

HPReal HPReal::euler_oracle(long prec_bits) {
  HPReal r(prec_bits);
  mpfr_const_euler(r.v_, MPFR_RNDN);
  return r;
}

HPReal HPReal::pow2(long e, long prec_bits) {
  HPReal r(prec_bits);
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

HPReal HPReal::rounded_to(long prec_bits) const {
  HPReal r(checked_prec(prec_bits));
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string HPReal::str(int digits) const {
  std::vector<char> buf(static_cast<size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

namespace {
inline long join_prec(const HPReal& a, const HPReal& b) {
  return std::max(a.prec(), b.prec());
}
}  // namespace

HPReal& HPReal::operator+=(const HPReal& o) { return *this = *this + o; }
HPReal& HPReal::operator-=(const HPReal& o) { return *this = *this - o; }
HPReal& HPReal::operator*=(const HPReal& o) { return *this = *this * o; }
HPReal& HPReal::operator/=(const HPReal& o) { return *this = *this / o; }

HPReal operator+(const HPReal& a, const HPReal& b) {
  HPReal r(join_prec(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

HPReal operator-(const HPReal& a, const HPReal& b) {
  HPReal r(join_prec(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

HPReal operator*(const HPReal& a, const HPReal& b) {
  HPReal r(join_prec(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

HPReal operator/(const HPReal& a, const HPReal& b) {
  HPReal r(join_prec(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

HPReal operator-(const HPReal& a) {
  HPReal r(a.prec());
  mpfr_neg(r.v_, a.v_, MPFR_RNDN);
  return r;
}

HPReal operator*(const HPReal& a, long b) {
  HPReal r(a.prec());
  mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

HPReal operator/(const HPReal& a, long b) {
  HPReal r(a.prec());
  mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

HPReal operator/(long a, const HPReal& b) {
  HPReal r(b.prec());
  mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}

HPReal operator+(const HPReal& a, long b) {
  HPReal r(a.prec());
  mpfr_add_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

HPReal operator-(const HPReal& a, long b) {
  HPReal r(a.prec());
  mpfr_sub_si(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

HPReal operator-(long a, const HPReal& b) {
  HPReal r(b.prec());
  mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}

HPReal sqrt(const HPReal& a) {
  HPReal r(a.prec());
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}

HPReal log(const HPReal& a) {
  HPReal r(a.prec());
  mpfr_log(r.v_, a.v_, MPFR_RNDN);
  return r;
}

HPReal log1p(const HPReal& a) {
  HPReal r(a.prec());
  mpfr_log1p(r.v_, a.v_, MPFR_RNDN);
  return r;
}

HPReal exp(const HPReal& a) {
  HPReal r(a.prec());
  mpfr_exp(r.v_, a.v_, MPFR_RNDN);
  return r;
}

HPReal abs(const HPReal& a) {
  HPReal r(a.prec());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}

HPReal floor(const HPReal& a) {
  HPReal r(a.prec());
  mpfr_floor(r.v_, a.v_);
  return r;
}

HPReal pow_si(const HPReal& a, long e) {
  HPReal r(a.prec());
  mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
  return r;
}

HPReal loglog(const HPReal& x) { return log(log(x)); }

}  // namespace mertensk
