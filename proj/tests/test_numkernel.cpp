#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mertensk/hpreal.hpp"
#include "mertensk/power_series.hpp"
#include "mertensk/zeta.hpp"
#include "test_util.hpp"

using namespace mertensk;
using testutil::check_close_exp;

namespace {
constexpr long P = 192;

PowerSeries w_series(int order, long prec) {
  std::vector<HPReal> c(static_cast<size_t>(order) + 1, HPReal(prec));
  c[1] = HPReal::of(1LL, prec);
  return PowerSeries(std::move(c));
}

PowerSeries random_series(int order, long prec, testutil::Lcg& rng) {
  std::vector<HPReal> c;
  c.reserve(static_cast<size_t>(order) + 1);
  for (int i = 0; i <= order; ++i) c.push_back(HPReal::of(rng.sym(), prec));
  return PowerSeries(std::move(c));
}

// Gamma(1+w) series from the log expansion; independent input for tests.
PowerSeries gamma_series(int order, long prec) {
  std::vector<HPReal> a(static_cast<size_t>(order) + 1, HPReal(prec));
  a[1] = -euler_gamma(prec);
  for (int j = 2; j <= order; ++j) {
    HPReal c = zeta_int(j, prec) / j;
    if (j % 2 == 1) c = -c;
    a[static_cast<size_t>(j)] = c;
  }
  return series_exp(PowerSeries(std::move(a)));
}
}  // namespace

TEST_CASE("HPReal basics and precision floor") {
  CHECK_THROWS_AS(HPReal(63), std::invalid_argument);
  HPReal x = HPReal::of(7LL, P);
  CHECK(x.prec() == P);
  CHECK((x / 2).to_double() == doctest::Approx(3.5));
  CHECK(HPReal::parse("0.25", P).to_double() == 0.25);
  CHECK_THROWS_AS(HPReal::parse("zebra", P), std::invalid_argument);
  // result precision is the max of the operands
  HPReal lo = HPReal::of(1LL, 64), hi = HPReal::of(1LL, 256);
  CHECK((lo + hi).prec() == 256);
}

TEST_CASE("HPReal operations are correctly rounded (RNDN)") {
  // recompute at higher precision and round down: must agree bit for bit
  testutil::Lcg rng;
  for (int i = 0; i < 50; ++i) {
    HPReal a = HPReal::of(rng.sym() * 3.0 + 1.5, P);
    HPReal b = HPReal::of(rng.sym() * 3.0 + 1.5, P);
    HPReal q = a / b;
    HPReal q_hi = (a.rounded_to(P + 128) / b.rounded_to(P + 128)).rounded_to(P);
    CHECK(q == q_hi);
    HPReal r = log(abs(a) + 1);
    HPReal r_hi = log(abs(a.rounded_to(P + 128)) + 1).rounded_to(P);
    CHECK(r == r_hi);
  }
}

TEST_CASE("series_mul: difference of squares, identity, exp cancellation") {
  HPReal one = HPReal::of(1LL, P);
  PowerSeries a({HPReal::of(1LL, P), HPReal::of(1LL, P), HPReal(P)});
  PowerSeries b({HPReal::of(1LL, P), -one, HPReal(P)});
  PowerSeries prod = series_mul(a, b);
  CHECK(prod[0] == one);
  CHECK(prod[1].is_zero());
  CHECK(prod[2] == -one);

  testutil::Lcg rng;
  PowerSeries r = random_series(6, P, rng);
  PowerSeries ident = series_mul(r, PowerSeries::one(6, P));
  for (int i = 0; i <= 6; ++i) CHECK(ident[i] == r[i]);

  PowerSeries w = w_series(20, P);
  PowerSeries cancel = series_mul(series_exp(w), series_exp(w.negated()));
  check_close_exp(cancel[0], one, -(P - 8), "exp*exp(-) const");
  for (int i = 1; i <= 20; ++i)
    check_close_exp(cancel[i], HPReal(P), -(P - 8), "exp*exp(-) tail");

  CHECK_THROWS_AS(series_mul(w, w.truncated(10)), std::invalid_argument);
}

TEST_CASE("series_exp: exponential coefficients, zero, Gamma(1.5)") {
  PowerSeries e = series_exp(w_series(4, P));
  CHECK(e[0] == HPReal::of(1LL, P));
  CHECK(e[1] == HPReal::of(1LL, P));
  check_close_exp(e[2], HPReal::of(1LL, P) / 2, -(P - 4), "1/2");
  check_close_exp(e[3], HPReal::of(1LL, P) / 6, -(P - 4), "1/6");
  check_close_exp(e[4], HPReal::of(1LL, P) / 24, -(P - 4), "1/24");

  PowerSeries z = series_exp(PowerSeries::zero(5, P));
  CHECK(z[0] == HPReal::of(1LL, P));
  for (int i = 1; i <= 5; ++i) CHECK(z[i].is_zero());

  CHECK_THROWS_AS(series_exp(PowerSeries::one(3, P)), std::invalid_argument);

  // Gamma(1+w) at w = 1/2 against Gamma(1.5) = sqrt(pi)/2, truncation-limited
  PowerSeries g = gamma_series(40, P);
  HPReal at_half = series_eval(g, HPReal::of(0.5, P));
  HPReal ref = sqrt(HPReal::pi(P)) / 2;
  testutil::check_close_abs(at_half, ref, 1e-11, "Gamma(1.5) series");
  testutil::check_close_abs(1 / at_half, 2 / sqrt(HPReal::pi(P)), 1e-11,
                            "1/Gamma(1.5)");
}

TEST_CASE("series_div: self, geometric, log derivative") {
  testutil::Lcg rng;
  PowerSeries a = random_series(8, P, rng);
  if (a[0].is_zero()) a = series_mul(a, a);  // avoid zero constant (unlikely)
  PowerSeries q = series_div(a, a);
  CHECK(q[0] == HPReal::of(1LL, P));
  for (int i = 1; i <= 8; ++i) check_close_exp(q[i], HPReal(P), -(P - 16), "a/a");

  PowerSeries one_minus_w({HPReal::of(1LL, P), HPReal::of(-1LL, P), HPReal(P),
                           HPReal(P)});
  PowerSeries geo = series_div(PowerSeries::one(3, P), one_minus_w);
  for (int i = 0; i <= 3; ++i) CHECK(geo[i] == HPReal::of(1LL, P));

  // d/dw log(1/(1-w)) = 1/(1-w): deriv(A)/A = (1,1,1,...) for A = 1/(1-w)
  PowerSeries big_geo = series_div(PowerSeries::one(8, P),
                                   [&] {
                                     std::vector<HPReal> c(9, HPReal(P));
                                     c[0] = HPReal::of(1LL, P);
                                     c[1] = HPReal::of(-1LL, P);
                                     return PowerSeries(std::move(c));
                                   }());
  PowerSeries logderiv = series_div(series_deriv(big_geo), big_geo.truncated(7));
  for (int i = 0; i <= 7; ++i)
    check_close_exp(logderiv[i], HPReal::of(1LL, P), -(P - 16), "log deriv");

  CHECK_THROWS_AS(series_div(PowerSeries::one(3, P), PowerSeries::zero(3, P)),
                  std::invalid_argument);
}

TEST_CASE("series_deriv: shapes and exp consistency") {
  PowerSeries c({HPReal::of(5LL, P)});
  PowerSeries dc = series_deriv(c);
  CHECK(dc.order() == 0);
  CHECK(dc[0].is_zero());

  PowerSeries s({HPReal(P), HPReal::of(1LL, P), HPReal::of(1LL, P)});
  PowerSeries ds = series_deriv(s);
  CHECK(ds.order() == 1);
  CHECK(ds[0] == HPReal::of(1LL, P));
  CHECK(ds[1] == HPReal::of(2LL, P));

  // deriv(exp a) = a' exp(a)
  testutil::Lcg rng;
  PowerSeries a = random_series(10, P, rng);
  std::vector<HPReal> a0 = a.coeffs();
  a0[0] = HPReal(P);
  PowerSeries az(std::move(a0));
  PowerSeries lhs = series_deriv(series_exp(az));
  PowerSeries rhs = series_mul(series_deriv(az), series_exp(az).truncated(9));
  for (int i = 0; i <= 9; ++i) check_close_exp(lhs[i], rhs[i], -(P - 16), "exp'");
}

TEST_CASE("ring associativity within rounding (property)") {
  testutil::Lcg rng;
  for (int round = 0; round < 8; ++round) {
    PowerSeries a = random_series(12, P, rng);
    PowerSeries b = random_series(12, P, rng);
    PowerSeries c = random_series(12, P, rng);
    PowerSeries lhs = series_mul(series_mul(a, b), c);
    PowerSeries rhs = series_mul(a, series_mul(b, c));
    for (int i = 0; i <= 12; ++i)
      check_close_exp(lhs[i], rhs[i], -(P - 16), "assoc");
  }
}

TEST_CASE("exp/div roundtrip: 1/exp(a) = exp(-a)") {
  testutil::Lcg rng;
  for (int round = 0; round < 4; ++round) {
    PowerSeries a = random_series(16, P, rng);
    std::vector<HPReal> c = a.coeffs();
    c[0] = HPReal(P);
    PowerSeries az(std::move(c));
    PowerSeries lhs = series_div(PowerSeries::one(16, P), series_exp(az));
    PowerSeries rhs = series_exp(az.negated());
    for (int i = 0; i <= 16; ++i)
      check_close_exp(lhs[i], rhs[i], -(P - 16), "1/exp");
  }
}

TEST_CASE("truncated evaluation tail bound at |w| <= 1/4 (property)") {
  testutil::Lcg rng;
  for (int round = 0; round < 6; ++round) {
    PowerSeries s = random_series(24, P, rng);  // coefficients bounded by 1
    HPReal w = HPReal::of(rng.sym() / 4.0, P);
    HPReal full = series_eval(s, w);
    HPReal trunc = series_eval(s.truncated(16), w);
    // coefficients bounded by 1: tail <= |w|^17/(1-|w|)
    HPReal bound = pow_si(abs(w), 17) / (1 - abs(w)) + HPReal::pow2(-P + 32, P);
    CHECK(abs(full - trunc) <= bound);
  }
}
