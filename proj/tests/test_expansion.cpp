#include <stdexcept>

#include "doctest.h"
#include "mertensk/expansion.hpp"
#include "mertensk/oracle.hpp"
#include "test_util.hpp"

using namespace mertensk;
using testutil::check_close_exp;

namespace {
constexpr long P = 192;
constexpr long kTol = -(P - 24);

const ConstantsTable& table() {
  static ConstantsTable t(P);
  return t;
}

const ExpansionBuilder& builder() {
  static ExpansionBuilder b(table());
  return b;
}
}  // namespace

TEST_CASE("closed forms: r_j, v_k, t_j") {
  const auto& t = table();
  const auto& eb = builder();
  HPReal a1 = t.alpha(1), a2 = t.alpha(2), a3 = t.alpha(3);
  check_close_exp(eb.r_coeff(1), t.alpha_ja(1, 2), kTol, "r_1");
  check_close_exp(eb.r_coeff(2), t.alpha_ja(2, 2) + a2 + a1 * a1 / 2, kTol, "r_2");
  check_close_exp(eb.r_coeff(3), t.alpha_ja(3, 2) * 4 / 3 + a3 * 3 / 2 + a1 * a2 * 2,
                  kTol, "r_3");
  CHECK(eb.v_coeff(1).is_zero());
  check_close_exp(eb.v_coeff(2), a2 * 6 + a1 * a1 * 3, kTol, "v_2");
  check_close_exp(eb.v_coeff(3), a3 * 9 + a1 * a2 * 12, kTol, "v_3");
  check_close_exp(eb.t_coeff(1), t.alpha_ja(1, 3), kTol, "t_1");
  check_close_exp(eb.t_coeff(2),
                  t.alpha_ja(2, 3) * 3 / 2 -
                      (t.alpha_ja(2, 2) + a1 * t.alpha_ja(1, 2) + a1 * a1 / 2),
                  kTol, "t_2");
  CHECK_THROWS_AS(eb.t_coeff(3), std::invalid_argument);
}

TEST_CASE("S_2 generator: 2 alpha_j coefficients, clean main part") {
  Expansion s2 = builder().generate_sk(2, 5);
  for (int j = 1; j <= 5; ++j)
    check_close_exp(s2.coeff(0, j), table().alpha(j) * 2, kTol, "2 alpha_j");
  Expansion c = s2.recentered(true, table().beta());
  check_close_exp(c.coeff(2, 0), HPReal::of(1LL, P), kTol, "X^2");
  check_close_exp(c.coeff(1, 0), HPReal(P), kTol, "no linear term");
  check_close_exp(c.coeff(0, 0), -table().zeta_value(2), kTol, "-zeta(2)");
  for (int j = 1; j <= 5; ++j)
    CHECK(c.max_llx_pow(j) <= 0);  // no log2x admixture at M >= 1
  CHECK(c.max_llx_pow(0) == 2);    // for S_k the top power at M=0 is k
}

TEST_CASE("S_3 generator and the k=5 display at 1/log x") {
  Expansion s3 = builder().generate_sk(3, 5).recentered(true, table().beta());
  for (int k = 1; k <= 5; ++k) {
    check_close_exp(s3.coeff(1, k), table().alpha(k) * 6, kTol, "6 alpha_k");
    check_close_exp(s3.coeff(0, k), -builder().v_coeff(k), kTol, "-v_k");
  }
  Expansion s5 = builder().generate_sk(5, 1).recentered(true, table().beta());
  HPReal a1 = table().alpha(1);
  check_close_exp(s5.coeff(3, 1), a1 * 20, kTol, "20 a1 X^3");
  check_close_exp(s5.coeff(1, 1), -(a1 * 60 * table().zeta_value(2)), kTol,
                  "-60 a1 z2 X");
  check_close_exp(s5.coeff(0, 1), a1 * 40 * table().zeta_value(3), kTol,
                  "40 a1 z3");
}

TEST_CASE("S_4 displayed terms at 1/log x and 1/log^2 x") {
  Expansion s4 = builder().generate_sk(4, 2).recentered(true, table().beta());
  HPReal a1 = table().alpha(1), a2 = table().alpha(2), z2 = table().zeta_value(2);
  check_close_exp(s4.coeff(2, 1), a1 * 12, kTol, "12 a1");
  check_close_exp(s4.coeff(0, 1), -(a1 * 12 * z2), kTol, "-12 a1 z2");
  check_close_exp(s4.coeff(2, 2), a2 * 12, kTol, "12 a2");
  check_close_exp(s4.coeff(1, 2), -((a1 * a1 + a2 * 2) * 12), kTol,
                  "-12(a1^2+2a2)");
  check_close_exp(s4.coeff(0, 2), a1 * a1 * 12 - a2 * 12 * z2, kTol,
                  "12 a1^2 - 12 a2 z2");
}

TEST_CASE("generator preconditions") {
  CHECK_THROWS_AS(builder().generate_sk(7, 2), std::invalid_argument);
  CHECK_THROWS_AS(builder().generate_sk(2, 9), std::invalid_argument);
  CHECK_THROWS_AS(builder().generate_r4(5), std::invalid_argument);
}

TEST_CASE("dropping the I(0, M>=1) terms changes nothing") {
  Expansion with = builder().generate_sk(3, 4, true);
  Expansion without = builder().generate_sk(3, 4, false);
  for (const auto& [key, c] : with.terms())
    check_close_exp(c, without.coeff(key.first, key.second), kTol, "I(0,M) drop");
  for (const auto& [key, c] : without.terms())
    check_close_exp(c, with.coeff(key.first, key.second), kTol, "I(0,M) drop rev");
}

TEST_CASE("recentering is an exact involution") {
  Expansion s3 = builder().generate_sk(3, 4);
  Expansion back = s3.recentered(true, table().beta()).recentered(false, table().beta());
  for (const auto& [key, c] : s3.terms())
    check_close_exp(back.coeff(key.first, key.second), c, -(P - 16), "involution");
}

TEST_CASE("leading-term and sub-leading checks, k <= 5, M <= 5") {
  for (int k = 2; k <= 5; ++k)
    for (int m = 1; m <= 5; ++m) {
      auto lt = builder().leading_term_check(k, m);
      check_close_exp(lt.generator_lead, lt.closed_lead, kTol, "leading");
      CHECK(lt.has_sub == (k >= 3));
      if (lt.has_sub)
        check_close_exp(lt.generator_sub, lt.closed_sub, kTol, "k-3 coefficient");
    }
}

TEST_CASE("R_3 and R_4 generators reproduce the theorem structure") {
  const auto& eb = builder();
  Expansion r3 = eb.generate_r3(3);
  for (int j = 1; j <= 3; ++j) {
    check_close_exp(r3.coeff(1, j), table().alpha(j), kTol, "alpha_j X");
    check_close_exp(r3.coeff(0, j), -eb.r_coeff(j), kTol, "-r_j");
  }
  check_close_exp(r3.coeff(3, 0), HPReal::of(1LL, P) / 6, kTol, "X^3/6");
  check_close_exp(r3.coeff(1, 0),
                  (table().prime_zeta_value(2) - table().zeta_value(2)) / 2, kTol,
                  "(P2-z2)/2 X");
  check_close_exp(r3.coeff(0, 0),
                  (table().prime_zeta_value(3) + table().zeta_value(3)) / 3, kTol,
                  "(P3+z3)/3");

  Expansion r4 = eb.generate_r4(3);
  check_close_exp(eb.t_from_generator(1, r4), eb.t_coeff(1), kTol, "t_1");
  check_close_exp(eb.t_from_generator(2, r4), eb.t_coeff(2), kTol, "t_2");
  HPReal p2 = table().prime_zeta_value(2), z2 = table().zeta_value(2);
  check_close_exp(r4.coeff(0, 0),
                  table().prime_zeta_value(4) / 4 + table().zeta_value(4) / 16 +
                      p2 * p2 / 8 - p2 * z2 / 4,
                  kTol, "R4 constant block");
  for (int j = 1; j <= 3; ++j)
    check_close_exp(r4.coeff(2, j), table().alpha(j) / 2, kTol, "alpha_j/2");
}

TEST_CASE("generator t_3 sharpens the R_4 fit against the sieve") {
  // no closed form exists for t_3; the generator's value must still improve
  // the truncation against brute force (measured ~100x at x = 1e6)
  Oracle o;
  const uint64_t x = 1'000'000;
  HPReal sieve = o.rk_sieve(4, x).value;
  double r2 = std::abs((sieve - builder().eval_r4(HPReal::of(x, P), 2)).to_double());
  double r3 = std::abs((sieve - builder().eval_r4(HPReal::of(x, P), 3)).to_double());
  CHECK(r3 < r2 / 10);
}

TEST_CASE("t_3 emitted value is stable under precision doubling") {
  ExpansionBuilder eb192(table());
  static ConstantsTable t384(384);
  ExpansionBuilder eb384(t384);
  HPReal t3_lo = eb192.t_from_generator(3, eb192.generate_r4(3));
  HPReal t3_hi = eb384.t_from_generator(3, eb384.generate_r4(3));
  CHECK(abs(t3_lo - t3_hi.rounded_to(P)).to_double() < std::ldexp(1.0, -150));
}

TEST_CASE("eval_R2 equals eval of the S_2 expansion over 2 plus P(2)/2") {
  const auto& eb = builder();
  Expansion s2 = eb.generate_sk(2, 3);
  for (uint64_t x : {100'000ULL, 10'000'000ULL}) {
    HPReal x_hp = HPReal::of(x, P);
    HPReal via_s2 =
        s2.eval(x_hp, table().beta()) / 2 + table().prime_zeta_value(2) / 2;
    check_close_exp(eb.eval_r2(x_hp, 3), via_s2, -(P - 40), "R2 = S2/2 + P(2)/2");
  }
  CHECK_THROWS_AS(eb.eval_r2(HPReal::of(4LL, P), 1), std::invalid_argument);
  CHECK_THROWS_AS(eb.eval_r4(HPReal::of(100LL, P), 4), std::invalid_argument);
}

TEST_CASE("pq_a expansion residual against the oracle shrinks with N") {
  Oracle o;
  for (int a : {2, 3}) {
    HPReal ov = o.pq_a_sum(a, 1'000'000).value;
    double prev = 1e300;
    for (int n = 0; n <= 3; ++n) {
      Expansion e = builder().pq_a_expansion(a, n);
      double r =
          std::abs((ov - e.eval(HPReal::of(1'000'000ULL, P), table().beta())).to_double());
      CHECK(r < prev);
      prev = r;
    }
  }
}

TEST_CASE("growth diagnostics bounded and signed as expected") {
  GrowthReport rep = builder().growth_diagnostics(40);
  CHECK(rep.bounded_on_5_40);
  CHECK(rep.r_rows.front().index == 2);
  for (const auto& row : rep.r_rows) CHECK(row.value > HPReal(P));  // r_j > 0
  for (const auto& row : rep.v_rows)
    if (row.index >= 5) {
      CHECK(row.normalized.to_double() > 0.2);
      CHECK(row.normalized.to_double() < 5.0);
    }
}

TEST_CASE("Expansion container contracts") {
  Expansion e(2, 2, false, P);
  e.add(1, 1, HPReal::of(3LL, P));
  e.add(1, 1, HPReal::of(4LL, P));
  CHECK(e.coeff(1, 1) == HPReal::of(7LL, P));
  CHECK(e.coeff(0, 0).is_zero());
  CHECK_THROWS_AS(e.add(0, 3, HPReal::of(1LL, P)), std::invalid_argument);
  CHECK_THROWS_AS(e.add(-1, 0, HPReal::of(1LL, P)), std::invalid_argument);
}
