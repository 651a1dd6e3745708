#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "mertensk/polylog.hpp"
#include "test_util.hpp"

using namespace mertensk;
using testutil::check_close_exp;

namespace {
constexpr long P = 192;
}

TEST_CASE("li_neg closed values and domain") {
  HPReal half = HPReal::of(0.5, P);
  CHECK(li_neg(0, half, P) == HPReal::of(1LL, P));
  CHECK(li_neg(1, half, P) == HPReal::of(2LL, P));
  CHECK(li_neg(2, half, P) == HPReal::of(6LL, P));
  CHECK(li_neg(3, half, P) == HPReal::of(26LL, P));
  CHECK_THROWS_AS(li_neg(1, HPReal::of(1LL, P), P), std::domain_error);
  CHECK_THROWS_AS(li_neg(1, HPReal::of(-0.5, P), P), std::domain_error);
  CHECK_THROWS_AS(li_neg(401, half, P), std::invalid_argument);
}

TEST_CASE("li_neg vs direct series at k = 10, z = 1/3") {
  const long wp = P + 64;
  HPReal z = HPReal::of(1LL, wp) / 3;
  HPReal direct(wp);
  for (int n = 1; n <= 400; ++n)
    direct += pow_si(HPReal::of(static_cast<long long>(n), wp), 10) * pow_si(z, n);
  check_close_exp(li_neg(10, z, P), direct.rounded_to(P), -(P - 16), "series");
}

TEST_CASE("i_integral closed form and recurrence") {
  HPReal two = HPReal::of(2LL, P);
  check_close_exp(i_integral(0, two, P), 1 / (two * log(two)), -(P - 8), "I(0,2)");
  for (int k = 1; k <= 20; ++k) {
    HPReal lhs = i_integral(k, two, P);
    HPReal rhs = 1 / (two * log(two)) + i_integral(k - 1, two, P) * k / log(two);
    testutil::check_close_rel(lhs, rhs, -(P - 40), "recurrence");
  }
  CHECK_THROWS_AS(i_integral(3, HPReal::of(1LL, P), P), std::domain_error);
}

TEST_CASE("ratio bound spot check at k = 25, x = 2") {
  NegPolyEval e = neg_poly_eval(25, HPReal::of(2LL, P), P);
  HPReal bound = HPReal::of(2LL, P) / sqrt(HPReal::pi(P) * 2 * 25);
  CHECK(abs(e.ratio - 1) < bound);
  CHECK(e.li_value > HPReal(P));
  CHECK(e.i_value > HPReal(P));
}

TEST_CASE("Stirling sandwich endpoints at k = 1") {
  // 1 <= e/sqrt(2 pi) <= e^(1/12)
  HPReal e1 = exp(HPReal::of(1LL, P));
  HPReal mid = e1 / sqrt(HPReal::pi(P) * 2);
  CHECK(HPReal::of(1LL, P) <= mid);
  CHECK(mid <= exp(HPReal::of(1LL, P) / 12));
}

TEST_CASE("full bound suite on the default grid") {
  PolylogBoundReport rep = polylog_bound_suite(200, P);
  CHECK(rep.ratio_ok);
  CHECK(rep.sandwich_ok);
  CHECK(rep.stirling_ok);
  CHECK(rep.monotone_tail_ok);
  CHECK(rep.li_bound_constant > 0);
  CHECK(std::isfinite(rep.li_bound_constant));
  CHECK(rep.ratio_rows.size() == 5 * 200);
  for (const auto& row : rep.ratio_rows) CHECK(row.ok);
}

TEST_CASE("li_neg grows in k for z >= 1/2 on the grid") {
  for (double zd : {0.5, 0.6, 0.75, 0.9}) {
    HPReal z = HPReal::of(zd, P);
    HPReal prev = li_neg(0, z, P);
    for (int k = 1; k <= 40; ++k) {
      HPReal cur = li_neg(k, z, P);
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}
