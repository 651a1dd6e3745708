#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>

#include "doctest.h"
#include "mertensk/prime_store.hpp"
#include "test_util.hpp"

using namespace mertensk;

namespace {

// independent naive sieve for cross-checks
std::vector<uint64_t> naive_primes(uint64_t limit) {
  std::vector<uint64_t> out;
  for (uint64_t n = 2; n <= limit; ++n) {
    bool prime = true;
    for (uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) {
        prime = false;
        break;
      }
    if (prime) out.push_back(n);
  }
  return out;
}

int omega_by_trial_division(uint64_t n) {
  int w = 0;
  for (uint64_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      n /= p;
      ++w;
    }
  if (n > 1) ++w;
  return w;
}

std::filesystem::path temp_dir(const char* tag) {
  auto d = std::filesystem::temp_directory_path() /
           (std::string("mertensk_test_") + tag);
  std::filesystem::remove_all(d);
  std::filesystem::create_directories(d);
  return d;
}

}  // namespace

TEST_CASE("primes_up_to basics") {
  CHECK(primes_up_to(1).empty());
  CHECK(primes_up_to(10) == std::vector<uint64_t>{2, 3, 5, 7});
  auto ref = naive_primes(3000);
  CHECK(primes_up_to(3000) == ref);
}

TEST_CASE("pi(10^6) and pi(10^8) counts") {
  uint64_t count6 = 0;
  for_each_prime(1'000'000, [&](uint64_t) { ++count6; });
  CHECK(count6 == 78498);

  uint64_t count8 = 0;
  for_each_prime(100'000'000, [&](uint64_t) { ++count8; });
  CHECK(count8 == 5761455);
}

TEST_CASE("segmented enumeration agrees with monolithic on an offset window") {
  std::vector<uint64_t> seg;
  for_each_prime_in(1'000'000, 1'100'000, [&](uint64_t p) { seg.push_back(p); });
  auto all = primes_up_to(1'100'000 - 1);
  std::vector<uint64_t> ref;
  for (uint64_t p : all)
    if (p >= 1'000'000) ref.push_back(p);
  CHECK(seg == ref);
}

TEST_CASE("omega sieve spot values and histogram vs trial division") {
  OmegaBlock blk = omega_sieve(2, 10'001);
  CHECK(blk.omega[12 - 2] == 3);
  CHECK(blk.omega[49 - 2] == 2);
  CHECK(blk.omega[64 - 2] == 6);
  for (uint64_t n = 2; n <= 10'000; ++n)
    REQUIRE(blk.omega[n - 2] == omega_by_trial_division(n));
  CHECK_THROWS_AS(omega_sieve(5, 5), std::invalid_argument);
}

TEST_CASE("count of Omega(n) = 1 up to x equals pi(x)") {
  const uint64_t x = 100'000;
  OmegaBlock blk = omega_sieve(2, x + 1);
  uint64_t singles = 0;
  for (auto w : blk.omega)
    if (w == 1) ++singles;
  uint64_t pi_x = 0;
  for_each_prime(x, [&](uint64_t) { ++pi_x; });
  CHECK(singles == pi_x);
}

TEST_CASE("PrimeStore prefix queries") {
  PrimeStore::Options o;
  o.limit = 2'000'000;
  o.prec_bits = 192;
  PrimeStore st = PrimeStore::build_or_load(o);

  HPReal want = HPReal::of(1LL, 192) / 2 + HPReal::of(1LL, 192) / 3 +
                HPReal::of(1LL, 192) / 5 + HPReal::of(1LL, 192) / 7;
  CHECK(abs(st.mertens_prefix(10) - want).to_double() < 1e-28);
  CHECK(st.mertens_prefix(2).to_double() == 0.5);
  CHECK(st.mertens_prefix(1).is_zero());
  CHECK(st.limit() % PrimeStore::kSpacing == 0);  // spacing divides the limit
  CHECK_THROWS_AS(st.mertens_prefix(st.limit() + 1), std::out_of_range);

  // monotone, jumping exactly at primes
  HPReal prev = st.mertens_prefix(99);
  for (uint64_t x = 100; x <= 130; ++x) {
    HPReal cur = st.mertens_prefix(x);
    CHECK(cur >= prev);
    bool is_prime = !primes_up_to(x).empty() && primes_up_to(x).back() == x;
    if (is_prime)
      CHECK(abs(cur - prev - 1 / HPReal::of(x, 192)).to_double() < 1e-25);
    else
      CHECK(cur == prev);
    prev = cur;
  }

  // logpow: j = 0 reduction, j = 2 direct sum over the 25 primes <= 100
  CHECK(st.logpow_prefix(0, 1000) == st.mertens_prefix(1000));
  double direct = 0;
  for (uint64_t p : primes_up_to(100)) {
    double lp = std::log(static_cast<double>(p));
    direct += lp * lp / static_cast<double>(p);
  }
  CHECK(std::abs(st.logpow_prefix(2, 100).to_double() - direct) < 1e-12);
  CHECK_THROWS_AS(st.logpow_prefix(5, 100), std::invalid_argument);
  CHECK(st.budget(0, 1'000'000).to_double() > 0);
}

TEST_CASE("PrimeStore cache round trip is bit identical") {
  auto dir = temp_dir("cache");
  PrimeStore::Options o;
  o.limit = 1'500'000;
  o.prec_bits = 192;
  o.cache_dir = dir;
  PrimeStore fresh = PrimeStore::build_or_load(o);
  PrimeStore reloaded = PrimeStore::build_or_load(o);
  for (int j = 0; j <= PrimeStore::kLogPowMax; ++j) {
    const auto& a = fresh.checkpoints(j);
    const auto& b = reloaded.checkpoints(j);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].hi == b[i].hi);
      CHECK(a[i].lo == b[i].lo);
    }
  }
  // manifest sidecar exists
  bool manifest = false;
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().string().find("manifest") != std::string::npos) manifest = true;
  CHECK(manifest);

  // corrupt one table: the store must rebuild and still answer correctly
  for (const auto& e : std::filesystem::directory_iterator(dir))
    if (e.path().extension() == ".bin") {
      std::ofstream f(e.path(), std::ios::binary | std::ios::trunc);
      f << "garbage";
      break;
    }
  PrimeStore rebuilt = PrimeStore::build_or_load(o);
  CHECK(abs(rebuilt.mertens_prefix(1000) - fresh.mertens_prefix(1000)).to_double() <
        1e-28);
  std::filesystem::remove_all(dir);
}

TEST_CASE("PrimeStore determinism across worker counts") {
  PrimeStore::Options one;
  one.limit = 3'000'000;
  one.workers = 1;
  PrimeStore a = PrimeStore::build_or_load(one);
  PrimeStore::Options four = one;
  four.workers = 4;
  PrimeStore b = PrimeStore::build_or_load(four);
  for (int j = 0; j <= PrimeStore::kLogPowMax; ++j) {
    const auto& ca = a.checkpoints(j);
    const auto& cb = b.checkpoints(j);
    REQUIRE(ca.size() == cb.size());
    for (size_t i = 0; i < ca.size(); ++i) {
      CHECK(ca[i].hi == cb[i].hi);
      CHECK(ca[i].lo == cb[i].lo);
    }
  }
  PrimeStore::Options tiny;
  tiny.limit = 100;
  CHECK_THROWS_AS(PrimeStore::build_or_load(tiny), std::invalid_argument);
}
