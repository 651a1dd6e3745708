#include "mertensk/bernoulli.hpp"

#include <gmpxx.h>

#include <mutex>
#include <stdexcept>
#include <vector>

namespace mertensk {

namespace {

constexpr int kMaxIndex = 256;

// Exact B_0..B_n via sum_{k<=n} C(n+1,k) B_k = 0 (B_1 = -1/2 convention),
// then divided by n!. Built once per process.
std::vector<mpq_class> build_table() {
  std::vector<mpq_class> b(kMaxIndex + 1);
  b[0] = 1;
  mpz_class binom;
  for (int n = 1; n <= kMaxIndex; ++n) {
    mpq_class acc = 0;
    for (int k = 0; k < n; ++k) {
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned>(n) + 1,
                   static_cast<unsigned>(k));
      acc += mpq_class(binom) * b[static_cast<size_t>(k)];
    }
    b[static_cast<size_t>(n)] = -acc / (n + 1);
  }
  mpz_class fact = 1;
  for (int n = 1; n <= kMaxIndex; ++n) {
    fact *= n;
    b[static_cast<size_t>(n)] /= mpq_class(fact);
    b[static_cast<size_t>(n)].canonicalize();
  }
  return b;
}

std::mutex g_mu;

}  // namespace

HPReal bernoulli_over_factorial(int two_r, long prec_bits) {
  if (two_r < 0 || two_r > kMaxIndex)
    throw std::invalid_argument("bernoulli_over_factorial: index out of range");
  std::lock_guard<std::mutex> lock(g_mu);
  static const std::vector<mpq_class> table = build_table();
  const mpq_class& q = table[static_cast<size_t>(two_r)];
  HPReal num(prec_bits), den(prec_bits);
  mpfr_set_z(num.raw_mut(), q.get_num().get_mpz_t(), MPFR_RNDN);
  mpfr_set_z(den.raw_mut(), q.get_den().get_mpz_t(), MPFR_RNDN);
  return num / den;
}

}  // namespace mertensk
