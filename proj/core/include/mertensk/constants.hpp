#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "mertensk/hpreal.hpp"
#include "mertensk/prime_store.hpp"
#include "mertensk/zeta.hpp"

namespace mertensk {

struct ValueWithBudget {
  HPReal value;
  HPReal budget;   // engineering bound on |true - value|, always > 0
  bool flagged = false;  // set when the budget exceeded the requested accuracy
};

/// Exact C(n, k) as HPReal.
HPReal binom_hp(unsigned long n, unsigned long k, long prec_bits);

/// Memoized table of the constants family: gamma, beta, zeta(n), P(a),
/// eta_j, alpha_{j,a}, alpha_j. Built lazily behind a mutex; reads are
/// values, so the table can be shared across threads.
///
/// alpha_{j,a} uses the derivative identity alpha_{j,a} = (-1)^j P^(j)(a)
/// with P^(j) expanded by Moebius inversion over log-zeta jets; that is the
/// route that stays accurate for large j, where the defining prime sum
/// converges far too slowly to be computed directly. The prime-sum form
/// (with its Chebyshev tail bound) is kept as alpha_ja_prime_sum for
/// cross-checks at small j.
class ConstantsTable {
 public:
  static constexpr int kJMax = 40;

  explicit ConstantsTable(long prec_bits = 192);

  long prec() const { return prec_; }
  const HPReal& gamma() const { return gamma_; }
  const HPReal& beta() const { return beta_; }
  const EtaTable& eta() const { return eta_; }
  HPReal zeta_value(int n) const;
  HPReal prime_zeta_value(int a) const;

  /// alpha_{j,a} = sum_p log^j(p)/p^a for j >= 0, a >= 2 (series route).
  HPReal alpha_ja(int j, int a) const;
  /// alpha_{j,1} := -j alpha_j, the convention extending the family.
  HPReal alpha_j1(int j) const;

  /// alpha_j from the eta decomposition
  ///   alpha_j = (1/j) (sum_{k>=2} k^(j-1) alpha_{j,k} + (-1)^j (j-1)! eta_{j-1}).
  HPReal alpha(int j) const;

  /// d_{j,k} with alpha_{j,k} = P(k) log^j(2) + j d_{j,k}.
  HPReal d_jk(int j, int k) const;

  /// alpha_j / (j! 2^j / (2 j^2)).
  HPReal ratio(int j) const;
  std::vector<std::pair<int, HPReal>> ratio_table(int j_max) const;

  /// Report-only transform (ratio_j - 1) * (4/3)^j for j in [j_lo, j_hi].
  std::vector<std::pair<int, HPReal>> rh_refinement_diagnostic(int j_lo,
                                                               int j_hi) const;

  /// Engineering budget for a stored value; keys like "alpha_26",
  /// "alpha_ja_3_2", "beta". Unknown keys get the generic rounding floor.
  HPReal budget(const std::string& key) const;

  /// Convergent-sum route for alpha_j: gamma log^{j-1}(2) plus the
  /// sum over log^j p/(p(p-1)) plus the E-bar integral, all over sieved
  /// primes up to plimit. Quadrature-limited; the budget says how far to
  /// trust it and `flagged` is set when it exceeds tol.
  ValueWithBudget alpha_via_convergent_formula(int j, uint64_t plimit,
                                               double tol = 1e-4) const;

  /// Defining prime sum cut at plimit, with the tail bounded by
  /// pi(t) <= 1.3 t/log t integrated beyond the cutoff (doubled). Throws
  /// std::runtime_error naming a sufficient plimit when the tail bound
  /// exceeds tol. Requires that log^j(t)/t^a is decreasing past plimit.
  static ValueWithBudget alpha_ja_prime_sum(int j, int a, uint64_t plimit,
                                            long prec_bits, double tol);

  /// beta = gamma + sum_p (1/p + log(1 - 1/p)) evaluated term-by-term over
  /// sieved primes; test oracle for the P-series route used by beta().
  static ValueWithBudget beta_prime_sum(uint64_t plimit, long prec_bits);

 private:
  HPReal alpha_ja_unlocked(int j, int a) const;
  HPReal alpha_unlocked(int j) const;

  long prec_;
  long wp_;  // working precision for assembly
  HPReal gamma_;
  HPReal beta_;
  EtaTable eta_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, HPReal> alpha_ja_cache_;
  mutable std::map<int, HPReal> alpha_cache_;
  mutable std::map<std::string, HPReal> budgets_;
};

}  // namespace mertensk
