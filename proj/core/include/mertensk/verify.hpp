#pragma once

#include <string>
#include <vector>

#include "mertensk/constants.hpp"
#include "mertensk/expansion.hpp"
#include "mertensk/oracle.hpp"

namespace mertensk::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

/// The 26-row reference for alpha_j/(j! 2^j/(2 j^2)); published truncated to
/// six decimals, so comparisons truncate computed values the same way.
extern const double kRatioReference[27];  // index j = 1..26

/// Ratio table reproduction: truncated six-decimal agreement per row.
std::vector<CheckResult> ratio_table_suite(const ConstantsTable& table, int j_max,
                                           double tol);

/// alpha_1 and beta against their printed digits.
std::vector<CheckResult> named_constants_suite(const ConstantsTable& table);

/// Generator vs closed forms: S_2/S_3/S_4 coefficients, v_k, R_4 t_1/t_2,
/// leading and (log2 x)^(k-3) extractions for k <= 5, M <= m_max.
std::vector<CheckResult> generator_identity_suite(const ConstantsTable& table,
                                                  int m_max, long tol_exp);

/// |rk_sieve - eval_Rk| decreasing in N and in x, plus the C/log^(N+1)x
/// envelope within a spread factor.
std::vector<CheckResult> sieve_convergence_suite(const ConstantsTable& table,
                                                 Oracle& oracle, bool quick,
                                                 double envelope_spread = 10.0);

/// Exact finite-x decompositions: R_3 three-sum and R_4 five-sum.
std::vector<CheckResult> decomposition_suite(Oracle& oracle, double tol, bool quick);

/// Polylogarithm bounds: ratio bound, integral sandwich, Stirling sandwich.
std::vector<CheckResult> polylog_bound_checks(int k_max, long prec_bits);

/// 1/Gamma derivative closed forms vs series jets for M = 1..12.
std::vector<CheckResult> gamma_suite(long prec_bits, long tol_exp);

/// Geometric decay of the eta partial sums against directly-evaluated g,
/// and eta_0 + gamma = 0.
std::vector<CheckResult> eta_suite(const ConstantsTable& table);

/// pq^a oracle vs truncated expansion, residual shrinking in N, a in {2,3}.
std::vector<CheckResult> pq_a_suite(const ConstantsTable& table, Oracle& oracle,
                                    bool quick);

/// Sub-checks that fail for documented mathematical reasons at the pinned
/// grids (sign crossings / turnovers of the true remainders; see the repo
/// docs). Reported as expected failures, not counted against the suite.
bool is_documented_deviation(const std::string& check_name);

}  // namespace mertensk::verify
