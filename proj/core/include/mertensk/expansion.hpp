#pragma once

#include <map>
#include <utility>
#include <vector>

#include "mertensk/constants.hpp"
#include "mertensk/hpreal.hpp"

namespace mertensk {

/// Finite sum of terms c * B^b / (log x)^M where B is either log2(x)
/// (= log log x) or the shifted variable log2(x) + beta.
class Expansion {
 public:
  Expansion(int k, int n_trunc, bool centered_on_beta, long prec_bits)
      : k_(k), n_(n_trunc), centered_(centered_on_beta), prec_(prec_bits) {}

  int k() const { return k_; }
  int truncation() const { return n_; }
  bool centered_on_beta() const { return centered_; }
  long prec() const { return prec_; }

  void add(int llx_pow, int lx_pow, const HPReal& c);
  /// Zero when the (b, M) pair is absent.
  HPReal coeff(int llx_pow, int lx_pow) const;
  const std::map<std::pair<int, int>, HPReal>& terms() const { return terms_; }
  int max_llx_pow(int lx_pow) const;

  /// Exact binomial change of variable between log2 x and log2 x + beta.
  Expansion recentered(bool on_beta, const HPReal& beta) const;

  Expansion scaled(const HPReal& factor) const;
  Expansion& operator+=(const Expansion& o);

  HPReal eval(const HPReal& x, const HPReal& beta) const;

 private:
  int k_;
  int n_;
  bool centered_;
  long prec_;
  std::map<std::pair<int, int>, HPReal> terms_;  // (b, M) -> coeff
};

struct LeadingTermCheck {
  HPReal generator_lead;   // coeff of (log2 x)^(k-2) / log^M x
  HPReal closed_lead;      // k(k-1) alpha_M
  HPReal generator_sub;    // coeff of (log2 x)^(k-3) / log^M x
  HPReal closed_sub;       // k(k-1)(k-2)(alpha_M(beta - H_{M-1}) - ...)
  bool has_sub = false;    // false for k < 3
};

struct GrowthReport {
  struct Row {
    int index;
    HPReal value;       // r_j or v_k
    HPReal normalized;  // r_j/(1.5 a_j log j) resp. v_k/(9 a_k log k)
  };
  std::vector<Row> r_rows;  // j >= 2
  std::vector<Row> v_rows;  // k >= 2
  bool bounded_on_5_40 = true;  // normalized values within [0.2, 5] there
};

/// Builders for the fine-scale expansions of S_k and R_k, all coefficients
/// numeric HPReal drawn from a shared ConstantsTable. Identities between the
/// generator and the closed forms are equalities up to assembly rounding.
class ExpansionBuilder {
 public:
  explicit ExpansionBuilder(const ConstantsTable& table);

  const ConstantsTable& table() const { return table_; }

  /// r_j = 2^(j-1) alpha_{j,2}/j + sum_{i<j} (alpha_j/i + i C(j-1,i) alpha_i alpha_{j-i}/2)
  HPReal r_coeff(int j) const;
  /// v_k = 3 sum_{j<k} (2 alpha_k/j + j C(k-1,j) alpha_j alpha_{k-j})
  HPReal v_coeff(int k) const;
  /// t_1 and t_2 closed forms; throws for j >= 3 (generator route only).
  HPReal t_coeff(int j) const;
  /// t_j read off generate_r4 (valid through its truncation order).
  HPReal t_from_generator(int j, const Expansion& r4) const;

  /// Hankel/multinomial generator for S_k: enumerates the compositions
  /// k = m + k_0 + ... + k_N with M = sum i k_i <= N and assembles
  /// I(m, M, x) from the 1/Gamma jets. Output in plain log2(x) powers.
  /// include_i0_terms keeps the exact-zero I(0, M>=1) contributions (they
  /// change nothing; the flag exists to test that).
  Expansion generate_sk(int k, int n_trunc, bool include_i0_terms = false) const;

  /// Full R_4 expansion: S_4/24 + 6/24 p^2qr + 3/24 p^2q^2 + 8/24 p^3q
  /// + 6/24 p^4, beta-centered.
  Expansion generate_r4(int n_trunc) const;
  /// Same assembly for R_3 (S_3/6 + pq^2/2 + P(3)/3), for cross-checks.
  Expansion generate_r3(int n_trunc) const;

  /// Expansion of sum_{p q^a <= x} 1/(p q^a): P(a)(log2 x + beta) minus
  /// sum_j a^j alpha_{j,a} / (j log^j x). Beta-centered.
  Expansion pq_a_expansion(int a, int n_trunc) const;

  LeadingTermCheck leading_term_check(int k, int m) const;

  HPReal eval_r2(const HPReal& x, int n_trunc) const;
  HPReal eval_r3(const HPReal& x, int n_trunc) const;
  HPReal eval_r4(const HPReal& x, int n_trunc) const;

  GrowthReport growth_diagnostics(int j_max = 40) const;

 private:
  HPReal h_deriv(int i) const;  // h(0) = beta-gamma, h^(i)(0) = (-1)^(i-1) i alpha_i
  HPReal inv_gamma_deriv(int n, int m) const;  // (1/Gamma)^(n)(1-M), M >= 0

  const ConstantsTable& table_;
  long wp_;
};

}  // namespace mertensk
