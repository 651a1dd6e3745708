#include "mertensk/expansion.hpp"

#include <cmath>
#include <stdexcept>

#include "mertensk/gamma_jet.hpp"

namespace mertensk {

void Expansion::add(int llx_pow, int lx_pow, const HPReal& c) {
  if (llx_pow < 0 || lx_pow < 0)
    throw std::invalid_argument("Expansion::add: negative powers");
  if (lx_pow > n_)
    throw std::invalid_argument("Expansion::add: lx_pow beyond truncation");
  auto key = std::make_pair(llx_pow, lx_pow);
  auto it = terms_.find(key);
  if (it == terms_.end())
    terms_.emplace(key, c);
  else
    it->second += c;
}

HPReal Expansion::coeff(int llx_pow, int lx_pow) const {
  auto it = terms_.find({llx_pow, lx_pow});
  if (it == terms_.end()) return HPReal(prec_);
  return it->second;
}

int Expansion::max_llx_pow(int lx_pow) const {
  int best = -1;
  for (const auto& [key, c] : terms_)
    if (key.second == lx_pow && !c.is_zero()) best = std::max(best, key.first);
  return best;
}

Expansion Expansion::recentered(bool on_beta, const HPReal& beta) const {
  if (on_beta == centered_) return *this;
  // B_new = B_old -/+ beta; substitute B_old^b = sum_{b'} C(b,b') shift^(b-b') B_new^b'
  const HPReal shift = on_beta ? -beta : beta;  // log2x = (log2x+beta) - beta
  Expansion out(k_, n_, on_beta, prec_);
  for (const auto& [key, c] : terms_) {
    auto [b, m] = key;
    HPReal pw = HPReal::of(1LL, c.prec());
    for (int bp = b; bp >= 0; --bp) {
      out.add(bp, m, c * binom_hp(static_cast<unsigned long>(b),
                                  static_cast<unsigned long>(bp), c.prec()) *
                         pw);
      pw *= shift;
    }
  }
  return out;
}

Expansion Expansion::scaled(const HPReal& factor) const {
  Expansion out(k_, n_, centered_, prec_);
  for (const auto& [key, c] : terms_) out.add(key.first, key.second, c * factor);
  return out;
}

Expansion& Expansion::operator+=(const Expansion& o) {
  if (o.centered_ != centered_)
    throw std::invalid_argument("Expansion += requires matching centering");
  n_ = std::max(n_, o.n_);
  for (const auto& [key, c] : o.terms_) add(key.first, key.second, c);
  return *this;
}

HPReal Expansion::eval(const HPReal& x, const HPReal& beta) const {
  const long prec = std::max(prec_, x.prec());
  HPReal lx = log(x.rounded_to(prec));
  HPReal llx = log(lx);
  HPReal base = centered_ ? llx + beta : llx;
  HPReal acc(prec);
  for (const auto& [key, c] : terms_)
    acc += c * pow_si(base, key.first) * pow_si(lx, -key.second);
  return acc;
}

// --- builder -----------------------------------------------------------------

ExpansionBuilder::ExpansionBuilder(const ConstantsTable& table)
    : table_(table), wp_(table.prec() + 64) {}

HPReal ExpansionBuilder::h_deriv(int i) const {
  if (i == 0) return (table_.beta() - table_.gamma()).rounded_to(wp_);
  HPReal v = table_.alpha(i).rounded_to(wp_) * i;
  if (i % 2 == 0) v = -v;
  return v;
}

HPReal ExpansionBuilder::inv_gamma_deriv(int n, int m) const {
  if (m == 0) {
    PowerSeries s = inv_gamma_series_at_one(n, wp_);
    HPReal fact = HPReal::of(1LL, wp_);
    for (int i = 2; i <= n; ++i) fact *= i;
    return s[n] * fact;
  }
  return inv_gamma_jet(m, n, wp_).derivs[static_cast<size_t>(n)].rounded_to(wp_);
}

HPReal ExpansionBuilder::r_coeff(int j) const {
  if (j < 1) throw std::invalid_argument("r_coeff: j >= 1");
  HPReal acc = HPReal::pow2(j - 1, wp_) * table_.alpha_ja(j, 2).rounded_to(wp_) / j;
  HPReal aj = table_.alpha(j).rounded_to(wp_);
  for (int i = 1; i <= j - 1; ++i) {
    acc += aj / i;
    acc += binom_hp(static_cast<unsigned long>(j - 1), static_cast<unsigned long>(i),
                    wp_) *
           table_.alpha(i).rounded_to(wp_) * table_.alpha(j - i).rounded_to(wp_) * i / 2;
  }
  return acc;
}

HPReal ExpansionBuilder::v_coeff(int k) const {
  if (k < 1) throw std::invalid_argument("v_coeff: k >= 1");
  HPReal acc(wp_);
  HPReal ak = table_.alpha(k).rounded_to(wp_);
  for (int j = 1; j <= k - 1; ++j) {
    acc += ak * 2 / j;
    acc += binom_hp(static_cast<unsigned long>(k - 1), static_cast<unsigned long>(j),
                    wp_) *
           table_.alpha(j).rounded_to(wp_) * table_.alpha(k - j).rounded_to(wp_) * j;
  }
  return acc * 3;
}

HPReal ExpansionBuilder::t_coeff(int j) const {
  if (j == 1) return table_.alpha_ja(1, 3).rounded_to(wp_);
  if (j == 2) {
    HPReal a1 = table_.alpha(1).rounded_to(wp_);
    return table_.alpha_ja(2, 3).rounded_to(wp_) * 3 / 2 -
           (table_.alpha_ja(2, 2).rounded_to(wp_) +
            a1 * table_.alpha_ja(1, 2).rounded_to(wp_) + a1 * a1 / 2);
  }
  throw std::invalid_argument(
      "t_coeff: closed forms exist for j in {1,2}; use generate_r4 for higher j");
}

HPReal ExpansionBuilder::t_from_generator(int j, const Expansion& r4) const {
  if (!r4.centered_on_beta())
    throw std::invalid_argument("t_from_generator: expects the beta-centered R4");
  // coefficient at B^0 / log^j x is alpha_j (P(2)-zeta(2))/2 - t_j
  HPReal lead = table_.alpha(j).rounded_to(wp_) *
                (table_.prime_zeta_value(2).rounded_to(wp_) -
                 table_.zeta_value(2).rounded_to(wp_)) /
                2;
  return lead - r4.coeff(0, j).rounded_to(wp_);
}

Expansion ExpansionBuilder::generate_sk(int k, int n_trunc, bool include_i0) const {
  if (k < 1 || k > 6) throw std::invalid_argument("generate_sk: 1 <= k <= 6");
  if (n_trunc < 0 || n_trunc > 8) throw std::invalid_argument("generate_sk: N <= 8");

  const long prec = table_.prec();
  Expansion out(k, n_trunc, false, prec);

  std::vector<HPReal> h(static_cast<size_t>(n_trunc) + 1, HPReal(wp_));
  for (int i = 0; i <= n_trunc; ++i) h[static_cast<size_t>(i)] = h_deriv(i);

  HPReal k_fact = HPReal::of(1LL, wp_);
  for (int i = 2; i <= k; ++i) k_fact *= i;

  // composition counts k_0..k_N; recursion assigns k_i and tracks
  // remaining = k - m - sum k_i and M = sum i k_i
  std::vector<int> counts(static_cast<size_t>(n_trunc) + 1, 0);
  auto emit = [&](int m, int big_m) {
    // factor = k!/m! * prod_i (h_i/i!)^{k_i} / k_i!
    HPReal factor = k_fact;
    for (int i = 2; i <= m; ++i) factor /= i;
    HPReal i_fact = HPReal::of(1LL, wp_);
    for (int i = 0; i <= n_trunc; ++i) {
      if (i >= 2) i_fact *= i;
      int c = counts[static_cast<size_t>(i)];
      if (c == 0) continue;
      HPReal base = h[static_cast<size_t>(i)] / i_fact;
      for (int rep = 0; rep < c; ++rep) factor *= base;
      for (int rep = 2; rep <= c; ++rep) factor /= rep;
    }
    // I(m, M, x) = sum_{b<=m} C(m,b) (log2 x)^b / log^M x * (1/G)^(m-b)(1-M)
    for (int b = 0; b <= m; ++b) {
      if (m == 0 && big_m >= 1 && !include_i0) continue;  // I(0, M>=1) = 0
      HPReal ig = inv_gamma_deriv(m - b, big_m);
      if (ig.is_zero()) continue;
      HPReal c = factor *
                 binom_hp(static_cast<unsigned long>(m), static_cast<unsigned long>(b),
                          wp_) *
                 ig;
      out.add(b, big_m, c);
    }
  };

  auto rec = [&](auto&& self, int idx, int remaining, int big_m) -> void {
    if (big_m > n_trunc) return;
    if (idx > n_trunc) {
      // remaining goes to m
      emit(remaining, big_m);
      return;
    }
    for (int c = 0; c <= remaining; ++c) {
      counts[static_cast<size_t>(idx)] = c;
      self(self, idx + 1, remaining - c, big_m + idx * c);
      if (idx > 0 && big_m + idx * (c + 1) > n_trunc) break;
    }
    counts[static_cast<size_t>(idx)] = 0;
  };
  rec(rec, 0, k, 0);
  return out;
}

Expansion ExpansionBuilder::pq_a_expansion(int a, int n_trunc) const {
  if (a < 2) throw std::invalid_argument("pq_a_expansion: a >= 2");
  const long prec = table_.prec();
  Expansion out(1, n_trunc, true, prec);
  out.add(1, 0, table_.prime_zeta_value(a));
  HPReal a_pow = HPReal::of(1LL, wp_);
  for (int j = 1; j <= n_trunc; ++j) {
    a_pow *= a;
    out.add(0, j, -(a_pow * table_.alpha_ja(j, a).rounded_to(wp_) / j));
  }
  return out;
}

Expansion ExpansionBuilder::generate_r3(int n_trunc) const {
  const long prec = table_.prec();
  HPReal beta = table_.beta().rounded_to(wp_);
  Expansion s3 = generate_sk(3, n_trunc).recentered(true, beta);
  Expansion out = s3.scaled(HPReal::of(1LL, wp_) / 6);
  out += pq_a_expansion(2, n_trunc).scaled(HPReal::of(1LL, wp_) / 2);
  Expansion p3(3, n_trunc, true, prec);
  p3.add(0, 0, table_.prime_zeta_value(3) / 3);
  out += p3;
  return out;
}

Expansion ExpansionBuilder::generate_r4(int n_trunc) const {
  if (n_trunc > 4) throw std::invalid_argument("generate_r4: N <= 4");
  const long prec = table_.prec();
  HPReal beta = table_.beta().rounded_to(wp_);
  HPReal p2 = table_.prime_zeta_value(2).rounded_to(wp_);
  HPReal z2 = table_.zeta_value(2).rounded_to(wp_);

  Expansion out = generate_sk(4, n_trunc)
                      .recentered(true, beta)
                      .scaled(HPReal::of(1LL, wp_) / 24);

  // p^2 q r piece: sum_p p^-2 S_2(x/p^2), weight 6/24.
  {
    Expansion a2(4, n_trunc, true, prec);
    a2.add(2, 0, p2);
    a2.add(0, 0, -(p2 * z2));
    for (int m = 1; m <= n_trunc; ++m) {
      HPReal am2 = table_.alpha_ja(m, 2).rounded_to(wp_);
      a2.add(1, m, -(HPReal::pow2(m + 1, wp_) * am2 / m));
      // (0, M): 2^M alpha_{M,2} sum_{m1=1}^{M-1} 1/(m1(M-m1))
      //        + sum_{j=1}^{M} 2 alpha_j C(M-1,j-1) 2^(M-j) alpha_{M-j,2}
      HPReal c0(wp_);
      for (int m1 = 1; m1 <= m - 1; ++m1)
        c0 += HPReal::pow2(m, wp_) * am2 /
              (static_cast<long>(m1) * static_cast<long>(m - m1));
      for (int j = 1; j <= m; ++j)
        c0 += table_.alpha(j).rounded_to(wp_) * 2 *
              binom_hp(static_cast<unsigned long>(m - 1),
                       static_cast<unsigned long>(j - 1), wp_) *
              HPReal::pow2(m - j, wp_) * table_.alpha_ja(m - j, 2).rounded_to(wp_);
      a2.add(0, m, c0);
    }
    out += a2.scaled(HPReal::of(1LL, wp_) / 4);
  }

  // p^2 q^2: constant P(2)^2, weight 3/24.
  {
    Expansion sq(4, n_trunc, true, prec);
    sq.add(0, 0, p2 * p2 / 8);
    out += sq;
  }

  // p^3 q piece, weight 8/24.
  out += pq_a_expansion(3, n_trunc).scaled(HPReal::of(1LL, wp_) / 3);

  // p^4: constant P(4)/4.
  {
    Expansion p4(4, n_trunc, true, prec);
    p4.add(0, 0, table_.prime_zeta_value(4).rounded_to(wp_) / 4);
    out += p4;
  }
  return out;
}

LeadingTermCheck ExpansionBuilder::leading_term_check(int k, int m) const {
  if (k < 2 || m < 1)
    throw std::invalid_argument("leading_term_check: need k >= 2, M >= 1");
  Expansion sk = generate_sk(k, m);
  LeadingTermCheck out;
  out.generator_lead = sk.coeff(k - 2, m);
  out.closed_lead =
      (table_.alpha(m).rounded_to(wp_) * k * (k - 1)).rounded_to(table_.prec());
  if (k >= 3) {
    out.has_sub = true;
    out.generator_sub = sk.coeff(k - 3, m);
    // k(k-1)(k-2) (alpha_M (beta - H_{M-1}) - 1/2 sum_i i C(M-1,i) a_i a_{M-i})
    HPReal h1(wp_);
    for (int i = 1; i <= m - 1; ++i) h1 += HPReal::of(1LL, wp_) / i;
    HPReal acc = table_.alpha(m).rounded_to(wp_) * (table_.beta().rounded_to(wp_) - h1);
    for (int i = 1; i <= m - 1; ++i)
      acc -= binom_hp(static_cast<unsigned long>(m - 1), static_cast<unsigned long>(i),
                      wp_) *
             table_.alpha(i).rounded_to(wp_) * table_.alpha(m - i).rounded_to(wp_) * i /
             2;
    out.closed_sub =
        (acc * k * (k - 1) * (k - 2)).rounded_to(table_.prec());
  } else {
    out.generator_sub = HPReal(table_.prec());
    out.closed_sub = HPReal(table_.prec());
  }
  return out;
}

HPReal ExpansionBuilder::eval_r2(const HPReal& x, int n_trunc) const {
  if (!(x >= HPReal::of(16LL, x.prec()))) throw std::invalid_argument("eval_r2: x >= 16");
  HPReal lx = log(x.rounded_to(wp_));
  HPReal big_x = log(lx) + table_.beta().rounded_to(wp_);
  HPReal acc = big_x * big_x / 2 +
               (table_.prime_zeta_value(2).rounded_to(wp_) -
                table_.zeta_value(2).rounded_to(wp_)) /
                   2;
  for (int j = 1; j <= n_trunc; ++j)
    acc += table_.alpha(j).rounded_to(wp_) * pow_si(lx, -j);
  return acc.rounded_to(table_.prec());
}

HPReal ExpansionBuilder::eval_r3(const HPReal& x, int n_trunc) const {
  if (!(x >= HPReal::of(16LL, x.prec()))) throw std::invalid_argument("eval_r3: x >= 16");
  HPReal lx = log(x.rounded_to(wp_));
  HPReal big_x = log(lx) + table_.beta().rounded_to(wp_);
  HPReal acc = pow_si(big_x, 3) / 6 +
               (table_.prime_zeta_value(2).rounded_to(wp_) -
                table_.zeta_value(2).rounded_to(wp_)) *
                   big_x / 2 +
               (table_.prime_zeta_value(3).rounded_to(wp_) +
                table_.zeta_value(3).rounded_to(wp_)) /
                   3;
  for (int j = 1; j <= n_trunc; ++j)
    acc += (table_.alpha(j).rounded_to(wp_) * big_x - r_coeff(j)) * pow_si(lx, -j);
  return acc.rounded_to(table_.prec());
}

HPReal ExpansionBuilder::eval_r4(const HPReal& x, int n_trunc) const {
  if (!(x >= HPReal::of(16LL, x.prec()))) throw std::invalid_argument("eval_r4: x >= 16");
  if (n_trunc > 3)
    throw std::invalid_argument("eval_r4: N <= 3 (t_j beyond the generator range)");
  HPReal lx = log(x.rounded_to(wp_));
  HPReal big_x = log(lx) + table_.beta().rounded_to(wp_);
  HPReal p2 = table_.prime_zeta_value(2).rounded_to(wp_);
  HPReal z2 = table_.zeta_value(2).rounded_to(wp_);
  HPReal acc = pow_si(big_x, 4) / 24 + (p2 - z2) * big_x * big_x / 4 +
               (table_.prime_zeta_value(3).rounded_to(wp_) +
                table_.zeta_value(3).rounded_to(wp_)) *
                   big_x / 3 +
               table_.prime_zeta_value(4).rounded_to(wp_) / 4 +
               table_.zeta_value(4).rounded_to(wp_) / 16 + p2 * p2 / 8 -
               p2 * z2 / 4;
  if (n_trunc >= 1) {
    Expansion r4 = generate_r4(n_trunc);  // supplies t_j for j <= N
    for (int j = 1; j <= n_trunc; ++j) {
      HPReal tj = j <= 2 ? t_coeff(j) : t_from_generator(j, r4);
      acc += (table_.alpha(j).rounded_to(wp_) * (big_x * big_x + p2 - z2) / 2 -
              r_coeff(j) * big_x - tj) *
             pow_si(lx, -j);
    }
  }
  return acc.rounded_to(table_.prec());
}

GrowthReport ExpansionBuilder::growth_diagnostics(int j_max) const {
  GrowthReport rep;
  for (int j = 2; j <= j_max; ++j) {
    HPReal lj = log(HPReal::of(static_cast<long long>(j), wp_));
    HPReal aj = table_.alpha(j).rounded_to(wp_);
    GrowthReport::Row r{j, r_coeff(j).rounded_to(table_.prec()), HPReal(table_.prec())};
    r.normalized = (r.value.rounded_to(wp_) / (aj * lj * 3 / 2)).rounded_to(table_.prec());
    GrowthReport::Row v{j, v_coeff(j).rounded_to(table_.prec()), HPReal(table_.prec())};
    v.normalized = (v.value.rounded_to(wp_) / (aj * lj * 9)).rounded_to(table_.prec());
    if (j >= 5) {
      for (const HPReal* n : {&r.normalized, &v.normalized}) {
        double d = n->to_double();
        if (!(d >= 0.2 && d <= 5.0)) rep.bounded_on_5_40 = false;
      }
    }
    rep.r_rows.push_back(std::move(r));
    rep.v_rows.push_back(std::move(v));
  }
  return rep;
}

}  // namespace mertensk
