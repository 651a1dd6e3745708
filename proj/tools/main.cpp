#include <cinttypes>
#include <cstdio>
#include <iostream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "config.hpp"
#include "emit.hpp"
#include "mertensk/constants.hpp"
#include "mertensk/expansion.hpp"
#include "mertensk/oracle.hpp"
#include "mertensk/polylog.hpp"
#include "mertensk/prime_store.hpp"
#include "mertensk/verify.hpp"
#include "mertensk/version.hpp"
#include "mertensk/zeta.hpp"

namespace {

using namespace mertensk;
using cli::Format;
using cli::Provenance;
using cli::RunConfig;
using cli::TableData;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

struct GlobalArgs {
  std::string config_file;
  long prec_bits = -1;
  double prime_limit = -1;
  std::string cache_dir;
  std::string format;
  int threads = -1;
};

RunConfig resolve_config(const GlobalArgs& a) {
  RunConfig cfg;
  if (!a.config_file.empty()) cfg = cli::parse_config_file(a.config_file, cfg);
  cfg = cli::apply_env(cfg);
  if (a.prec_bits > 0) cfg.prec_bits = a.prec_bits;
  if (a.prime_limit > 0) cfg.prime_limit = static_cast<uint64_t>(a.prime_limit);
  if (!a.cache_dir.empty()) cfg.cache_dir = a.cache_dir;
  if (!a.format.empty()) cfg.output_format = cli::parse_format(a.format);
  if (a.threads >= 0) cfg.threads = a.threads;
  cfg.validate();
  return cfg;
}

Provenance provenance(const RunConfig& cfg) {
  Provenance p;
  p.prec_bits = cfg.prec_bits;
  p.prime_limit = cfg.prime_limit;
  p.series_order = 64;
  p.version = kGitDescribe;
  return p;
}

void emit_table(const TableData& t, const RunConfig& cfg, const Provenance& prov) {
  switch (cfg.output_format) {
    case Format::csv:
      std::cout << cli::to_csv(t);
      break;
    case Format::json:
      std::cout << cli::to_json(t, prov).dump(2) << "\n";
      break;
    case Format::text:
      std::cout << cli::to_text(t);
      break;
  }
}

// Shared lazily-built table: several subcommands need the same constants.
const ConstantsTable& constants_for(const RunConfig& cfg) {
  static std::map<long, std::unique_ptr<ConstantsTable>> tables;
  auto it = tables.find(cfg.prec_bits);
  if (it == tables.end())
    it = tables.emplace(cfg.prec_bits, std::make_unique<ConstantsTable>(cfg.prec_bits))
             .first;
  return *it->second;
}

std::string six_decimal_trunc(const HPReal& v) {
  char buf[64];
  double t = std::floor(v.to_double() * 1e6) / 1e6;
  snprintf(buf, sizeof buf, "%.6f", t);
  return buf;
}

int print_checks(const std::vector<verify::CheckResult>& checks, bool strict) {
  int unexpected = 0;
  for (const auto& c : checks) {
    bool deviation = !c.pass && verify::is_documented_deviation(c.name);
    const char* tag = c.pass ? "PASS" : (deviation && !strict ? "FAIL (expected)" : "FAIL");
    std::printf("[%s] %s%s%s\n", tag, c.name.c_str(),
                c.detail.empty() ? "" : " -- ", c.detail.c_str());
    if (!c.pass && !(deviation && !strict)) ++unexpected;
  }
  return unexpected;
}

int cmd_primes_build(const RunConfig& cfg) {
  PrimeStore::Options o;
  o.limit = cfg.prime_limit;
  o.prec_bits = cfg.prec_bits;
  o.cache_dir = cfg.cache_dir;
  o.workers = cfg.threads;
  PrimeStore st = PrimeStore::build_or_load(o);
  std::fprintf(stderr, "prime store ready: limit %" PRIu64 ", cache %s\n", st.limit(),
               cfg.cache_dir.empty() ? "(none)" : cfg.cache_dir.c_str());
  std::printf("mertens_prefix(%" PRIu64 ") = %s\n", st.limit(),
              st.mertens_prefix(st.limit()).str(30).c_str());
  return kExitOk;
}

int cmd_constants_alpha(const RunConfig& cfg, int j) {
  const ConstantsTable& t = constants_for(cfg);
  TableData td;
  td.columns = {"j", "alpha_j", "ratio_to_asymptotic", "budget"};
  td.rows.push_back({std::to_string(j), t.alpha(j).str(40), t.ratio(j).str(12),
                     t.budget("alpha_" + std::to_string(j)).str(3)});
  emit_table(td, cfg, provenance(cfg));
  return kExitOk;
}

int cmd_constants_table(const RunConfig& cfg, int j_max) {
  const ConstantsTable& t = constants_for(cfg);
  TableData td;
  td.columns = {"j", "alpha_ratio", "alpha_j"};
  for (int j = 1; j <= j_max; ++j)
    td.rows.push_back(
        {std::to_string(j), six_decimal_trunc(t.ratio(j)), t.alpha(j).str(30)});
  Provenance p = provenance(cfg);
  p.extra["alpha_route"] = "eta decomposition over log-zeta jets";
  p.extra["ratio_display"] = "6 decimals, truncated";
  p.extra["j_max"] = std::to_string(j_max);
  emit_table(td, cfg, p);
  return kExitOk;
}

int cmd_zeta_eval(const RunConfig& cfg, double s) {
  TableData td;
  td.columns = {"s", "zeta", "prime_zeta"};
  HPReal s_hp = HPReal::of(s, cfg.prec_bits);
  td.rows.push_back({s_hp.str(12), zeta(s_hp, cfg.prec_bits).str(40),
                     prime_zeta(s_hp, cfg.prec_bits).str(40)});
  emit_table(td, cfg, provenance(cfg));
  return kExitOk;
}

int cmd_zeta_eta(const RunConfig& cfg, int j_max) {
  EtaTable eta = eta_coeffs(j_max, cfg.prec_bits);
  TableData td;
  td.columns = {"j", "eta_j", "stieltjes_gamma_j"};
  for (int j = 0; j <= j_max; ++j)
    td.rows.push_back({std::to_string(j), eta.values[static_cast<size_t>(j)].str(40),
                       eta.stieltjes_used[static_cast<size_t>(j)].str(40)});
  emit_table(td, cfg, provenance(cfg));
  return kExitOk;
}

int cmd_expand_sk(const RunConfig& cfg, int k, int n) {
  const ConstantsTable& t = constants_for(cfg);
  ExpansionBuilder eb(t);
  Expansion e = eb.generate_sk(k, n).recentered(true, t.beta());
  TableData td;
  td.columns = {"loglog_pow", "inv_log_pow", "coeff"};
  for (const auto& [key, c] : e.terms())
    if (!c.is_zero())
      td.rows.push_back(
          {std::to_string(key.first), std::to_string(key.second), c.str(40)});
  Provenance p = provenance(cfg);
  p.extra["expansion"] = "S_" + std::to_string(k);
  p.extra["truncation_N"] = std::to_string(n);
  p.extra["variable"] = "loglog x + beta";
  emit_table(td, cfg, p);
  return kExitOk;
}

int cmd_expand_rk(const RunConfig& cfg, int k, int n, double x, bool compare_sieve) {
  const ConstantsTable& t = constants_for(cfg);
  ExpansionBuilder eb(t);
  if (k < 2 || k > 4) throw std::invalid_argument("expand rk: k must be 2..4");
  if (x <= 0) {
    // no evaluation point: print the expansion terms
    Expansion e = [&] {
      if (k == 3) return eb.generate_r3(n);
      if (k == 4) return eb.generate_r4(n);
      // R_2 = S_2/2 + P(2)/2
      Expansion r2 = eb.generate_sk(2, n)
                         .recentered(true, t.beta())
                         .scaled(HPReal::of(1LL, cfg.prec_bits) / 2);
      Expansion c(2, n, true, cfg.prec_bits);
      c.add(0, 0, t.prime_zeta_value(2) / 2);
      r2 += c;
      return r2;
    }();
    TableData td;
    td.columns = {"loglog_pow", "inv_log_pow", "coeff"};
    for (const auto& [key, c] : e.terms())
      if (!c.is_zero())
        td.rows.push_back(
            {std::to_string(key.first), std::to_string(key.second), c.str(40)});
    Provenance p = provenance(cfg);
    p.extra["expansion"] = "R_" + std::to_string(k);
    p.extra["truncation_N"] = std::to_string(n);
    emit_table(td, cfg, p);
    return kExitOk;
  }
  HPReal x_hp = HPReal::of(x, cfg.prec_bits);
  HPReal ev = k == 2   ? eb.eval_r2(x_hp, n)
              : k == 3 ? eb.eval_r3(x_hp, n)
                       : eb.eval_r4(x_hp, n);
  TableData td;
  td.columns = {"k", "x", "N", "expansion"};
  std::vector<std::string> row = {std::to_string(k), std::to_string(static_cast<uint64_t>(x)),
                                  std::to_string(n), ev.str(30)};
  if (compare_sieve) {
    Oracle::Options oo;
    oo.prec_bits = cfg.prec_bits;
    oo.workers = cfg.threads;
    Oracle oracle(oo);
    HPReal sieve = oracle.rk_sieve(k, static_cast<uint64_t>(x)).value;
    td.columns.push_back("sieve");
    td.columns.push_back("abs_diff");
    row.push_back(sieve.str(30));
    row.push_back(abs(sieve - ev).str(6));
  }
  td.rows.push_back(std::move(row));
  emit_table(td, cfg, provenance(cfg));
  return kExitOk;
}

int cmd_oracle_eval(const RunConfig& cfg, const std::string& which, int k, double x) {
  Oracle::Options oo;
  oo.prec_bits = cfg.prec_bits;
  oo.workers = cfg.threads;
  Oracle oracle(oo);
  OracleResult r = which == "rk" ? oracle.rk_sieve(k, static_cast<uint64_t>(x))
                                 : oracle.sk_recursive(k, static_cast<uint64_t>(x));
  TableData td;
  td.columns = {"quantity", "k", "x", "value", "abs_error_budget"};
  td.rows.push_back({r.quantity, std::to_string(r.k_or_j), std::to_string(r.x),
                     r.value.str(35), r.abs_error_budget.str(3)});
  emit_table(td, cfg, provenance(cfg));
  std::fprintf(stderr, "wall time: %.3fs\n", r.wall_time.count());
  return kExitOk;
}

int cmd_oracle_identity_suite(const RunConfig& cfg, bool quick) {
  Oracle::Options oo;
  oo.prec_bits = cfg.prec_bits;
  oo.workers = cfg.threads;
  Oracle oracle(oo);
  double tol = 1e-10;
  if (auto it = cfg.suite_tolerances.find("decomposition");
      it != cfg.suite_tolerances.end())
    tol = it->second;
  int bad = print_checks(verify::decomposition_suite(oracle, tol, quick), true);
  return bad ? kExitVerifyFail : kExitOk;
}

int cmd_polylog_verify(const RunConfig& cfg, int k_max) {
  auto checks = verify::polylog_bound_checks(k_max, cfg.prec_bits);
  if (cfg.output_format == Format::json) {
    nlohmann::json j;
    j["schema"] = "mertensk.checks";
    j["schema_version"] = cli::kJsonSchemaVersion;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& c : checks)
      rows.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["checks"] = rows;
    std::cout << j.dump(2) << "\n";
    int bad = 0;
    for (const auto& c : checks)
      if (!c.pass) ++bad;
    return bad ? kExitVerifyFail : kExitOk;
  }
  int bad = print_checks(checks, true);
  return bad ? kExitVerifyFail : kExitOk;
}

int cmd_verify_all(const RunConfig& cfg, bool quick) {
  const ConstantsTable& t = constants_for(cfg);
  Oracle::Options oo;
  oo.prec_bits = cfg.prec_bits;
  oo.workers = cfg.threads;
  Oracle oracle(oo);

  int bad = 0;
  std::printf("== named constants ==\n");
  bad += print_checks(verify::named_constants_suite(t), false);
  std::printf("== gamma derivative suite ==\n");
  bad += print_checks(verify::gamma_suite(cfg.prec_bits, -(cfg.prec_bits - 24)), false);
  std::printf("== eta suite ==\n");
  bad += print_checks(verify::eta_suite(t), false);
  std::printf("== generator identities ==\n");
  bad += print_checks(
      verify::generator_identity_suite(t, 5, -(cfg.prec_bits - 24)), false);
  std::printf("== polylogarithm bounds ==\n");
  bad += print_checks(verify::polylog_bound_checks(quick ? 64 : 200, cfg.prec_bits), false);
  std::printf("== finite-x decompositions ==\n");
  bad += print_checks(verify::decomposition_suite(oracle, 1e-10, quick), false);
  std::printf("== pq^a expansions ==\n");
  bad += print_checks(verify::pq_a_suite(t, oracle, quick), false);
  std::printf("== sieve convergence ==\n");
  bad += print_checks(verify::sieve_convergence_suite(t, oracle, quick), false);
  std::printf("== ratio table ==\n");
  bad += print_checks(verify::ratio_table_suite(t, quick ? 12 : 26, 5e-7), false);
  std::printf("%s\n", bad == 0 ? "verify: all suites passed"
                               : "verify: FAILURES detected");
  return bad ? kExitVerifyFail : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"higher Mertens constants: computation, expansions, verification"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalArgs g;
  app.add_option("--config", g.config_file, "flat key=value config file");
  app.add_option("--prec", g.prec_bits, "binary precision (>= 64)");
  app.add_option("--plimit,--prime-limit", g.prime_limit, "prime sieve limit");
  app.add_option("--cache-dir", g.cache_dir, "prime store cache directory");
  app.add_option("--format", g.format, "output format: text|csv|json");
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");

  auto* primes = app.add_subcommand("primes", "prime store management");
  primes->fallthrough();
  auto* primes_build = primes->add_subcommand("build", "materialize the store");
  primes_build->fallthrough();
  double primes_limit = -1;
  primes_build->add_option("--limit", primes_limit, "sieve limit");

  auto* constants = app.add_subcommand("constants", "alpha_j and friends");
  constants->fallthrough();
  auto* c_alpha = constants->add_subcommand("alpha", "single alpha_j");
  c_alpha->fallthrough();
  int alpha_j = 1;
  c_alpha->add_option("--j", alpha_j, "index j")->required();
  bool flag_json = false, flag_csv = false;
  c_alpha->add_flag("--json", flag_json, "JSON output");
  auto* c_table = constants->add_subcommand("table", "ratio table");
  c_table->fallthrough();
  int jmax = 26;
  c_table->add_option("--jmax", jmax, "largest j");
  c_table->add_flag("--csv", flag_csv, "CSV output");
  c_table->add_flag("--json", flag_json, "JSON output");

  auto* zeta_cmd = app.add_subcommand("zeta", "zeta and eta");
  zeta_cmd->fallthrough();
  auto* z_eval = zeta_cmd->add_subcommand("eval", "zeta(s), P(s) for s > 1");
  z_eval->fallthrough();
  double zeta_s = 2.0;
  z_eval->add_option("--s", zeta_s, "argument")->required();
  z_eval->add_flag("--json", flag_json, "JSON output");
  auto* z_eta = zeta_cmd->add_subcommand("eta", "eta coefficients");
  z_eta->fallthrough();
  int eta_j = 32;
  z_eta->add_option("--J", eta_j, "largest index");
  z_eta->add_flag("--json", flag_json, "JSON output");

  auto* expand = app.add_subcommand("expand", "fine-scale expansions");
  expand->fallthrough();
  auto* e_sk = expand->add_subcommand("sk", "S_k expansion terms");
  e_sk->fallthrough();
  int ek = 2, en = 3;
  double ex = -1;
  e_sk->add_option("--k", ek, "k")->required();
  e_sk->add_option("--N", en, "truncation order");
  e_sk->add_flag("--json", flag_json, "JSON output");
  auto* e_rk = expand->add_subcommand("rk", "R_k expansion / evaluation");
  e_rk->fallthrough();
  bool compare_sieve = false;
  e_rk->add_option("--k", ek, "k (2..4)")->required();
  e_rk->add_option("--N", en, "truncation order");
  e_rk->add_option("--x", ex, "evaluation point");
  e_rk->add_flag("--compare-sieve", compare_sieve, "also run the Omega sieve");
  e_rk->add_flag("--json", flag_json, "JSON output");

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force evaluations");
  oracle_cmd->fallthrough();
  auto* o_rk = oracle_cmd->add_subcommand("rk", "R_k by Omega sieve");
  o_rk->fallthrough();
  int ok_ = 2;
  double ox = 1e6;
  o_rk->add_option("--k", ok_, "k")->required();
  o_rk->add_option("--x", ox, "upper bound")->required();
  auto* o_sk = oracle_cmd->add_subcommand("sk", "S_k recursive");
  o_sk->fallthrough();
  o_sk->add_option("--k", ok_, "k")->required();
  o_sk->add_option("--x", ox, "upper bound")->required();
  auto* o_suite = oracle_cmd->add_subcommand("identity-suite",
                                             "finite-x decomposition identities");
  o_suite->fallthrough();
  bool quick = false;
  o_suite->add_flag("--quick", quick, "smaller x grid");

  auto* polylog_cmd = app.add_subcommand("polylog", "negative-order polylogarithms");
  polylog_cmd->fallthrough();
  auto* p_verify = polylog_cmd->add_subcommand("verify", "polylogarithm bound suite");
  p_verify->fallthrough();
  int kmax = 200;
  p_verify->add_option("--kmax", kmax, "largest k");
  p_verify->add_flag("--json", flag_json, "JSON output");

  auto* verify_cmd = app.add_subcommand("verify", "verification suites");
  verify_cmd->fallthrough();
  auto* v_all = verify_cmd->add_subcommand("all", "run every suite");
  v_all->fallthrough();
  v_all->add_flag("--quick", quick, "reduced grids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    RunConfig cfg = resolve_config(g);
    if (flag_json) cfg.output_format = Format::json;
    if (flag_csv) cfg.output_format = Format::csv;
    if (primes_limit > 0) cfg.prime_limit = static_cast<uint64_t>(primes_limit);

    if (primes_build->parsed()) return cmd_primes_build(cfg);
    if (c_alpha->parsed()) return cmd_constants_alpha(cfg, alpha_j);
    if (c_table->parsed()) return cmd_constants_table(cfg, jmax);
    if (z_eval->parsed()) return cmd_zeta_eval(cfg, zeta_s);
    if (z_eta->parsed()) return cmd_zeta_eta(cfg, eta_j);
    if (e_sk->parsed()) return cmd_expand_sk(cfg, ek, en);
    if (e_rk->parsed()) return cmd_expand_rk(cfg, ek, en, ex, compare_sieve);
    if (o_rk->parsed()) return cmd_oracle_eval(cfg, "rk", ok_, ox);
    if (o_sk->parsed()) return cmd_oracle_eval(cfg, "sk", ok_, ox);
    if (o_suite->parsed()) return cmd_oracle_identity_suite(cfg, quick);
    if (p_verify->parsed()) return cmd_polylog_verify(cfg, kmax);
    if (v_all->parsed()) return cmd_verify_all(cfg, quick);
    std::fprintf(stderr, "no subcommand selected\n");
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitVerifyFail;
  }
}
