#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "config.hpp"
#include "doctest.h"
#include "emit.hpp"

using namespace mertensk::cli;

namespace {
std::filesystem::path write_temp_config(const std::string& body) {
  auto p = std::filesystem::temp_directory_path() / "mertensk_cli_test.conf";
  std::ofstream f(p, std::ios::trunc);
  f << body;
  return p;
}
}  // namespace

TEST_CASE("config file parsing with comments and tolerances") {
  auto p = write_temp_config(
      "# comment line\n"
      "prec_bits = 256   # trailing comment\n"
      "prime_limit = 1e6\n"
      "output_format = csv\n"
      "tolerance.decomposition = 1e-9\n"
      "\n");
  RunConfig cfg = parse_config_file(p, RunConfig{});
  CHECK(cfg.prec_bits == 256);
  CHECK(cfg.prime_limit == 1'000'000);
  CHECK(cfg.output_format == Format::csv);
  CHECK(cfg.suite_tolerances.at("decomposition") == 1e-9);
}

TEST_CASE("unknown config keys are rejected with location") {
  auto p = write_temp_config("zebra = 1\n");
  CHECK_THROWS_WITH_AS(parse_config_file(p, RunConfig{}),
                       doctest::Contains(":1"), std::invalid_argument);
  auto p2 = write_temp_config("prec_bits = 128\nnope = 2\n");
  CHECK_THROWS_WITH_AS(parse_config_file(p2, RunConfig{}),
                       doctest::Contains(":2"), std::invalid_argument);
}

TEST_CASE("validation floors") {
  RunConfig cfg;
  cfg.prec_bits = 32;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.prec_bits = 192;
  cfg.prime_limit = 100;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("environment overrides config file values") {
  RunConfig cfg;
  cfg.prec_bits = 128;
  setenv("MERTENS_PREC_BITS", "320", 1);
  setenv("MERTENS_CACHE_DIR", "/tmp/mstore", 1);
  cfg = apply_env(cfg);
  CHECK(cfg.prec_bits == 320);
  CHECK(cfg.cache_dir == std::filesystem::path("/tmp/mstore"));
  unsetenv("MERTENS_PREC_BITS");
  unsetenv("MERTENS_CACHE_DIR");
}

TEST_CASE("csv: header-only when empty, RFC quoting") {
  TableData t;
  t.columns = {"a", "b,comma", "c\"quote"};
  CHECK(to_csv(t) == "a,\"b,comma\",\"c\"\"quote\"\n");
  t.rows.push_back({"1", "plain", "x,y"});
  CHECK(to_csv(t) == "a,\"b,comma\",\"c\"\"quote\"\n1,plain,\"x,y\"\n");
}

TEST_CASE("text mode aligns decimal points") {
  TableData t;
  t.columns = {"j", "value"};
  t.rows.push_back({"1", "1.25"});
  t.rows.push_back({"10", "123.5"});
  t.rows.push_back({"100", "7"});
  std::string out = to_text(t);
  // every '.' in the value column lands at the same offset
  size_t dot1 = out.find("1.25");
  size_t dot2 = out.find("123.5");
  REQUIRE(dot1 != std::string::npos);
  REQUIRE(dot2 != std::string::npos);
  size_t line1_start = out.find('\n') + 1;
  size_t line2_start = out.find('\n', line1_start) + 1;
  CHECK((dot1 + 1 - line1_start) == (dot2 + 3 - line2_start));
}

TEST_CASE("json schema round-trips and carries provenance") {
  TableData t;
  t.columns = {"j", "ratio"};
  t.rows.push_back({"1", "1.332582"});
  Provenance prov;
  prov.prec_bits = 192;
  prov.prime_limit = 100000000;
  prov.version = "test";
  prov.extra["note"] = "x";
  nlohmann::json j = to_json(t, prov);
  std::string dumped = j.dump();
  nlohmann::json parsed = nlohmann::json::parse(dumped);
  REQUIRE(parsed.contains("schema"));
  CHECK(parsed["schema"] == "mertensk.table");
  CHECK(parsed["schema_version"] == kJsonSchemaVersion);
  REQUIRE(parsed.contains("provenance"));
  CHECK(parsed["provenance"]["prec_bits"] == 192);
  CHECK(parsed["provenance"]["prime_limit"] == 100000000);
  CHECK(parsed["provenance"]["note"] == "x");
  REQUIRE(parsed["rows"].is_array());
  CHECK(parsed["rows"][0][1] == "1.332582");
  CHECK(parsed["columns"].size() == 2);
}

TEST_CASE("format parser") {
  CHECK(parse_format("json") == Format::json);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
}
