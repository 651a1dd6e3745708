#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace mertensk::cli {

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void RunConfig::validate() const {
  if (prec_bits < 64)
    throw std::invalid_argument("config: prec_bits must be >= 64");
  if (prime_limit < 10'000)
    throw std::invalid_argument("config: prime_limit must be >= 10^4");
}

Format parse_format(const std::string& s) {
  if (s == "text") return Format::text;
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw std::invalid_argument("config: output_format must be text|csv|json, got '" +
                              s + "'");
}

RunConfig parse_config_file(const std::filesystem::path& path, RunConfig base) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("config: cannot open " + path.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string t = trim(line);
    if (t.empty()) continue;
    auto eq = t.find('=');
    auto where = [&] { return path.string() + ":" + std::to_string(lineno); };
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value at " + where());
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    try {
      if (key == "prec_bits")
        base.prec_bits = std::stol(val);
      else if (key == "prime_limit")
        base.prime_limit = static_cast<uint64_t>(std::stod(val));
      else if (key == "cache_dir")
        base.cache_dir = val;
      else if (key == "output_format")
        base.output_format = parse_format(val);
      else if (key == "threads")
        base.threads = std::stoi(val);
      else if (key.rfind("tolerance.", 0) == 0)
        base.suite_tolerances[key.substr(10)] = std::stod(val);
      else
        throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config: " + std::string(e.what()) + " at " +
                                  where());
    }
  }
  return base;
}

RunConfig apply_env(RunConfig cfg) {
  if (const char* p = std::getenv("MERTENS_PREC_BITS")) cfg.prec_bits = std::atol(p);
  if (const char* d = std::getenv("MERTENS_CACHE_DIR")) cfg.cache_dir = d;
  return cfg;
}

}  // namespace mertensk::cli
