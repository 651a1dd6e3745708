#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

namespace mertensk::cli {

enum class Format { text, csv, json };

struct RunConfig {
  long prec_bits = 192;
  uint64_t prime_limit = 100'000'000;
  std::filesystem::path cache_dir;
  Format output_format = Format::text;
  std::map<std::string, double> suite_tolerances;
  int threads = 0;  // 0: all logical cores

  /// Throws std::invalid_argument when out of range.
  void validate() const;
};

/// Flat key = value file with '#' comments. Unknown keys are rejected with
/// file:line info. Recognized: prec_bits, prime_limit, cache_dir,
/// output_format, threads, tolerance.<name>.
RunConfig parse_config_file(const std::filesystem::path& path, RunConfig base);

/// MERTENS_PREC_BITS and MERTENS_CACHE_DIR override file values.
RunConfig apply_env(RunConfig cfg);

Format parse_format(const std::string& s);

}  // namespace mertensk::cli
