#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace mertensk::cli {

struct TableData {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

struct Provenance {
  long prec_bits = 192;
  uint64_t prime_limit = 0;
  int series_order = 64;
  std::string version;
  std::map<std::string, std::string> extra;  // truncation orders etc.
};

/// RFC-style CSV: fields with comma/quote/newline get quoted, quotes doubled.
std::string to_csv(const TableData& t);

/// Fixed-width text with decimal points aligned per column.
std::string to_text(const TableData& t);

/// Versioned JSON document: schema tag, provenance block, column names, rows
/// as strings (full precision survives).
nlohmann::json to_json(const TableData& t, const Provenance& prov);

inline constexpr int kJsonSchemaVersion = 1;

}  // namespace mertensk::cli
