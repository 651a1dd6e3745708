#include "emit.hpp"

#include <algorithm>

namespace mertensk::cli {

namespace {

std::string csv_escape(const std::string& f) {
  if (f.find_first_of(",\"\n") == std::string::npos) return f;
  std::string out = "\"";
  for (char c : f) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string to_csv(const TableData& t) {
  std::string out;
  for (size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(t.columns[i]);
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string to_text(const TableData& t) {
  const size_t ncol = t.columns.size();
  // split every cell at the decimal point so points line up per column
  std::vector<size_t> int_w(ncol, 0), frac_w(ncol, 0);
  auto split_at_dot = [](const std::string& s) -> std::pair<std::string, std::string> {
    auto dot = s.find('.');
    if (dot == std::string::npos) return {s, ""};
    return {s.substr(0, dot), s.substr(dot)};
  };
  for (size_t i = 0; i < ncol; ++i) int_w[i] = t.columns[i].size();
  for (const auto& row : t.rows)
    for (size_t i = 0; i < row.size() && i < ncol; ++i) {
      auto [ip, fp] = split_at_dot(row[i]);
      int_w[i] = std::max(int_w[i], ip.size());
      frac_w[i] = std::max(frac_w[i], fp.size());
    }
  std::string out;
  for (size_t i = 0; i < ncol; ++i) {
    if (i) out += "  ";
    std::string h = t.columns[i];
    h.resize(int_w[i] + frac_w[i], ' ');
    out += h;
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size() && i < ncol; ++i) {
      if (i) out += "  ";
      auto [ip, fp] = split_at_dot(row[i]);
      out += std::string(int_w[i] - ip.size(), ' ') + ip + fp;
      out += std::string(frac_w[i] - fp.size(), ' ');
    }
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const TableData& t, const Provenance& prov) {
  nlohmann::json j;
  j["schema"] = "mertensk.table";
  j["schema_version"] = kJsonSchemaVersion;
  nlohmann::json p;
  p["prec_bits"] = prov.prec_bits;
  p["prime_limit"] = prov.prime_limit;
  p["series_order"] = prov.series_order;
  p["version"] = prov.version;
  for (const auto& [k, v] : prov.extra) p[k] = v;
  j["provenance"] = p;
  j["columns"] = t.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : t.rows) rows.push_back(row);
  j["rows"] = rows;
  return j;
}

}  // namespace mertensk::cli
