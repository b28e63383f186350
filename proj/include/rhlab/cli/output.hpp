#pragma once

#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rhlab/core/big_real.hpp"

#ifndef RHLAB_VERSION
#define RHLAB_VERSION "unknown"
#endif

namespace rhlab::cli {

enum class Format { kCsv, kJson };

/// Column names plus rows of already formatted cells.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) {
    if (row.size() != columns.size()) throw Error("output row width does not match the header");
    rows.push_back(std::move(row));
  }
};

/// What produced a file: subcommand and the validated options.
struct Provenance {
  std::string command;
  nlohmann::json config;
};

/// Decimal string with `digits` significant digits.
inline std::string cell(const BigReal& x, int digits) { return to_string(x, digits); }

/// Shortest plain decimal for grid coordinates: up to 20 significant digits,
/// trailing zeros dropped.
inline std::string grid_cell(const BigReal& x) {
  std::string s = to_string(x, 20);
  if (s.find('e') != std::string::npos || s.find('.') == std::string::npos) return s;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return s;
}

inline void write_csv(std::ostream& os, const Provenance& p, const Table& t) {
  os << "# rhlab " << RHLAB_VERSION << "\n";
  os << "# command: " << p.command << "\n";
  os << "# config: " << p.config.dump() << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
}

inline void write_json(std::ostream& os, const Provenance& p, const Table& t) {
  nlohmann::json doc;
  doc["rhlab"] = RHLAB_VERSION;
  doc["command"] = p.command;
  doc["config"] = p.config;
  doc["columns"] = t.columns;
  doc["rows"] = t.rows;
  os << doc.dump(2) << "\n";
}

inline void write_output(const std::filesystem::path& path, Format format, const Provenance& p, const Table& t) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot write " + path.string());
  if (format == Format::kJson) {
    write_json(os, p, t);
  } else {
    write_csv(os, p, t);
  }
  if (!os) throw Error("write failed for " + path.string());
}

}  // namespace rhlab::cli
