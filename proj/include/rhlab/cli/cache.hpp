#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rhlab/kernel/zeta_even.hpp"

namespace rhlab::cli {

/// On-disk zeta(2m) table. Canonical text form:
///
///   rhlab-cache 1
///   kind zeta-even
///   precision <digits>
///   entries <M>
///   <m>\t<zeta(2m) - 1>\t<1/zeta(2m)>      (m = 1..M)
///
/// Each decimal carries exactly the digits that round-trip at the header
/// precision, so load followed by save reproduces the file byte for byte.
inline constexpr int kCacheFormat = 1;
inline constexpr std::string_view kCacheKind = "zeta-even";
inline constexpr std::string_view kCacheFileName = "zeta-even.cache";
inline constexpr const char* kCacheDirEnv = "RHLAB_CACHE_DIR";

inline std::string serialize_table(const kernel::ZetaEvenTable& table) {
  std::string out = "rhlab-cache " + std::to_string(kCacheFormat) + "\nkind " + std::string(kCacheKind) +
                    "\nprecision " + std::to_string(table.digits()) + "\nentries " +
                    std::to_string(table.size()) + "\n";
  for (std::size_t m = 1; m <= table.size(); ++m) {
    out += std::to_string(m) + "\t" + to_exact_string(table.excess(m)) + "\t" + to_exact_string(table.inverse(m)) +
           "\n";
  }
  return out;
}

namespace detail {

class CacheReader {
 public:
  explicit CacheReader(std::string_view text) : text_(text) {}

  std::size_t offset() const noexcept { return pos_; }
  bool at_end() const noexcept { return pos_ >= text_.size(); }

  // Next line without its newline; a missing final newline counts as truncation.
  std::string_view line(const char* what) {
    if (at_end()) throw CacheError(std::string("file ends before ") + what, pos_);
    const auto nl = text_.find('\n', pos_);
    if (nl == std::string_view::npos) throw CacheError(std::string("unterminated ") + what, text_.size());
    line_start_ = pos_;
    const auto out = text_.substr(pos_, nl - pos_);
    pos_ = nl + 1;
    return out;
  }

  long keyword(std::string_view key) {
    const auto text = line(std::string(key).c_str());
    if (text.substr(0, key.size()) != key || text.size() <= key.size() + 1 || text[key.size()] != ' ') {
      throw CacheError("expected '" + std::string(key) + " <value>'", line_start_);
    }
    return number(text.substr(key.size() + 1), line_start_ + key.size() + 1);
  }

  std::size_t line_start() const noexcept { return line_start_; }

  static long number(std::string_view s, std::size_t at) {
    if (s.empty() || s.size() > 12) throw CacheError("bad integer field", at);
    long v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') throw CacheError("bad integer field", at);
      v = v * 10 + (c - '0');
    }
    return v;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_start_ = 0;
};

inline BigReal canonical_field(std::string_view s, int digits, std::size_t at) {
  BigReal v(digits);
  try {
    v = BigReal::parse(s, digits);
  } catch (const DomainError&) {
    throw CacheError("not a decimal number", at);
  }
  if (to_exact_string(v) != s) throw CacheError("entry is not in canonical form for the header precision", at);
  return v;
}

}  // namespace detail

/// Parses the canonical form; any deviation raises CacheError with the byte
/// offset where it was found.
inline kernel::ZetaEvenTable parse_table(std::string_view text) {
  detail::CacheReader in(text);
  const auto magic = in.line("header");
  if (magic != "rhlab-cache " + std::to_string(kCacheFormat)) throw CacheError("not an rhlab cache file", 0);
  const auto kind = in.line("kind");
  if (kind != "kind " + std::string(kCacheKind)) throw CacheError("unsupported table kind", in.line_start());
  const long digits = in.keyword("precision");
  if (digits < kMinDigits || digits > 100'000) throw CacheError("precision out of range", in.line_start());
  const long count = in.keyword("entries");
  if (count < 1) throw CacheError("no entries", in.line_start());

  std::vector<BigReal> excess, inverse;
  const std::size_t body = in.offset();
  for (long m = 1; m <= count; ++m) {
    if (in.at_end()) {
      throw CacheError("truncated: " + std::to_string(m - 1) + " of " + std::to_string(count) + " entries",
                       in.offset());
    }
    const auto row = in.line("entry");
    const std::size_t start = in.line_start();
    const auto t1 = row.find('\t');
    const auto t2 = t1 == std::string_view::npos ? t1 : row.find('\t', t1 + 1);
    if (t2 == std::string_view::npos || row.find('\t', t2 + 1) != std::string_view::npos) {
      throw CacheError("entry must have three tab-separated fields", start);
    }
    if (detail::CacheReader::number(row.substr(0, t1), start) != m) throw CacheError("entry index out of order", start);
    excess.push_back(detail::canonical_field(row.substr(t1 + 1, t2 - t1 - 1), static_cast<int>(digits), start + t1 + 1));
    inverse.push_back(detail::canonical_field(row.substr(t2 + 1), static_cast<int>(digits), start + t2 + 1));
  }
  if (!in.at_end()) throw CacheError("trailing data after the declared entries", in.offset());
  try {
    return kernel::ZetaEvenTable::from_values(static_cast<int>(digits), std::move(excess), std::move(inverse));
  } catch (const DomainError& e) {
    throw CacheError(e.what(), body);
  }
}

inline kernel::ZetaEvenTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CacheError("cannot open " + path.string(), 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_table(buf.str());
}

/// Writes through a temporary file and a rename, so readers never see a
/// partial table.
inline void save_table(const kernel::ZetaEvenTable& table, const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write " + tmp, 0);
    out << serialize_table(table);
    if (!out) throw CacheError("write failed for " + tmp, 0);
  }
  std::filesystem::rename(tmp, path);
}

enum class CacheAction { kLoaded, kBuilt, kRebuilt };

inline const char* action_name(CacheAction a) {
  switch (a) {
    case CacheAction::kLoaded: return "loaded";
    case CacheAction::kBuilt: return "built";
    case CacheAction::kRebuilt: return "rebuilt";
  }
  return "?";
}

struct CachedTable {
  kernel::ZetaEvenTable table;
  CacheAction action;
  std::string note;  // why a rebuild happened, empty otherwise
};

/// A table with at least `count` entries at no less than `digits`. A cache
/// with lower precision, fewer entries or a load error is rebuilt and
/// rewritten; the rebuilt table keeps the larger of the two entry counts.
inline CachedTable load_or_build(const std::filesystem::path& path, std::size_t count, int digits) {
  std::string note;
  std::size_t keep = count;
  if (std::filesystem::exists(path)) {
    try {
      auto table = load_table(path);
      if (table.digits() >= digits && table.size() >= count) return {std::move(table), CacheAction::kLoaded, ""};
      note = table.digits() < digits ? "cached precision " + std::to_string(table.digits()) + " below " +
                                           std::to_string(digits)
                                     : "cached entries " + std::to_string(table.size()) + " below " +
                                           std::to_string(count);
      keep = std::max(count, table.size());
    } catch (const CacheError& e) {
      note = e.what();
    }
    auto table = kernel::ZetaEvenTable::build(keep, digits);
    save_table(table, path);
    return {std::move(table), CacheAction::kRebuilt, note};
  }
  auto table = kernel::ZetaEvenTable::build(keep, digits);
  save_table(table, path);
  return {std::move(table), CacheAction::kBuilt, ""};
}

/// Cache directory: the explicit value if given, else $RHLAB_CACHE_DIR, else none.
inline std::optional<std::filesystem::path> cache_dir(const std::string& explicit_dir) {
  if (!explicit_dir.empty()) return std::filesystem::path(explicit_dir);
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

}  // namespace rhlab::cli
