#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rhlab/classical/harmonic.hpp"
#include "rhlab/classical/sieve.hpp"
#include "rhlab/core/big_real.hpp"
#include "rhlab/core/parallel.hpp"

namespace rhlab::classical {

inline constexpr double kDefaultNearBand = 0.05;

/// Digits carried by the Lagarias threshold arithmetic.
inline constexpr int kScanDigits = 40;

/// One compared point: lhs against threshold, ratio = lhs / threshold.
struct ScanRow {
  std::uint64_t index;
  BigReal lhs;
  BigReal threshold;
  BigReal ratio;
  bool near_miss;
};

/// Scan summary. Only near-miss rows (and violations, which are a subset)
/// are retained; complete row streams go through a RowSink.
struct ScanReport {
  std::uint64_t scanned = 0;
  double near_band = kDefaultNearBand;
  std::optional<ScanRow> max_row;
  std::vector<ScanRow> near_misses;
  std::vector<ScanRow> violations;

  std::size_t near_miss_count() const noexcept { return near_misses.size(); }
  bool any_violation() const noexcept { return !violations.empty(); }
  const BigReal& max_ratio() const { return max_row.value().ratio; }
};

using RowSink = std::function<void(const ScanRow&)>;

namespace detail {

inline void record(ScanReport& report, ScanRow row) {
  ++report.scanned;
  if (!report.max_row || row.ratio > report.max_row->ratio) report.max_row = row;
  if (row.ratio > 1L) report.violations.push_back(row);
  if (row.near_miss) report.near_misses.push_back(std::move(row));
}

inline void merge(ScanReport& into, ScanReport&& part) {
  into.scanned += part.scanned;
  if (part.max_row && (!into.max_row || part.max_row->ratio > into.max_row->ratio)) {
    into.max_row = std::move(part.max_row);
  }
  for (auto& r : part.near_misses) into.near_misses.push_back(std::move(r));
  for (auto& r : part.violations) into.violations.push_back(std::move(r));
}

inline void check_band(double band) {
  if (!(band > 0.0 && band < 1.0)) throw DomainError("near band must lie in (0, 1)");
}

// 1 - band with the band read as the shortest decimal that round-trips, so
// a band of 0.05 cuts at exactly 0.95.
inline BigReal band_cut(double band, int digits) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, band);
  return 1L - BigReal::parse(std::string_view(buf, static_cast<std::size_t>(res.ptr - buf)), digits);
}

}  // namespace detail

/// H_n + e^{H_n} ln H_n at the given precision.
inline BigReal lagarias_threshold(const BigReal& h) { return h + exp(h) * log(h); }

/// Rows n in [lo, hi) of the Lagarias comparison, appended to `report`.
/// H_{lo-1} is taken from harmonic() and then accumulated term by term.
inline void lagarias_range(std::uint64_t lo, std::uint64_t hi, double near_band, ScanReport& report,
                           const RowSink& sink = {}) {
  if (lo < 1 || hi < lo) throw DomainError("lagarias_range: need 1 <= lo <= hi");
  detail::check_band(near_band);
  const int w = working_digits(kScanDigits);
  const BigReal cut = detail::band_cut(near_band, kScanDigits);
  const auto sigma = sigma_segment(lo, hi);
  report.near_band = near_band;
  BigReal h = lo == 1 ? BigReal(w) : harmonic(lo - 1, w);
  const BigReal one(1L, w);
  for (std::uint64_t n = lo; n < hi; ++n) {
    h += one / BigReal(static_cast<unsigned long>(n), w);
    const BigReal lhs(static_cast<unsigned long>(sigma[n - lo]), kScanDigits);
    const BigReal threshold = lagarias_threshold(h).with_digits(kScanDigits);
    const BigReal ratio = lhs / threshold;
    ScanRow row{n, lhs, threshold, ratio, ratio >= cut};
    if (sink) sink(row);
    detail::record(report, std::move(row));
  }
}

/// Compares sigma(n) with H_n + e^{H_n} ln H_n for every n <= N. Segments of
/// the range are processed independently and merged in index order. If
/// `sink` is set it receives every row in increasing n.
inline ScanReport lagarias_scan(std::uint64_t limit, double near_band = kDefaultNearBand,
                                unsigned threads = 0, const RowSink& sink = {}) {
  if (limit < 1) throw DomainError("lagarias_scan: N must be at least 1");
  if (limit > kMaxScanBound) {
    throw CapacityError("lagarias_scan: N = " + std::to_string(limit) + " exceeds " +
                        std::to_string(kMaxScanBound));
  }
  detail::check_band(near_band);
  const std::uint64_t segments = (limit + kSegmentLength - 1) / kSegmentLength;
  // With a sink the rows are needed in order, so segments run one at a time.
  const unsigned workers = sink ? 1u : threads;
  std::vector<ScanReport> parts(segments);
  parallel_for(segments, workers, [&](std::size_t s) {
    const std::uint64_t lo = 1 + s * kSegmentLength;
    const std::uint64_t hi = std::min(limit + 1, lo + kSegmentLength);
    lagarias_range(lo, hi, near_band, parts[s], sink);
  });
  ScanReport report;
  report.near_band = near_band;
  for (auto& p : parts) detail::merge(report, std::move(p));
  return report;
}

}  // namespace rhlab::classical
