#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rhlab/classical/lagarias.hpp"
#include "rhlab/classical/li_integral.hpp"
#include "rhlab/classical/sieve.hpp"
#include "rhlab/core/parallel.hpp"

namespace rhlab::classical {

struct KochPoint {
  std::uint64_t x;
  std::uint64_t pi;
  BigReal li;
};

/// Rows hold lhs = |pi(x) - Li(x)|, threshold = sqrt(x) ln x.
struct KochReport {
  ScanReport scan;
  std::vector<KochPoint> points;
  bool pi_below_li = true;  // pi(x) < Li(x) at every checkpoint
};

/// Roughly `per_decade` logarithmically spaced integers in [x_min, x_max],
/// both ends included.
inline std::vector<std::uint64_t> koch_checkpoints(std::uint64_t x_min, std::uint64_t x_max,
                                                   unsigned per_decade) {
  if (x_min < 2 || x_max < x_min) throw DomainError("koch: need 2 <= x_min <= x_max");
  if (per_decade == 0) throw DomainError("koch: per_decade must be positive");
  std::vector<std::uint64_t> xs{x_min};
  const double lo = std::log10(static_cast<double>(x_min));
  const double hi = std::log10(static_cast<double>(x_max));
  const auto steps = static_cast<std::uint64_t>(std::ceil((hi - lo) * per_decade));
  for (std::uint64_t i = 1; i < steps; ++i) {
    const auto x = static_cast<std::uint64_t>(std::llround(std::pow(10.0, lo + static_cast<double>(i) / per_decade)));
    if (x > xs.back() && x < x_max) xs.push_back(x);
  }
  if (x_max > xs.back()) xs.push_back(x_max);
  return xs;
}

/// |pi(x) - Li(x)| / (sqrt(x) ln x) at each checkpoint. Li is accumulated
/// over consecutive checkpoint intervals, which are integrated in parallel
/// and summed in order. A violation is a ratio above 1.
inline KochReport koch_check(std::vector<std::uint64_t> checkpoints, int digits = 30,
                             double near_band = kDefaultNearBand, unsigned threads = 0) {
  require_digits(digits);
  detail::check_band(near_band);
  if (checkpoints.empty()) throw DomainError("koch: no checkpoints");
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  if (checkpoints.front() < 2) throw DomainError("koch: checkpoints must be at least 2");

  const auto pis = prime_pi_sieve(checkpoints.back(), checkpoints);
  const int w = digits + 10;

  std::vector<std::optional<BigReal>> pieces(checkpoints.size());
  parallel_for(checkpoints.size(), threads, [&](std::size_t i) {
    const BigReal lo(static_cast<unsigned long>(i == 0 ? 2 : checkpoints[i - 1]), w);
    const BigReal hi(static_cast<unsigned long>(checkpoints[i]), w);
    pieces[i] = li_between(lo, hi, w);
  });

  KochReport report;
  report.scan.near_band = near_band;
  const BigReal cut = detail::band_cut(near_band, digits);
  BigReal li(w);
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    li += *pieces[i];
    const std::uint64_t x = checkpoints[i];
    const BigReal xr(static_cast<unsigned long>(x), w);
    const BigReal pi(static_cast<unsigned long>(pis[i].pi), w);
    const BigReal lhs = abs(pi - li).with_digits(digits);
    const BigReal threshold = (sqrt(xr) * log(xr)).with_digits(digits);
    const BigReal ratio = lhs / threshold;
    if (!(pi < li)) report.pi_below_li = false;
    report.points.push_back({x, pis[i].pi, li});
    detail::record(report.scan, ScanRow{x, lhs, threshold, ratio, ratio >= cut});
  }
  return report;
}

}  // namespace rhlab::classical
