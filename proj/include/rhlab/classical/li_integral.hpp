#pragma once

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "rhlab/core/big_real.hpp"

namespace rhlab::classical {

/// Gauss-Legendre nodes and weights on [-1, 1]. Only nodes >= 0 are stored,
/// in increasing order; the rule is symmetric.
struct GaussLegendreRule {
  int digits;
  std::vector<BigReal> nodes;
  std::vector<BigReal> weights;
};

namespace detail {

inline GaussLegendreRule build_gauss_legendre(int order, int digits) {
  const int w = digits + 10;
  GaussLegendreRule rule{digits, {}, {}};
  const BigReal eps = BigReal::pow10(-(w - 2), w);
  auto legendre = [&](const BigReal& x, BigReal& p, BigReal& dp) {
    BigReal p0(1L, w);
    BigReal p1 = x;
    for (int k = 2; k <= order; ++k) {
      BigReal p2 = (x * p1 * static_cast<long>(2 * k - 1) - p0 * static_cast<long>(k - 1)) / static_cast<long>(k);
      p0 = std::move(p1);
      p1 = std::move(p2);
    }
    p = p1;
    dp = (x * p1 - p0) * static_cast<long>(order) / (x * x - 1L);
  };
  const int half = (order + 1) / 2;
  for (int i = half; i >= 1; --i) {
    // i = half is the smallest non-negative root; it is 0 for odd order.
    const bool center = order % 2 == 1 && i == half;
    BigReal x = center ? BigReal(w) : BigReal(std::cos(M_PI * (i - 0.25) / (order + 0.5)), w);
    BigReal p(w), dp(w);
    for (int iter = 0; !center && iter < 100; ++iter) {
      legendre(x, p, dp);
      const BigReal dx = p / dp;
      x -= dx;
      if (abs(dx) < eps) break;
    }
    legendre(x, p, dp);
    const BigReal weight = 2L / ((1L - x * x) * dp * dp);
    rule.nodes.push_back(x.with_digits(digits));
    rule.weights.push_back(weight.with_digits(digits));
  }
  return rule;
}

}  // namespace detail

/// Cached Gauss-Legendre rule of the given order at the given precision.
inline std::shared_ptr<const GaussLegendreRule> gauss_legendre(int order, int digits) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const GaussLegendreRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{order, digits}];
  if (!slot) slot = std::make_shared<const GaussLegendreRule>(detail::build_gauss_legendre(order, digits));
  return slot;
}

namespace detail {

// Integral of e^v / v over [a, b] with one Gauss-Legendre panel.
inline BigReal li_panel(const BigReal& a, const BigReal& b, const GaussLegendreRule& rule) {
  const BigReal mid = (a + b) / 2L;
  const BigReal half = (b - a) / 2L;
  BigReal sum(a.digits());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const BigReal offset = half * rule.nodes[i];
    if (offset.is_zero()) {
      sum += rule.weights[i] * exp(mid) / mid;
    } else {
      const BigReal lo = mid - offset;
      const BigReal hi = mid + offset;
      sum += rule.weights[i] * (exp(lo) / lo + exp(hi) / hi);
    }
  }
  return sum * half;
}

inline BigReal li_adaptive(const BigReal& a, const BigReal& b, const BigReal& whole,
                           const BigReal& tol, const GaussLegendreRule& rule, int depth) {
  const BigReal mid = (a + b) / 2L;
  const BigReal left = li_panel(a, mid, rule);
  const BigReal right = li_panel(mid, b, rule);
  const BigReal refined = left + right;
  if (abs(refined - whole) <= tol || depth >= 30) return refined;
  const BigReal half_tol = tol / 2L;
  return li_adaptive(a, mid, left, half_tol, rule, depth + 1) +
         li_adaptive(mid, b, right, half_tol, rule, depth + 1);
}

}  // namespace detail

/// Integral of du / ln u over [lo, hi], 2 <= lo <= hi, absolute error below
/// 10^-digits. Integrated as e^v / v over [ln lo, ln hi] on panels [v, 2v]
/// (the singularity at v = 0 stays three half-widths away), each refined
/// adaptively by bisection against a Gauss-Legendre rule.
inline BigReal li_between(const BigReal& lo, const BigReal& hi, int digits) {
  require_digits(digits);
  if (lo < 2L) throw DomainError("Li: lower limit must be at least 2");
  if (hi < lo) throw DomainError("Li: upper limit below lower limit");
  if (hi == lo) return BigReal(digits);
  // The result grows like hi / ln hi; its leading digits are carried on top
  // so that the error bound is absolute.
  const int lead = static_cast<int>(std::ceil(kLog10OfE * log(hi).to_double()));
  const int w = working_digits(digits) + lead;
  const int order = static_cast<int>(std::ceil(0.7 * w)) + 4;
  const auto rule = gauss_legendre(order, w);
  const BigReal va = log(lo.with_digits(w));
  const BigReal vb = log(hi.with_digits(w));

  std::vector<std::pair<BigReal, BigReal>> panels;
  for (BigReal a = va; a < vb;) {
    BigReal b = min(a * 2L, vb);
    panels.emplace_back(a, b);
    a = b;
  }
  const BigReal tol = BigReal::pow10(-(digits + 3), w) / static_cast<long>(panels.size());
  BigReal total(w);
  for (const auto& [a, b] : panels) {
    total += detail::li_adaptive(a, b, detail::li_panel(a, b, *rule), tol, *rule, 0);
  }
  return total.with_digits(digits + lead);
}

/// Li(x) = integral_2^x du / ln u.
inline BigReal li_integral(const BigReal& x, int digits) {
  if (x < 2L) throw DomainError("Li(x): requires x >= 2, got " + to_string(x, 10));
  return li_between(BigReal(2L, x.digits()), x, digits);
}

inline BigReal li_integral(double x, int digits) { return li_integral(BigReal(x, digits + 20), digits); }

}  // namespace rhlab::classical
