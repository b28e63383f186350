#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rhlab/baez_duarte.hpp"
#include "rhlab/core/big_real.hpp"
#include "rhlab/core/parallel.hpp"
#include "rhlab/kernel/zeta_even.hpp"

namespace rhlab::riesz {

using kernel::ZetaEvenTable;

/// Constant of the leading term in |R(k)/k - c_k| <= (3 sqrt(pi)/16) k^{-3/2} + O(k^{-2}).
inline BigReal bridge_constant(int digits) { return sqrt(BigReal::pi(digits)) * 3L / 16L; }

/// Stand-in for the unspecified O(k^{-2}) constant.
inline constexpr double kSecondOrderConstant = 1.0;

/// Minimum working digits for R(x): terms peak near e^x before cancelling.
inline int budget_digits(double x) { return static_cast<int>(std::ceil(kLog10OfE * x + 20.0)); }

inline int default_working_digits(double x, int digits) {
  return working_digits(digits) + static_cast<int>(std::ceil(kLog10OfE * x));
}

/// Index of the last term kept in sum_k (-1)^k x^{k+1} / (k! zeta(2k+2)):
/// the first k past the peak with x^{k+1}/k! < 10^{-(digits+5)}.
inline std::size_t truncation_index(double x, int digits) {
  if (x <= 0) return 0;
  const double target = -(digits + 5.0);
  const double lx = std::log10(x);
  for (std::size_t k = 0;; ++k) {
    const double kd = static_cast<double>(k);
    const double log_term = (kd + 1.0) * lx - std::lgamma(kd + 1.0) * kLog10OfE;
    if (kd > x && log_term < target) return k;
  }
}

/// R(x) at exactly `working` digits using a caller-provided zeta table.
inline BigReal riesz_R_with_table(const BigReal& x, int digits, int working,
                                  const ZetaEvenTable& table) {
  if (x.sign() < 0) throw DomainError("riesz_R: x must be non-negative");
  const double xd = x.to_double();
  if (working < budget_digits(xd)) {
    throw BudgetError("riesz_R(" + to_string(x, 8) + "): working precision " +
                          std::to_string(working) + " digits is below the cancellation budget",
                      budget_digits(xd));
  }
  if (x.is_zero()) return BigReal(working);
  const std::size_t last = truncation_index(xd, digits);
  if (table.size() < last + 1 || table.digits() < working) {
    throw DomainError("riesz_R: zeta table too small (need " + std::to_string(last + 1) +
                      " entries at " + std::to_string(working) + " digits)");
  }
  const BigReal xw = x.with_digits(working);
  BigReal power = xw;  // x^{k+1}/k!
  BigReal sum(working);
  BigReal factor(working);
  for (std::size_t k = 0; k <= last; ++k) {
    if (k > 0) {
      power *= xw;
      power /= static_cast<long>(k);
    }
    mpfr_set(factor.get(), table.inverse(k + 1).get(), MPFR_RNDN);
    factor *= power;
    if (k % 2 == 0) {
      sum += factor;
    } else {
      sum -= factor;
    }
  }
  return sum;
}

/// R(x) = sum_{k>=0} (-1)^k x^{k+1} / (k! zeta(2k+2)), absolute error below
/// 10^-digits.
inline BigReal riesz_R(const BigReal& x, int digits) {
  require_digits(digits);
  if (x.sign() < 0) throw DomainError("riesz_R: x must be non-negative");
  const double xd = x.to_double();
  const int working = default_working_digits(xd, digits);
  const auto table = ZetaEvenTable::build(truncation_index(xd, digits) + 1, working);
  return riesz_R_with_table(x, digits, working, table).with_digits(digits);
}

inline BigReal riesz_R(double x, int digits) { return riesz_R(BigReal(x, digits), digits); }

struct BridgeReport {
  std::size_t k;
  BigReal r_over_k;
  BigReal c_k;
  BigReal gap;
  BigReal bound;  // (3 sqrt(pi)/16) k^{-3/2}
  BigReal ratio;  // gap / bound
  bool passes;    // gap <= bound + kSecondOrderConstant k^{-2}
  int precision;  // common working digits
};

/// Compares R(k)/k with c_k at a common working precision.
inline BridgeReport bridge_check(std::size_t k, int digits) {
  require_digits(digits);
  if (k < 10) throw DomainError("bridge_check: k must be at least 10");
  const double kd = static_cast<double>(k);
  const int working = std::max(default_working_digits(kd, digits),
                               baez_duarte::default_working_digits(k, digits));
  const std::size_t terms = std::max(truncation_index(kd, digits) + 1, k + 1);
  const auto table = ZetaEvenTable::build(terms, working);

  const BigReal x(static_cast<unsigned long>(k), working);
  BigReal r_over_k = riesz_R_with_table(x, digits, working, table) / x;
  BigReal c = baez_duarte::ck_with_table(k, working, table);
  BigReal gap = abs(r_over_k - c);
  BigReal bound = bridge_constant(working) * pow(x, BigReal(-1.5, working));
  BigReal ratio = gap / bound;
  const BigReal allowed = bound + BigReal(kSecondOrderConstant, working) / (x * x);
  const bool passes = gap <= allowed;
  return BridgeReport{k, std::move(r_over_k), std::move(c), std::move(gap), std::move(bound),
                      std::move(ratio), passes, working};
}

/// bridge_check for several k, ordered as given.
inline std::vector<BridgeReport> bridge_batch(const std::vector<std::size_t>& ks, int digits,
                                              unsigned threads = 0) {
  std::vector<std::optional<BridgeReport>> slots(ks.size());
  parallel_for(ks.size(), threads, [&](std::size_t i) { slots[i] = bridge_check(ks[i], digits); });
  std::vector<BridgeReport> out;
  out.reserve(ks.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

struct IdentityReport {
  BigReal x;
  std::size_t truncation;
  BigReal lhs;          // sum_{k<=K} c_k x^k / k!
  BigReal rhs;          // e^x R(x) / x
  BigReal discrepancy;  // |lhs - rhs|
  BigReal tail_bound;   // bound on the dropped sum_{k>K} c_k x^k / k!
  bool adequate;        // tail_bound < 10^{-digits-5}
};

/// |sum_{k=0}^{K} c_k x^k / k! - e^x R(x) / x|, both sides computed
/// independently. The tail uses |c_k| <= zeta(2) - 1 for k >= 1.
inline IdentityReport series_identity_check(const BigReal& x, std::size_t truncation, int digits) {
  require_digits(digits);
  if (x.sign() <= 0) throw DomainError("series_identity_check: x must be positive");
  const double xd = x.to_double();
  const int inner = digits + static_cast<int>(std::ceil(kLog10OfE * xd)) + 5;
  const int w = working_digits(inner);

  const auto series = baez_duarte::ck_range(0, truncation, 1, inner);
  BigReal lhs(w);
  BigReal power(1L, w);  // x^k / k!
  const BigReal xw = x.with_digits(w);
  for (std::size_t k = 0; k <= truncation; ++k) {
    if (k > 0) {
      power *= xw;
      power /= static_cast<long>(k);
    }
    lhs += series.entries()[k].value * power;
  }
  const BigReal rhs = exp(xw) * riesz_R(xw, inner) / xw;

  // sum_{k>K} x^k/k! <= x^{K+1}/(K+1)! / (1 - x/(K+2)) once K + 2 > x.
  BigReal tail(w);
  const BigReal next = power * xw / static_cast<long>(truncation + 1);
  const BigReal c_bound = pow(BigReal::pi(w), 2L) / 6L - 1L;
  if (static_cast<double>(truncation + 2) > xd) {
    tail = c_bound * next / (1L - xw / static_cast<long>(truncation + 2));
  } else {
    tail = c_bound * exp(xw);
  }
  const bool adequate = tail < BigReal::pow10(-(digits + 5), w);
  BigReal disc = abs(lhs - rhs);
  return IdentityReport{x.with_digits(digits), truncation, lhs.with_digits(digits),
                        rhs.with_digits(digits), disc.with_digits(digits), tail.with_digits(digits),
                        adequate};
}

struct ApproxRelationReport {
  std::size_t k;
  BigReal difference;  // D(k) = |sum_j (-1)^j k^j/(j! zeta(2j+2)) - c_k|
  BigReal bridge_gap;  // |R(k)/k - c_k| from bridge_check
  BigReal agreement;   // |D(k) - gap|
};

/// D(k) with the left sum built from exact k^j and j! (no shared recurrence
/// with riesz_R), then compared with the bridge gap.
inline ApproxRelationReport approx_relation_check(std::size_t k, int digits) {
  require_digits(digits);
  if (k < 1) throw DomainError("approx_relation_check: k must be at least 1");
  const double kd = static_cast<double>(k);
  const int working = std::max(default_working_digits(kd, digits),
                               baez_duarte::default_working_digits(k, digits));
  const std::size_t last = truncation_index(kd, digits);
  const auto table = ZetaEvenTable::build(std::max(last + 1, k + 1), working);

  BigReal sum(working);
  BigReal num(working);
  BigReal den(working);
  mpz_class power = 1;      // k^j
  mpz_class factorial = 1;  // j!
  for (std::size_t j = 0; j < last; ++j) {
    if (j > 0) {
      power *= static_cast<unsigned long>(k);
      factorial *= static_cast<unsigned long>(j);
    }
    mpfr_set_z(num.get(), power.get_mpz_t(), MPFR_RNDN);
    mpfr_set_z(den.get(), factorial.get_mpz_t(), MPFR_RNDN);
    mpfr_div(num.get(), num.get(), den.get(), MPFR_RNDN);
    mpfr_mul(num.get(), num.get(), table.inverse(j + 1).get(), MPFR_RNDN);
    if (j % 2 == 0) {
      sum += num;
    } else {
      sum -= num;
    }
  }
  const BigReal c = baez_duarte::ck_with_table(k, working, table);
  BigReal difference = abs(sum - c);

  BigReal gap(working);
  if (k >= 10) {
    gap = bridge_check(k, digits).gap;
  } else {
    const BigReal x(static_cast<unsigned long>(k), working);
    gap = abs(riesz_R_with_table(x, digits, working, table) / x - c);
  }
  BigReal agreement = abs(difference - gap);
  return ApproxRelationReport{k, std::move(difference), std::move(gap), std::move(agreement)};
}

}  // namespace rhlab::riesz
