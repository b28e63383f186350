#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rhlab/core/big_real.hpp"
#include "rhlab/kernel/bernoulli.hpp"

namespace rhlab::kernel {

/// Immutable cache of zeta(2m), 1/zeta(2m) and zeta(2m) - 1, m = 1..size(),
/// rounded to the table precision. The excess zeta(2m) - 1 is kept separately
/// because for large m it falls below the resolution of zeta(2m) itself.
/// Safe to share between threads.
class ZetaEvenTable {
 public:
  /// Builds the table for m = 1..count with absolute error below 10^-digits.
  static ZetaEvenTable build(std::size_t count, int digits);

  /// Reassembles a table from stored excess and inverse values (used by the
  /// on-disk cache). Validates 0 < excess, strict decrease, and that 1/zeta
  /// matches.
  static ZetaEvenTable from_values(int digits, std::vector<BigReal> excess,
                                   std::vector<BigReal> inverse);

  int digits() const noexcept { return digits_; }
  std::size_t size() const noexcept { return zeta_.size(); }

  /// zeta(2m), 1 <= m <= size().
  const BigReal& zeta(std::size_t m) const { return zeta_.at(m - 1); }

  /// 1/zeta(2m), 1 <= m <= size().
  const BigReal& inverse(std::size_t m) const { return inverse_.at(m - 1); }

  /// zeta(2m) - 1 to the table's relative precision.
  const BigReal& excess(std::size_t m) const { return excess_.at(m - 1); }

  /// Entry count for which the Dirichlet route is cheaper than Bernoulli.
  static std::size_t bernoulli_cutoff(int working);

 private:
  ZetaEvenTable(int digits, std::vector<BigReal> excess, std::vector<BigReal> inverse)
      : digits_(digits), excess_(std::move(excess)), inverse_(std::move(inverse)) {
    zeta_.reserve(excess_.size());
    for (const auto& e : excess_) zeta_.push_back(e + 1L);
  }

  int digits_;
  std::vector<BigReal> excess_;
  std::vector<BigReal> zeta_;
  std::vector<BigReal> inverse_;
};

namespace detail {

// Dirichlet terms n = 2..N needed so that sum_{n>N} n^{-2m} < 10^{-(working+2)}.
inline std::size_t dirichlet_terms(std::size_t m, int working) {
  const double e = (working + 2.0) / (2.0 * static_cast<double>(m) - 1.0);
  if (e > 12) return static_cast<std::size_t>(-1);
  return static_cast<std::size_t>(std::ceil(std::pow(10.0, e))) + 1;
}

inline constexpr std::size_t kDirichletCutoff = 256;

}  // namespace detail

inline std::size_t ZetaEvenTable::bernoulli_cutoff(int working) {
  std::size_t m = 1;
  while (detail::dirichlet_terms(m, working) > detail::kDirichletCutoff) ++m;
  return m - 1;
}

inline ZetaEvenTable ZetaEvenTable::build(std::size_t count, int digits) {
  require_digits(digits);
  if (count < 1) throw DomainError("zeta_even_table: count must be at least 1");
  const int w = working_digits(digits);

  std::vector<BigReal> excess;
  std::vector<BigReal> inverse;
  excess.reserve(count);
  inverse.reserve(count);

  // `tail` is zeta(2m) - 1 at working precision.
  auto store = [&](const BigReal& tail) {
    inverse.push_back((1L / (tail + 1L)).with_digits(digits));
    excess.push_back(tail.with_digits(digits));
  };

  // Small m: zeta(2m) = (2 pi)^{2m} |B_2m| / (2 (2m)!), exact until the last step.
  const std::size_t via_bernoulli = std::min(count, bernoulli_cutoff(w));
  if (via_bernoulli > 0) {
    const auto bern = bernoulli_even(via_bernoulli + 1);
    const BigReal two_pi_sq = pow(BigReal::pi(w) * 2L, 2L);
    BigReal power(1L, w);
    Integer factorial = 1;
    for (std::size_t m = 1; m <= via_bernoulli; ++m) {
      power *= two_pi_sq;
      factorial *= static_cast<unsigned long>((2 * m - 1) * (2 * m));
      const Rational scaled = abs(bern[m]) / Rational(Integer(2 * factorial));
      store(power * BigReal(scaled, w) - 1L);
    }
  }

  // Large m: the Dirichlet series collapses to a handful of terms. Powers
  // n^{-2m} are carried from one m to the next by exact division by n^2.
  if (count > via_bernoulli) {
    const std::size_t first = via_bernoulli + 1;
    std::size_t active = std::min<std::size_t>(detail::dirichlet_terms(first, w), detail::kDirichletCutoff);
    std::vector<BigReal> powers;
    powers.reserve(active + 1);
    powers.emplace_back(w);
    powers.emplace_back(w);
    for (std::size_t n = 2; n <= active; ++n) {
      BigReal p(w);
      mpfr_ui_pow_ui(p.get(), static_cast<unsigned long>(n), static_cast<unsigned long>(2 * first),
                     MPFR_RNDN);
      mpfr_ui_div(p.get(), 1, p.get(), MPFR_RNDN);
      powers.push_back(std::move(p));
    }
    for (std::size_t m = first; m <= count; ++m) {
      if (m > first) {
        active = std::min(active, detail::dirichlet_terms(m, w));
        for (std::size_t n = 2; n <= active; ++n) {
          mpfr_div_ui(powers[n].get(), powers[n].get(), static_cast<unsigned long>(n * n), MPFR_RNDN);
        }
      }
      BigReal sum(w);
      for (std::size_t n = active; n >= 2; --n) sum += powers[n];
      store(sum);
    }
  }
  return ZetaEvenTable(digits, std::move(excess), std::move(inverse));
}

inline ZetaEvenTable ZetaEvenTable::from_values(int digits, std::vector<BigReal> excess,
                                                std::vector<BigReal> inverse) {
  require_digits(digits);
  if (excess.empty() || excess.size() != inverse.size()) {
    throw DomainError("zeta table: entry vectors empty or of unequal length");
  }
  const BigReal tolerance = BigReal::pow10(-(digits - 2), digits);
  for (std::size_t i = 0; i < excess.size(); ++i) {
    excess[i] = excess[i].with_digits(digits);
    inverse[i] = inverse[i].with_digits(digits);
    if (!(excess[i] > 0L)) throw DomainError("zeta table: entry " + std::to_string(i + 1) + " not > 1");
    if (i > 0 && !(excess[i] < excess[i - 1])) {
      throw DomainError("zeta table: entry " + std::to_string(i + 1) + " not decreasing");
    }
    if (abs((excess[i] + 1L) * inverse[i] - 1L) > tolerance) {
      throw DomainError("zeta table: inverse mismatch at entry " + std::to_string(i + 1));
    }
  }
  return ZetaEvenTable(digits, std::move(excess), std::move(inverse));
}

/// Builds the zeta(2m) table; shorthand for ZetaEvenTable::build.
inline ZetaEvenTable zeta_even_table(std::size_t count, int digits) {
  return ZetaEvenTable::build(count, digits);
}

}  // namespace rhlab::kernel
