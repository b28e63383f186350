#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rhlab/core/big_real.hpp"
#include "rhlab/core/parallel.hpp"
#include "rhlab/kernel/zeta_even.hpp"

namespace rhlab::baez_duarte {

using kernel::ZetaEvenTable;

/// Amplitude of the published envelope +-A k^{-3/4}.
inline constexpr double kEnvelopeAmplitude = 0.777506e-5;

/// Default window over which the envelope statistic is reported.
inline constexpr std::size_t kEnvelopeWindowLow = 2000;
inline constexpr std::size_t kEnvelopeWindowHigh = 20000;

/// Minimum working digits for c_k: the binomial mass reaches 2^k while the
/// result is O(1e-5), so log10(2) k digits cancel before 20 survive.
inline int budget_digits(std::size_t k) {
  return static_cast<int>(std::ceil(kLog10Of2 * static_cast<double>(k) + 20.0));
}

/// Working digits that deliver c_k to 10^-digits absolute accuracy.
inline int default_working_digits(std::size_t k, int digits) {
  return working_digits(digits) + static_cast<int>(std::ceil(kLog10Of2 * static_cast<double>(k)));
}

/// Maps k to the working digits used for c_k. Must respect budget_digits(k).
using PrecisionPolicy = std::function<int(std::size_t k)>;

inline PrecisionPolicy budget_policy(int digits) {
  require_digits(digits);
  return [digits](std::size_t k) { return default_working_digits(k, digits); };
}

/// c_k = sum_{j=0}^{k} (-1)^j C(k,j) / zeta(2j+2) at exactly `working` digits.
/// Binomials are exact integers; each 1/zeta factor is rounded to the working
/// precision before use, so the result depends only on (k, working) and not on
/// the precision of the table it was read from.
inline BigReal ck_with_table(std::size_t k, int working, const ZetaEvenTable& table) {
  if (working < budget_digits(k)) {
    throw BudgetError("c_" + std::to_string(k) + ": working precision " + std::to_string(working) +
                          " digits is below the cancellation budget",
                      budget_digits(k));
  }
  if (table.size() < k + 1) {
    throw DomainError("c_k: zeta table holds " + std::to_string(table.size()) +
                      " entries, need " + std::to_string(k + 1));
  }
  if (table.digits() < working) {
    throw DomainError("c_k: zeta table precision " + std::to_string(table.digits()) +
                      " below working precision " + std::to_string(working));
  }
  BigReal sum(working);
  BigReal factor(working);
  BigReal term(working);
  mpz_class binom = 1;
  for (std::size_t j = 0; j <= k; ++j) {
    mpfr_set(factor.get(), table.inverse(j + 1).get(), MPFR_RNDN);
    mpfr_mul_z(term.get(), factor.get(), binom.get_mpz_t(), MPFR_RNDN);
    if (j % 2 == 0) {
      mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    } else {
      mpfr_sub(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    }
    mpz_mul_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(k - j));
    mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), static_cast<unsigned long>(j + 1));
  }
  return sum;
}

/// c_k accurate to 10^-digits. Working precision is raised automatically to
/// cover the cancellation budget.
inline BigReal ck(std::size_t k, int digits) {
  require_digits(digits);
  const int working = default_working_digits(k, digits);
  const auto table = ZetaEvenTable::build(k + 1, working);
  return ck_with_table(k, working, table);
}

struct CkEntry {
  std::size_t k;
  BigReal value;
  int precision_used;
};

/// sup |c_k| k^{3/4} over a window, with the index attaining it.
struct EnvelopeStat {
  std::size_t window_low;
  std::size_t window_high;
  std::size_t argmax;
  BigReal sup;
  std::size_t samples;
};

class CkSeries {
 public:
  CkSeries() = default;
  explicit CkSeries(std::vector<CkEntry> entries) : entries_(std::move(entries)) {}

  const std::vector<CkEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Envelope statistic recomputed from the entries; empty when no entry
  /// falls inside [low, high].
  std::optional<EnvelopeStat> envelope(std::size_t low = kEnvelopeWindowLow,
                                       std::size_t high = kEnvelopeWindowHigh) const {
    std::optional<EnvelopeStat> stat;
    for (const auto& e : entries_) {
      if (e.k < low || e.k > high || e.k == 0) continue;
      const int d = 30;
      const BigReal scaled =
          abs(e.value.with_digits(d)) * pow(BigReal(static_cast<unsigned long>(e.k), d), BigReal(0.75, d));
      if (!stat) {
        stat = EnvelopeStat{low, high, e.k, scaled, 1};
      } else {
        ++stat->samples;
        if (scaled > stat->sup) {
          stat->sup = scaled;
          stat->argmax = e.k;
        }
      }
    }
    return stat;
  }

 private:
  std::vector<CkEntry> entries_;
};

namespace detail {

struct CkPlan {
  std::vector<std::size_t> ks;
  std::vector<int> working;
  int table_digits = kMinDigits;
};

inline CkPlan plan_range(std::size_t k_min, std::size_t k_max, std::size_t stride,
                         const PrecisionPolicy& policy) {
  if (k_min > k_max) throw DomainError("ck_range: k_min exceeds k_max");
  if (stride == 0) throw DomainError("ck_range: stride must be positive");
  CkPlan plan;
  for (std::size_t k = k_min; k <= k_max; k += stride) plan.ks.push_back(k);
  for (std::size_t k : plan.ks) {
    const int w = policy(k);
    if (w < budget_digits(k)) {
      throw BudgetError("ck_range: policy gives " + std::to_string(w) + " digits for k = " + std::to_string(k),
                        budget_digits(k));
    }
    plan.working.push_back(w);
    plan.table_digits = std::max(plan.table_digits, w);
  }
  return plan;
}

}  // namespace detail

/// Zeta table size and precision that ck_range needs for these arguments.
inline std::pair<std::size_t, int> ck_range_table_shape(std::size_t k_min, std::size_t k_max,
                                                         std::size_t stride, const PrecisionPolicy& policy) {
  const auto plan = detail::plan_range(k_min, k_max, stride, policy);
  return {plan.ks.back() + 1, plan.table_digits};
}

/// Batch c_k for k = k_min, k_min + stride, ..., <= k_max from a supplied
/// table, shared read-only by all workers. Every entry equals what
/// ck_with_table returns for the same (k, policy(k)), independent of thread
/// count.
inline CkSeries ck_range(std::size_t k_min, std::size_t k_max, std::size_t stride,
                         const PrecisionPolicy& policy, const ZetaEvenTable& table, unsigned threads = 0) {
  const auto plan = detail::plan_range(k_min, k_max, stride, policy);
  const auto& ks = plan.ks;
  std::vector<std::optional<CkEntry>> slots(ks.size());
  // Largest k first so the long tail of cheap entries balances the workers.
  parallel_for(ks.size(), threads, [&](std::size_t i) {
    const std::size_t idx = ks.size() - 1 - i;
    slots[idx] = CkEntry{ks[idx], ck_with_table(ks[idx], plan.working[idx], table), plan.working[idx]};
  });
  std::vector<CkEntry> entries;
  entries.reserve(slots.size());
  for (auto& s : slots) entries.push_back(std::move(*s));
  return CkSeries(std::move(entries));
}

/// As above, building the table first.
inline CkSeries ck_range(std::size_t k_min, std::size_t k_max, std::size_t stride,
                         const PrecisionPolicy& policy, unsigned threads = 0) {
  const auto [size, digits] = ck_range_table_shape(k_min, k_max, stride, policy);
  const auto table = ZetaEvenTable::build(size, digits);
  return ck_range(k_min, k_max, stride, policy, table, threads);
}

inline CkSeries ck_range(std::size_t k_min, std::size_t k_max, std::size_t stride, int digits,
                         unsigned threads = 0) {
  return ck_range(k_min, k_max, stride, budget_policy(digits), threads);
}

/// sum_{k>=1} 2^{-k} / zeta(2k), the closed form of sum_k (-1)^k c_k.
/// Terms are bounded by 2^{-k}, so the sum stops once 2^{-k} < 10^{-digits-5}.
inline BigReal alternating_sum_closed(int digits) {
  require_digits(digits);
  const int w = working_digits(digits);
  const auto terms = static_cast<std::size_t>(std::ceil((w + 5) * kLog2Of10)) + 1;
  const auto table = ZetaEvenTable::build(terms, w);
  BigReal sum(w);
  for (std::size_t k = terms; k >= 1; --k) {
    sum += ldexp(table.inverse(k), -static_cast<long>(k));
  }
  return sum.with_digits(digits);
}

struct SmoothedSum {
  BigReal value;
  BigReal uncertainty;
  std::size_t terms;
  std::size_t depth;
};

/// Number of trailing averaged partial sums whose spread is the uncertainty.
inline constexpr std::size_t kSpreadWindow = 4;

/// sum_{k=0}^{N} (-1)^k c_k, smoothed by `depth` rounds of averaging adjacent
/// partial sums (an Euler-type transform of the slowly decaying tail). The
/// uncertainty is the spread of the last few smoothed partial sums.
inline SmoothedSum alternating_sum_direct(std::size_t n, std::size_t depth, int digits = 30,
                                          unsigned threads = 0) {
  if (n < 10) throw DomainError("alternating_sum_direct: N must be at least 10");
  require_digits(digits);
  const auto series = ck_range(0, n, 1, digits, threads);
  std::vector<BigReal> partial;
  partial.reserve(n + 1);
  BigReal running(working_digits(digits));
  for (const auto& e : series.entries()) {
    if (e.k % 2 == 0) {
      running += e.value;
    } else {
      running -= e.value;
    }
    partial.push_back(running);
  }
  for (std::size_t d = 0; d < depth && partial.size() > kSpreadWindow + 1; ++d) {
    std::vector<BigReal> next;
    next.reserve(partial.size() - 1);
    for (std::size_t i = 0; i + 1 < partial.size(); ++i) next.push_back((partial[i] + partial[i + 1]) / 2L);
    partial = std::move(next);
  }
  const std::size_t window = std::min(kSpreadWindow, partial.size());
  BigReal lo = partial.back();
  BigReal hi = partial.back();
  for (std::size_t i = partial.size() - window; i < partial.size(); ++i) {
    lo = min(lo, partial[i]);
    hi = max(hi, partial[i]);
  }
  return SmoothedSum{partial.back().with_digits(digits), (hi - lo).with_digits(digits), n, depth};
}

}  // namespace rhlab::baez_duarte
