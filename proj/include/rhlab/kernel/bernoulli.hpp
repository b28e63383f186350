#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <mutex>
#include <string>
#include <vector>

#include "rhlab/core/errors.hpp"

namespace rhlab {

using Rational = mpq_class;
using Integer = mpz_class;

namespace kernel {

namespace detail {

// Tangent numbers T_1..T_n (T_1 = 1, T_2 = 2, T_3 = 16, ...) by the
// Brent-Harvey in-place recurrence: O(n^2) small-multiplier operations on
// exact integers.
inline std::vector<Integer> tangent_numbers(std::size_t n) {
  std::vector<Integer> t(n + 1);
  if (n == 0) return t;
  t[1] = 1;
  for (std::size_t k = 2; k <= n; ++k) t[k] = t[k - 1] * static_cast<unsigned long>(k - 1);
  for (std::size_t k = 2; k <= n; ++k) {
    for (std::size_t j = k; j <= n; ++j) {
      t[j] = t[j - 1] * static_cast<unsigned long>(j - k) + t[j] * static_cast<unsigned long>(j - k + 2);
    }
  }
  return t;
}

class BernoulliMemo {
 public:
  static BernoulliMemo& instance() {
    static BernoulliMemo memo;
    return memo;
  }

  /// Exact B_{2m} for m = 0..count-1, extending the memo as needed.
  std::vector<Rational> even(std::size_t count) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (values_.size() < count) extend(count);
    return {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(count)};
  }

  Rational even_at(std::size_t m) {
    std::lock_guard<std::mutex> lock(mutex_);
    if (values_.size() <= m) extend(m + 1);
    return values_[m];
  }

 private:
  void extend(std::size_t count) {
    // The recurrence is not incremental; grow geometrically to amortize.
    const std::size_t target = std::max(count, 2 * values_.size());
    const auto t = tangent_numbers(target);
    std::vector<Rational> v(target);
    v[0] = 1;
    for (std::size_t m = 1; m < target; ++m) {
      // B_{2m} = (-1)^{m-1} 2m T_m / (4^m (4^m - 1))
      Integer four_m;
      mpz_ui_pow_ui(four_m.get_mpz_t(), 4, m);
      Rational b(Integer(t[m] * static_cast<unsigned long>(2 * m)), Integer(four_m * (four_m - 1)));
      b.canonicalize();
      if (m % 2 == 0) b = -b;
      v[m] = std::move(b);
    }
    values_ = std::move(v);
  }

  std::mutex mutex_;
  std::vector<Rational> values_;
};

}  // namespace detail

/// Exact Bernoulli number B_n for even n (B_0 = 1, B_2 = 1/6, ...).
/// Odd n is rejected: B_1 is convention-dependent and odd n > 1 give zero,
/// so asking for one is almost always a caller bug.
inline Rational bernoulli(unsigned n) {
  if (n % 2 != 0) throw DomainError("bernoulli: odd index " + std::to_string(n) + " rejected");
  return detail::BernoulliMemo::instance().even_at(n / 2);
}

/// B_0, B_2, ..., B_{2(count-1)}.
inline std::vector<Rational> bernoulli_even(std::size_t count) {
  return detail::BernoulliMemo::instance().even(count);
}

}  // namespace kernel
}  // namespace rhlab
