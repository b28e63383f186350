#pragma once

#include <cstdint>
#include <string>

#include "rhlab/core/big_real.hpp"
#include "rhlab/kernel/bernoulli.hpp"

namespace rhlab::classical {

/// H_n is summed exactly up to this index and taken from the asymptotic
/// expansion above it.
inline constexpr std::uint64_t kHarmonicExactCutoff = 10'000;

namespace detail {

// sum_{k=a}^{b-1} 1/k as p/q by binary splitting.
inline void harmonic_split(std::uint64_t a, std::uint64_t b, Integer& p, Integer& q) {
  if (b - a == 1) {
    p = 1;
    q = static_cast<unsigned long>(a);
    return;
  }
  const std::uint64_t mid = a + (b - a) / 2;
  Integer p1, q1, p2, q2;
  harmonic_split(a, mid, p1, q1);
  harmonic_split(mid, b, p2, q2);
  p = p1 * q2 + p2 * q1;
  q = q1 * q2;
}

}  // namespace detail

/// H_n as an exact reduced fraction.
inline Rational harmonic_exact(std::uint64_t n) {
  if (n < 1) throw DomainError("harmonic: n must be at least 1");
  Integer p, q;
  detail::harmonic_split(1, n + 1, p, q);
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// H_n = ln n + gamma + 1/(2n) - sum_{k>=1} B_2k / (2k n^{2k}), summed until
/// the terms fall below the working precision. Valid for moderately large n.
inline BigReal harmonic_asymptotic(std::uint64_t n, int digits) {
  require_digits(digits);
  if (n < 1) throw DomainError("harmonic: n must be at least 1");
  const int w = working_digits(digits);
  const BigReal x(static_cast<unsigned long>(n), w);
  BigReal sum = log(x) + BigReal::euler_gamma(w) + 1L / (x * 2L);
  const BigReal inv_sq = 1L / (x * x);
  BigReal power = inv_sq;
  const BigReal eps = BigReal::pow10(-(w + 2), w);
  for (std::size_t k = 1;; ++k) {
    const Rational coeff = kernel::bernoulli(static_cast<unsigned>(2 * k)) / Rational(static_cast<long>(2 * k));
    const BigReal term = power * BigReal(coeff, w);
    sum -= term;
    if (abs(term) < eps) break;
    if (k > 10'000) throw ConditioningError("harmonic: asymptotic series did not converge");
    power *= inv_sq;
  }
  return sum.with_digits(digits);
}

/// H_n to 10^-digits: exact rational for n <= kHarmonicExactCutoff,
/// asymptotic expansion above.
inline BigReal harmonic(std::uint64_t n, int digits) {
  require_digits(digits);
  if (n < 1) throw DomainError("harmonic: n must be at least 1");
  if (n <= kHarmonicExactCutoff) return BigReal(harmonic_exact(n), digits);
  return harmonic_asymptotic(n, digits);
}

}  // namespace rhlab::classical
