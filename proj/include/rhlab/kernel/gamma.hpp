#pragma once

#include <cmath>
#include <string>

#include "rhlab/core/big_complex.hpp"
#include "rhlab/kernel/bernoulli.hpp"

namespace rhlab::kernel {

namespace detail {

// Stirling series for log Gamma(w), Re w large: terms are added until they
// drop below 10^-working relative to 1.
inline BigComplex stirling_log_gamma(const BigComplex& w, int working) {
  const BigReal half_log_two_pi = log(BigReal::pi(working) * 2L) / 2L;
  BigComplex result = (w - BigReal(0.5, working)) * log(w) - w + half_log_two_pi;

  const BigReal eps = BigReal::pow10(-working - 2, working);
  const BigComplex inv_w = 1L / w;
  const BigComplex inv_w_sq = inv_w * inv_w;
  BigComplex power = inv_w;  // w^{-(2k-1)}
  std::size_t k = 1;
  std::size_t batch = 16;
  auto bern = bernoulli_even(batch + 1);
  BigReal previous(working);
  for (;; ++k) {
    if (k > batch) {
      batch *= 2;
      bern = bernoulli_even(batch + 1);
    }
    const Rational coeff = bern[k] / Rational(static_cast<long>(2 * k * (2 * k - 1)));
    BigComplex term = power * BigReal(coeff, working);
    const BigReal size = abs(term);
    result += term;
    if (size < eps) break;
    if (k > 4 && size > previous) {
      throw ConditioningError("Stirling series diverged before reaching requested accuracy");
    }
    previous = size;
    power *= inv_w_sq;
  }
  return result;
}

}  // namespace detail

/// Gamma(z) for complex z, relative error below 10^-digits. Shifted Stirling
/// asymptotics, lowered back to z by the recurrence Gamma(z) = Gamma(z+r)/(z)_r.
inline BigComplex gamma_complex(const BigComplex& z, int digits) {
  require_digits(digits);
  if (z.im().is_zero() && z.re().is_integer() && z.re().sign() <= 0) {
    throw PoleError("gamma: pole at non-positive integer " + to_string(z.re(), 6));
  }
  const int w = working_digits(digits) + 5;
  const BigComplex zw = z.with_digits(w);

  const double radius = static_cast<double>(w);
  const double re = zw.re().to_double();
  const double im = std::fabs(zw.im().to_double());
  long shift = 0;
  if (im < radius) {
    shift = std::max(0L, static_cast<long>(std::ceil(radius - re)));
  } else {
    shift = std::max(0L, static_cast<long>(std::ceil(1.0 - re)));
  }

  BigComplex product(BigReal(1L, w));
  BigComplex arg = zw;
  for (long j = 0; j < shift; ++j) {
    product *= arg;
    arg += 1L;
  }
  const BigComplex value = exp(detail::stirling_log_gamma(arg, w)) / product;
  return value.with_digits(digits);
}

}  // namespace rhlab::kernel
