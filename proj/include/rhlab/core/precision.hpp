#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "rhlab/core/errors.hpp"

namespace rhlab {

/// Smallest precision (decimal digits) any value may carry.
inline constexpr int kMinDigits = 10;

inline constexpr double kLog2Of10 = 3.321928094887362;
inline constexpr double kLog10Of2 = 0.30102999566398120;
inline constexpr double kLog10OfE = 0.43429448190325182;

inline void require_digits(int digits) {
  if (digits < kMinDigits) {
    throw DomainError("precision must be at least " + std::to_string(kMinDigits) +
                      " digits, got " + std::to_string(digits));
  }
}

/// Binary precision backing a decimal-digit precision.
inline mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * kLog2Of10)) + 8;
}

/// Guard digits added on top of a requested precision.
inline int guard_digits(int digits) {
  return std::max(20, static_cast<int>(std::ceil(0.1 * digits)));
}

/// Internal precision every operation computes with before rounding.
inline int working_digits(int digits) { return digits + guard_digits(digits); }

}  // namespace rhlab
