#pragma once

#include <string>

#include "rhlab/core/big_complex.hpp"
#include "rhlab/core/big_real.hpp"

namespace rhlab::testing {

// log10 |a - b|, or -inf-like for exact agreement.
inline double log10_gap(const BigReal& a, const BigReal& b) {
  const BigReal d = abs(a - b);
  if (d.is_zero()) return -1e9;
  return (log(d) / log(BigReal(10L, d.digits()))).to_double();
}

inline bool within(const BigReal& a, const BigReal& b, long exponent) {
  const int d = std::max(a.digits(), b.digits());
  return abs(a - b) <= BigReal::pow10(exponent, d);
}

inline bool within(const BigComplex& a, const BigComplex& b, long exponent) {
  const int d = std::max(a.digits(), b.digits());
  return abs(a - b) <= BigReal::pow10(exponent, d);
}

inline BigReal lit(const char* text, int digits = 60) { return BigReal::parse(text, digits); }

}  // namespace rhlab::testing
