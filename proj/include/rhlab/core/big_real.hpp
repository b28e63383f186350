#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "rhlab/core/errors.hpp"
#include "rhlab/core/precision.hpp"

namespace rhlab {

/// Arbitrary-precision real number that carries its working precision in
/// decimal digits. Arithmetic between two values runs at the larger of the two
/// precisions; a NaN or infinity never escapes an operation.
class BigReal {
 public:
  explicit BigReal(int digits = kMinDigits) : digits_(digits) {
    require_digits(digits);
    mpfr_init2(v_, digits_to_bits(digits));
    mpfr_set_zero(v_, 1);
  }

  BigReal(long value, int digits) : BigReal(digits) { mpfr_set_si(v_, value, MPFR_RNDN); }
  BigReal(int value, int digits) : BigReal(static_cast<long>(value), digits) {}
  BigReal(unsigned long value, int digits) : BigReal(digits) { mpfr_set_ui(v_, value, MPFR_RNDN); }

  BigReal(double value, int digits) : BigReal(digits) {
    mpfr_set_d(v_, value, MPFR_RNDN);
    check("conversion from double");
  }

  BigReal(const mpz_class& value, int digits) : BigReal(digits) {
    mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN);
  }

  BigReal(const mpq_class& value, int digits) : BigReal(digits) {
    mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN);
  }

  /// Copy of `other` rounded to `digits`.
  BigReal(const BigReal& other, int digits) : BigReal(digits) {
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  BigReal(const BigReal& other) : digits_(other.digits_) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }

  BigReal(BigReal&& other) noexcept : digits_(other.digits_) {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }

  BigReal& operator=(const BigReal& other) {
    if (this != &other) {
      digits_ = other.digits_;
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }

  BigReal& operator=(BigReal&& other) noexcept {
    std::swap(digits_, other.digits_);
    mpfr_swap(v_, other.v_);
    return *this;
  }

  ~BigReal() { mpfr_clear(v_); }

  /// Parses a decimal literal ("1.25", "-3e-7"). Throws DomainError on junk.
  static BigReal parse(std::string_view text, int digits) {
    BigReal r(digits);
    const std::string s(text);
    char* end = nullptr;
    if (!s.empty()) mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (s.empty() || end == s.c_str() || *end != '\0' || !mpfr_number_p(r.v_)) {
      throw DomainError("not a decimal number: '" + s + "'");
    }
    return r;
  }

  static BigReal pi(int digits) {
    BigReal r(digits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  static BigReal euler_gamma(int digits) {
    BigReal r(digits);
    mpfr_const_euler(r.v_, MPFR_RNDN);
    return r;
  }

  static BigReal log2(int digits) {
    BigReal r(digits);
    mpfr_const_log2(r.v_, MPFR_RNDN);
    return r;
  }

  /// 10^exponent at the given precision.
  static BigReal pow10(long exponent, int digits) {
    BigReal r(digits);
    mpfr_ui_pow_ui(r.v_, 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent),
                   MPFR_RNDN);
    if (exponent < 0) mpfr_ui_div(r.v_, 1, r.v_, MPFR_RNDN);
    return r;
  }

  int digits() const noexcept { return digits_; }
  mpfr_prec_t bits() const noexcept { return mpfr_get_prec(v_); }

  mpfr_ptr get() noexcept { return v_; }
  mpfr_srcptr get() const noexcept { return v_; }

  int sign() const noexcept { return mpfr_sgn(v_); }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_integer() const noexcept { return mpfr_integer_p(v_) != 0; }

  /// Base-2 exponent e with |x| in [2^(e-1), 2^e); very negative for zero.
  long exponent2() const noexcept {
    return is_zero() ? std::numeric_limits<long>::min() / 2 : static_cast<long>(mpfr_get_exp(v_));
  }

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long() const noexcept { return mpfr_get_si(v_, MPFR_RNDN); }

  /// Same value rounded to another precision.
  BigReal with_digits(int digits) const { return BigReal(*this, digits); }

  BigReal operator-() const {
    BigReal r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  BigReal& operator+=(const BigReal& o) {
    widen(o);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return check("addition");
  }
  BigReal& operator-=(const BigReal& o) {
    widen(o);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return check("subtraction");
  }
  BigReal& operator*=(const BigReal& o) {
    widen(o);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return check("multiplication");
  }
  BigReal& operator/=(const BigReal& o) {
    widen(o);
    if (o.is_zero()) throw NumericError("division by zero");
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return check("division");
  }

  BigReal& operator+=(long o) {
    mpfr_add_si(v_, v_, o, MPFR_RNDN);
    return *this;
  }
  BigReal& operator-=(long o) {
    mpfr_sub_si(v_, v_, o, MPFR_RNDN);
    return *this;
  }
  BigReal& operator*=(long o) {
    mpfr_mul_si(v_, v_, o, MPFR_RNDN);
    return *this;
  }
  BigReal& operator/=(long o) {
    if (o == 0) throw NumericError("division by zero");
    mpfr_div_si(v_, v_, o, MPFR_RNDN);
    return *this;
  }

  BigReal& operator*=(const mpz_class& o) {
    mpfr_mul_z(v_, v_, o.get_mpz_t(), MPFR_RNDN);
    return check("multiplication");
  }

  /// this += a * b at this value's precision (one rounding for the product).
  void add_product(const BigReal& a, const mpz_class& b) {
    thread_local BigReal tmp;
    tmp.reset_bits(bits());
    mpfr_mul_z(tmp.v_, a.v_, b.get_mpz_t(), MPFR_RNDN);
    mpfr_add(v_, v_, tmp.v_, MPFR_RNDN);
    check("multiply-add");
  }

  friend BigReal operator+(BigReal a, const BigReal& b) { return a += b; }
  friend BigReal operator-(BigReal a, const BigReal& b) { return a -= b; }
  friend BigReal operator*(BigReal a, const BigReal& b) { return a *= b; }
  friend BigReal operator/(BigReal a, const BigReal& b) { return a /= b; }
  friend BigReal operator+(BigReal a, long b) { return a += b; }
  friend BigReal operator-(BigReal a, long b) { return a -= b; }
  friend BigReal operator*(BigReal a, long b) { return a *= b; }
  friend BigReal operator/(BigReal a, long b) { return a /= b; }
  friend BigReal operator+(long a, BigReal b) { return b += a; }
  friend BigReal operator*(long a, BigReal b) { return b *= a; }
  friend BigReal operator-(long a, const BigReal& b) {
    BigReal r(b.digits_);
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal operator/(long a, const BigReal& b) {
    if (b.is_zero()) throw NumericError("division by zero");
    BigReal r(b.digits_);
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r.check("division"), r;
  }

  friend bool operator==(const BigReal& a, const BigReal& b) { return mpfr_equal_p(a.v_, b.v_); }
  friend std::partial_ordering operator<=>(const BigReal& a, const BigReal& b) {
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const BigReal& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const BigReal& a, long b) {
    int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  // Unary kernels. Each runs at the argument's precision.
  friend BigReal abs(BigReal x) {
    mpfr_abs(x.v_, x.v_, MPFR_RNDN);
    return x;
  }
  friend BigReal sqrt(BigReal x) {
    if (x.sign() < 0) throw NumericError("square root of a negative number");
    mpfr_sqrt(x.v_, x.v_, MPFR_RNDN);
    return x;
  }
  friend BigReal exp(BigReal x) {
    mpfr_exp(x.v_, x.v_, MPFR_RNDN);
    return x.check("exp"), x;
  }
  friend BigReal log(BigReal x) {
    if (x.sign() <= 0) throw NumericError("logarithm of a non-positive number");
    mpfr_log(x.v_, x.v_, MPFR_RNDN);
    return x;
  }
  friend BigReal log1p(BigReal x) {
    mpfr_log1p(x.v_, x.v_, MPFR_RNDN);
    return x.check("log1p"), x;
  }
  friend BigReal sin(BigReal x) {
    mpfr_sin(x.v_, x.v_, MPFR_RNDN);
    return x;
  }
  friend BigReal cos(BigReal x) {
    mpfr_cos(x.v_, x.v_, MPFR_RNDN);
    return x;
  }
  friend BigReal floor(BigReal x) {
    mpfr_floor(x.v_, x.v_);
    return x;
  }
  friend BigReal atan2(const BigReal& y, const BigReal& x) {
    BigReal r(std::max(y.digits_, x.digits_));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend BigReal pow(const BigReal& x, const BigReal& y) {
    BigReal r(std::max(x.digits_, y.digits_));
    mpfr_pow(r.v_, x.v_, y.v_, MPFR_RNDN);
    return r.check("pow"), r;
  }
  friend BigReal pow(const BigReal& x, long n) {
    BigReal r(x.digits_);
    mpfr_pow_si(r.v_, x.v_, n, MPFR_RNDN);
    return r.check("pow"), r;
  }
  /// x * 2^e, exact.
  friend BigReal ldexp(BigReal x, long e) {
    mpfr_mul_2si(x.v_, x.v_, e, MPFR_RNDN);
    return x;
  }
  friend BigReal max(const BigReal& a, const BigReal& b) { return a < b ? b : a; }
  friend BigReal min(const BigReal& a, const BigReal& b) { return b < a ? b : a; }

  friend std::ostream& operator<<(std::ostream& os, const BigReal& x);

 private:
  void widen(const BigReal& o) {
    if (o.digits_ > digits_) {
      digits_ = o.digits_;
      mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
    }
  }

  void reset_bits(mpfr_prec_t bits) {
    if (mpfr_get_prec(v_) != bits) mpfr_set_prec(v_, bits);
  }

  BigReal& check(const char* what) {
    if (!mpfr_number_p(v_)) throw NumericError(std::string("non-finite result in ") + what);
    return *this;
  }

  int digits_;
  mpfr_t v_;
};

/// Decimal rendering with exactly `significant` significant digits (rounded to
/// nearest). Plain positional notation for moderate magnitudes, otherwise
/// d.ddd...e±XX. Deterministic: the same value always renders identically.
inline std::string to_string(const BigReal& x, int significant) {
  if (significant < 1) significant = 1;
  if (x.is_zero()) return "0";
  mpfr_exp_t e = 0;
  std::unique_ptr<char, void (*)(char*)> raw(
      mpfr_get_str(nullptr, &e, 10, static_cast<size_t>(significant), x.get(), MPFR_RNDN),
      mpfr_free_str);
  std::string mant(raw.get());
  std::string sign;
  if (!mant.empty() && mant.front() == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  const long n = static_cast<long>(mant.size());
  std::string out;
  if (e > 0 && e <= n) {
    out = mant.substr(0, static_cast<size_t>(e));
    if (e < n) out += "." + mant.substr(static_cast<size_t>(e));
  } else if (e <= 0 && e > -5) {
    out = "0." + std::string(static_cast<size_t>(-e), '0') + mant;
  } else {
    out = mant.substr(0, 1);
    if (n > 1) out += "." + mant.substr(1);
    long ex = static_cast<long>(e) - 1;
    out += (ex < 0 ? "e-" : "e+");
    std::string digits = std::to_string(ex < 0 ? -ex : ex);
    if (digits.size() < 2) digits.insert(0, "0");
    out += digits;
  }
  return sign + out;
}

/// Rendering with enough digits that parsing at the same precision restores
/// the identical binary value.
inline std::string to_exact_string(const BigReal& x) {
  return to_string(x, static_cast<int>(mpfr_get_str_ndigits(10, x.bits())));
}

inline std::ostream& operator<<(std::ostream& os, const BigReal& x) {
  return os << to_string(x, x.digits());
}

}  // namespace rhlab
