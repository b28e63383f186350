#pragma once

#include <algorithm>
#include <string>
#include <utility>

#include "rhlab/core/big_real.hpp"

namespace rhlab {

/// Complex number with BigReal components held at equal precision.
class BigComplex {
 public:
  explicit BigComplex(int digits = kMinDigits) : re_(digits), im_(digits) {}

  BigComplex(BigReal re, BigReal im) : re_(std::move(re)), im_(std::move(im)) { equalize(); }

  explicit BigComplex(BigReal re) : re_(std::move(re)), im_(re_.digits()) {}

  BigComplex(double re, double im, int digits) : re_(re, digits), im_(im, digits) {}

  int digits() const noexcept { return re_.digits(); }

  const BigReal& re() const noexcept { return re_; }
  const BigReal& im() const noexcept { return im_; }

  bool is_real() const noexcept { return im_.is_zero(); }

  BigComplex with_digits(int digits) const {
    return BigComplex(re_.with_digits(digits), im_.with_digits(digits));
  }

  BigComplex conj() const { return BigComplex(re_, -im_); }

  BigComplex operator-() const { return BigComplex(-re_, -im_); }

  BigComplex& operator+=(const BigComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  BigComplex& operator*=(const BigComplex& o) {
    BigReal re = re_ * o.re_ - im_ * o.im_;
    im_ = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    return *this;
  }
  BigComplex& operator/=(const BigComplex& o) {
    const BigReal den = o.re_ * o.re_ + o.im_ * o.im_;
    if (den.is_zero()) throw NumericError("complex division by zero");
    BigReal re = (re_ * o.re_ + im_ * o.im_) / den;
    im_ = (im_ * o.re_ - re_ * o.im_) / den;
    re_ = std::move(re);
    return *this;
  }
  BigComplex& operator*=(const BigReal& o) {
    re_ *= o;
    im_ *= o;
    return *this;
  }
  BigComplex& operator/=(const BigReal& o) {
    re_ /= o;
    im_ /= o;
    return *this;
  }
  BigComplex& operator+=(const BigReal& o) {
    re_ += o;
    return *this;
  }
  BigComplex& operator-=(const BigReal& o) {
    re_ -= o;
    return *this;
  }
  BigComplex& operator*=(long o) {
    re_ *= o;
    im_ *= o;
    return *this;
  }
  BigComplex& operator/=(long o) {
    re_ /= o;
    im_ /= o;
    return *this;
  }
  BigComplex& operator+=(long o) {
    re_ += o;
    return *this;
  }
  BigComplex& operator-=(long o) {
    re_ -= o;
    return *this;
  }

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, const BigComplex& b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigComplex& b) { return a /= b; }
  friend BigComplex operator*(BigComplex a, const BigReal& b) { return a *= b; }
  friend BigComplex operator*(const BigReal& b, BigComplex a) { return a *= b; }
  friend BigComplex operator/(BigComplex a, const BigReal& b) { return a /= b; }
  friend BigComplex operator+(BigComplex a, const BigReal& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigReal& b) { return a -= b; }
  friend BigComplex operator*(BigComplex a, long b) { return a *= b; }
  friend BigComplex operator/(BigComplex a, long b) { return a /= b; }
  friend BigComplex operator+(BigComplex a, long b) { return a += b; }
  friend BigComplex operator-(BigComplex a, long b) { return a -= b; }
  friend BigComplex operator-(long a, const BigComplex& b) { return BigComplex(a - b.re_, -b.im_); }
  friend BigComplex operator/(long a, const BigComplex& b) {
    return BigComplex(BigReal(a, b.digits())) / b;
  }

  /// |z|^2
  friend BigReal norm(const BigComplex& z) { return z.re_ * z.re_ + z.im_ * z.im_; }

  friend BigReal abs(const BigComplex& z) {
    BigReal r(z.digits());
    mpfr_hypot(r.get(), z.re_.get(), z.im_.get(), MPFR_RNDN);
    return r;
  }

  friend BigReal arg(const BigComplex& z) { return atan2(z.im_, z.re_); }

  friend BigComplex exp(const BigComplex& z) {
    const BigReal m = exp(z.re_);
    BigReal s(z.digits()), c(z.digits());
    mpfr_sin_cos(s.get(), c.get(), z.im_.get(), MPFR_RNDN);
    return BigComplex(m * c, m * s);
  }

  /// Principal branch.
  friend BigComplex log(const BigComplex& z) {
    if (z.re_.is_zero() && z.im_.is_zero()) throw NumericError("logarithm of zero");
    return BigComplex(log(abs(z)), arg(z));
  }

  /// base^s for a positive real base, via exp(s log base).
  friend BigComplex pow(const BigReal& base, const BigComplex& s) {
    if (base.sign() <= 0) throw NumericError("non-positive real base in complex power");
    return exp(s * log(base));
  }

  /// Principal z^w.
  friend BigComplex pow(const BigComplex& z, const BigComplex& w) { return exp(w * log(z)); }

  /// z^n by binary powering.
  friend BigComplex pow(BigComplex z, unsigned long n) {
    BigComplex acc(BigReal(1L, z.digits()));
    while (n > 0) {
      if (n & 1UL) acc *= z;
      n >>= 1;
      if (n > 0) z *= z;
    }
    return acc;
  }

 private:
  void equalize() {
    const int d = std::max(re_.digits(), im_.digits());
    if (re_.digits() != d) re_ = re_.with_digits(d);
    if (im_.digits() != d) im_ = im_.with_digits(d);
  }

  BigReal re_;
  BigReal im_;
};

inline std::string to_string(const BigComplex& z, int significant) {
  std::string im = to_string(abs(z.im()), significant);
  return to_string(z.re(), significant) + (z.im().sign() < 0 ? " - " : " + ") + im + "i";
}

}  // namespace rhlab
