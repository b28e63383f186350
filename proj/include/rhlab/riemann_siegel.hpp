#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include "rhlab/core/big_real.hpp"

namespace rhlab::zeros {

/// Riemann-Siegel evaluation of Hardy's Z(t) in double precision, with the
/// correction terms C_0..C_4. Intended for t >= 10.
class RiemannSiegel {
 public:
  static constexpr std::size_t kCorrections = 5;

  RiemannSiegel() { build_coefficients(); }

  /// theta(t) from its asymptotic expansion.
  static double theta(double t) {
    const double t2 = t * t;
    return t / 2.0 * std::log(t / (2.0 * M_PI)) - t / 2.0 - M_PI / 8.0 + 1.0 / (48.0 * t) +
           7.0 / (5760.0 * t * t2) + 31.0 / (80640.0 * t * t2 * t2) + 127.0 / (430080.0 * t * t2 * t2 * t2);
  }

  /// Solves theta(g) = j pi by Newton iteration from `guess`.
  static double gram_point(long j, double guess) {
    double g = guess;
    for (int i = 0; i < 60; ++i) {
      const double step = (theta(g) - static_cast<double>(j) * M_PI) / (0.5 * std::log(g / (2.0 * M_PI)));
      g -= step;
      if (std::fabs(step) < 1e-13 * g) break;
    }
    return g;
  }

  double z(double t) const {
    const double a = std::sqrt(t / (2.0 * M_PI));
    const auto n_max = static_cast<std::size_t>(a);
    ensure_tables(n_max);
    const double th = theta(t);
    double sum = 0.0;
    for (std::size_t n = 1; n <= n_max; ++n) sum += inv_sqrt_[n] * std::cos(th - t * log_[n]);
    sum *= 2.0;
    const double x = 0.5 - (a - static_cast<double>(n_max));
    const double inv_a = 1.0 / a;
    double correction = 0.0;
    double power = 1.0;
    for (std::size_t k = 0; k < kCorrections; ++k) {
      correction += power * horner(coeffs_[k], x);
      power *= inv_a;
    }
    const double sign = (n_max % 2 == 1) ? 1.0 : -1.0;  // (-1)^{N-1}
    return sum + sign * std::sqrt(inv_a) * correction;
  }

 private:
  static double horner(const std::vector<double>& c, double x) {
    double r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
  }

  void ensure_tables(std::size_t n) const {
    if (log_.size() > n) return;
    for (std::size_t k = log_.size(); k <= n + 64; ++k) {
      log_.push_back(k == 0 ? 0.0 : std::log(static_cast<double>(k)));
      inv_sqrt_.push_back(k == 0 ? 0.0 : 1.0 / std::sqrt(static_cast<double>(k)));
    }
  }

  // Power series in x = 1/2 - p of Psi = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)
  // = -cos(2 pi x^2 - 5 pi / 8) / cos(2 pi x), and the standard combinations
  // of its p-derivatives giving C_1..C_4. Built once in 60-digit arithmetic.
  void build_coefficients() {
    constexpr int kDegree = 80;
    constexpr int d = 60;
    const BigReal pi = BigReal::pi(d);
    const BigReal two_pi = pi * 2L;
    std::vector<BigReal> fact(kDegree + 1, BigReal(1L, d));
    for (int n = 1; n <= kDegree; ++n) fact[n] = fact[n - 1] * static_cast<long>(n);

    std::vector<BigReal> den(kDegree + 1, BigReal(d));
    for (int n = 0; n <= kDegree; n += 2) {
      den[n] = pow(two_pi, static_cast<long>(n)) / fact[n];
      if ((n / 2) % 2 == 1) den[n] = -den[n];
    }
    const BigReal phase = pi * 5L / 8L;
    const BigReal ca = cos(phase);
    const BigReal sa = sin(phase);
    std::vector<BigReal> num(kDegree + 1, BigReal(d));
    for (int m = 0; 2 * m <= kDegree; ++m) {
      BigReal c = pow(two_pi, static_cast<long>(m)) / fact[m] * (m % 2 == 0 ? ca : sa);
      if ((m / 2) % 2 == 1) c = -c;
      num[2 * m] = -c;
    }
    std::vector<BigReal> psi(kDegree + 1, BigReal(d));
    for (int n = 0; n <= kDegree; ++n) {
      BigReal s = num[n];
      for (int k = 0; k < n; ++k) s -= psi[k] * den[n - k];
      psi[n] = s / den[0];
    }
    // m-th derivative in p; d/dp = -d/dx.
    auto deriv = [&](int m) {
      std::vector<BigReal> out(kDegree + 1, BigReal(d));
      for (int n = m; n <= kDegree; ++n) out[n - m] = psi[n] * fact[n] / fact[n - m];
      if (m % 2 == 1) {
        for (auto& v : out) v = -v;
      }
      return out;
    };
    struct Part {
      long num;
      long den;
      int pi_power;
      int order;
    };
    const std::array<std::vector<Part>, kCorrections> recipe{{
        {{1, 1, 0, 0}},
        {{-1, 96, 2, 3}},
        {{1, 64, 2, 2}, {1, 18432, 4, 6}},
        {{-1, 64, 2, 1}, {-1, 3840, 4, 5}, {-1, 5308416, 6, 9}},
        {{1, 128, 2, 0}, {19, 24576, 4, 4}, {11, 5898240, 6, 8}, {1, 2038431744, 8, 12}},
    }};
    for (std::size_t k = 0; k < kCorrections; ++k) {
      std::vector<BigReal> acc(kDegree + 1, BigReal(d));
      for (const Part& part : recipe[k]) {
        const auto dv = deriv(part.order);
        const BigReal scale = BigReal(part.num, d) / (pow(pi, static_cast<long>(part.pi_power)) * part.den);
        for (int n = 0; n <= kDegree; ++n) acc[n] += dv[n] * scale;
      }
      // |x| <= 1/2; drop the tail once it is far below double resolution.
      int keep = kDegree + 1;
      while (keep > 1 && std::fabs(acc[keep - 1].to_double()) * std::pow(0.5, keep - 1) < 1e-22) --keep;
      for (int n = 0; n < keep; ++n) coeffs_[k].push_back(acc[n].to_double());
    }
  }

  std::array<std::vector<double>, kCorrections> coeffs_;
  mutable std::vector<double> log_;
  mutable std::vector<double> inv_sqrt_;
};

}  // namespace rhlab::zeros
