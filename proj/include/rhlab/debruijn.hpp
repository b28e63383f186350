#pragma once

#include <cmath>
#include <cstddef>
#include <deque>
#include <mutex>
#include <string>
#include <vector>

#include "rhlab/core/big_complex.hpp"
#include "rhlab/core/parallel.hpp"
#include "rhlab/kernel/gamma.hpp"
#include "rhlab/kernel/zeta.hpp"

namespace rhlab::debruijn {

struct PhiProfile {
  BigReal t;
  BigReal value;
  std::size_t terms_used;
};

struct HEvaluation {
  BigReal z;
  BigReal lambda;
  BigReal value;
  BigReal quadrature_error;  // |S_k - S_{k-1}| at the accepted level
  std::size_t nodes;
};

/// A sign change of H(., lambda) refined to width <= kZeroTolerance.
struct ZeroBracket {
  double lo;
  double hi;
  double mid() const noexcept { return (lo + hi) / 2.0; }
};

inline constexpr double kMaxLambda = 1.0;
inline constexpr double kZeroTolerance = 1e-8;

namespace detail {

// log10 of 2 pi^2 n^4 e^{9t} e^{-pi n^2 e^{4t}}, which bounds the n-th term of Phi.
inline double phi_term_log10(double n, double t) {
  const double decay = M_PI * n * n * std::exp(4.0 * t);
  return std::log10(2.0 * M_PI * M_PI) + 4.0 * std::log10(n) + (9.0 * t - decay) * kLog10OfE;
}

}  // namespace detail

/// Phi(t) = sum_{n>=1} (2 pi^2 n^4 e^{9t} - 3 pi n^2 e^{5t}) exp(-pi n^2 e^{4t}).
/// Term n is included while its bound is at least 10^{-digits-5}; n = 1 always is.
inline PhiProfile phi(const BigReal& t, int digits) {
  require_digits(digits);
  if (t.sign() < 0) throw DomainError("phi: requires t >= 0");
  const int w = working_digits(digits);
  const BigReal tw = t.with_digits(w);
  const BigReal pi = BigReal::pi(w);
  const BigReal e4 = exp(tw * 4L);
  const BigReal e5 = exp(tw * 5L);
  const BigReal e9 = exp(tw * 9L);
  const double td = t.to_double();
  BigReal sum(w);
  std::size_t n = 1;
  for (;; ++n) {
    const long n2 = static_cast<long>(n * n);
    const BigReal poly = pi * pi * 2L * (n2 * n2) * e9 - pi * 3L * n2 * e5;
    sum += poly * exp(-(pi * n2 * e4));
    if (detail::phi_term_log10(static_cast<double>(n + 1), td) < -(digits + 5)) break;
  }
  return {t, sum.with_digits(digits), n};
}

inline PhiProfile phi(double t, int digits) { return phi(BigReal(t, digits + 10), digits); }

/// Xi(z) = xi(1/2 + iz) = -1/2 (z^2 + 1/4) pi^{-s/2} Gamma(s/2) zeta(s), s = 1/2 + iz.
/// Real for real z; the imaginary residue of the complex evaluation is checked
/// against 10^{-digits+2} times the size of the factors and then dropped.
inline BigReal xi_on_line(const BigReal& z, int digits) {
  require_digits(digits);
  const int w = working_digits(digits) + 5;
  const BigReal zw = z.with_digits(w);
  const BigComplex s(BigReal(0.5, w), zw);
  const BigComplex half_s = s / 2L;
  const BigComplex gamma_part = pow(BigReal::pi(w), -half_s) * kernel::gamma_complex(half_s, w);
  const BigComplex zeta = kernel::zeta_continued(s, w);
  const BigReal factor = -(zw * zw + BigReal(0.25, w)) / 2L;
  const BigComplex value = gamma_part * zeta * factor;
  const BigReal scale = abs(factor) * abs(gamma_part) * max(BigReal(1L, w), abs(zeta));
  if (abs(value.im()) > scale * BigReal::pow10(-(digits - 2), w)) {
    throw ConditioningError("xi_on_line: imaginary residue " + to_string(value.im(), 6) + " at z = " +
                            to_string(z, 12));
  }
  return value.re().with_digits(digits);
}

inline BigReal xi_on_line(double z, int digits) { return xi_on_line(BigReal(z, digits + 10), digits); }

/// Truncation point T of the H integral: the tail bound 2 x (n = 1 term bound)
/// times e^{lambda T^2} is below 10^{-digits-5} from T on.
inline double h_cutoff(double lambda, int digits) {
  const double step = 1.0 / 64.0;
  double t = step;
  while (std::log10(2.0) + detail::phi_term_log10(1.0, t) + std::max(lambda, 0.0) * t * t * kLog10OfE >=
         -(digits + 5)) {
    t += step;
  }
  return t;
}

/// H(z, lambda) = integral_0^T Phi(t) e^{lambda t^2} cos(z t) dt by the
/// trapezoid rule with node doubling. The integrand is even in t and
/// double-exponentially small at T, so the rule converges spectrally and
/// |S_k - S_{k-1}| overstates the error of S_k. Node values depend only on
/// lambda and are shared by every z evaluated through the same object.
class HQuadrature {
 public:
  static constexpr std::size_t kBaseIntervals = 32;
  static constexpr std::size_t kMaxLevels = 14;

  HQuadrature(double lambda, int digits) : lambda_(lambda), digits_(digits) {
    require_digits(digits);
    if (!(lambda <= kMaxLambda)) {
      throw DomainError("H(z, lambda): lambda = " + std::to_string(lambda) + " exceeds " +
                        std::to_string(kMaxLambda) + "; the cutoff rule does not dominate e^{lambda t^2}");
    }
    w_ = working_digits(digits);
    cutoff_ = h_cutoff(lambda, digits);
  }

  double lambda() const noexcept { return lambda_; }
  double cutoff() const noexcept { return cutoff_; }

  /// `extra_levels` doublings beyond the accepted one, for stability checks.
  HEvaluation evaluate(const BigReal& z, std::size_t extra_levels = 0) const {
    const BigReal zw = z.with_digits(w_);
    const BigReal big_t(cutoff_, w_);
    const BigReal tol = BigReal::pow10(-digits_, w_);
    // At least 8 nodes per period of cos(z t) before convergence is judged.
    const double zd = std::fabs(z.to_double());
    const double h_needed = zd > 0 ? 2.0 * M_PI / (8.0 * zd) : cutoff_;

    const auto& base = level(0);
    BigReal h = big_t / static_cast<long>(kBaseIntervals);
    BigReal sum = base.front() / 2L + base.back() * cos(zw * big_t) / 2L;
    for (std::size_t j = 1; j < kBaseIntervals; ++j) {
      sum += base[j] * cos(zw * h * static_cast<long>(j));
    }
    sum *= h;

    std::size_t intervals = kBaseIntervals;
    std::size_t remaining = 0;
    bool converged = false;
    BigReal diff(w_);
    for (std::size_t k = 1; k <= kMaxLevels; ++k) {
      const auto& fresh = level(k);
      h /= 2L;
      BigReal add(w_);
      for (std::size_t j = 0; j < fresh.size(); ++j) {
        add += fresh[j] * cos(zw * h * static_cast<long>(2 * j + 1));
      }
      BigReal next = sum / 2L + add * h;
      intervals *= 2;
      if (!converged) diff = abs(next - sum);
      sum = std::move(next);
      if (converged) {
        if (--remaining == 0) break;
        continue;
      }
      if (k >= 2 && cutoff_ / static_cast<double>(intervals) <= h_needed && diff <= tol) {
        converged = true;
        remaining = extra_levels;
        if (remaining == 0) break;
      }
    }
    if (!converged) {
      throw ConditioningError("H(z, lambda): trapezoid did not settle at z = " + to_string(z, 10));
    }
    return {z, BigReal(lambda_, digits_), sum.with_digits(digits_ + 5), diff.with_digits(digits_),
            intervals + 1};
  }

  HEvaluation evaluate(double z, std::size_t extra_levels = 0) const {
    return evaluate(BigReal(z, w_), extra_levels);
  }

 private:
  // Level 0 holds t_j = j T / N for j = 0..N; level k >= 1 the odd nodes
  // (2j + 1) T / (N 2^k) added by the k-th doubling.
  const std::vector<BigReal>& level(std::size_t k) const {
    std::lock_guard<std::mutex> lock(mutex_);
    while (levels_.size() <= k) {
      const std::size_t m = levels_.size();
      const BigReal big_t(cutoff_, w_);
      const BigReal lam(lambda_, w_);
      std::vector<BigReal> values;
      auto node = [&](const BigReal& t) {
        return phi(t, w_).value * exp(lam * t * t);
      };
      if (m == 0) {
        for (std::size_t j = 0; j <= kBaseIntervals; ++j) {
          values.push_back(node(big_t * static_cast<long>(j) / static_cast<long>(kBaseIntervals)));
        }
      } else {
        const std::size_t count = kBaseIntervals << (m - 1);
        const BigReal h = big_t / static_cast<long>(kBaseIntervals << m);
        for (std::size_t j = 0; j < count; ++j) values.push_back(node(h * static_cast<long>(2 * j + 1)));
      }
      levels_.push_back(std::move(values));
    }
    return levels_[k];
  }

  double lambda_;
  int digits_;
  int w_ = 0;
  double cutoff_ = 0;
  mutable std::mutex mutex_;
  mutable std::deque<std::vector<BigReal>> levels_;
};

/// H(z, lambda) to absolute accuracy 10^-digits. lambda must not exceed 1.
inline HEvaluation h_lambda(const BigReal& z, double lambda, int digits) {
  return HQuadrature(lambda, digits).evaluate(z);
}

inline HEvaluation h_lambda(double z, double lambda, int digits) {
  return HQuadrature(lambda, digits).evaluate(z);
}

/// Digits needed to resolve the sign of H(z, lambda <= 0) up to |z| = z_max:
/// H decays roughly like e^{-pi z / 8}.
inline int scan_digits(double z_max, int digits) {
  return digits + static_cast<int>(std::ceil(M_PI * std::fabs(z_max) / 8.0 * kLog10OfE));
}

/// Sign changes of H(., lambda) on the grid z_lo, z_lo + step, ..., z_hi,
/// each refined by bisection to width kZeroTolerance. Sorted ascending.
inline std::vector<ZeroBracket> real_zero_scan(double lambda, double z_lo, double z_hi, double step,
                                               int digits = 20, unsigned threads = 0) {
  if (!(step > 0)) throw DomainError("real_zero_scan: step must be positive");
  if (!(z_hi > z_lo)) return {};
  const HQuadrature quad(lambda, scan_digits(std::max(std::fabs(z_lo), std::fabs(z_hi)), digits));
  std::vector<double> grid;
  for (std::size_t i = 0;; ++i) {
    const double z = z_lo + static_cast<double>(i) * step;
    if (z >= z_hi) break;
    grid.push_back(z);
  }
  grid.push_back(z_hi);
  std::vector<int> sign(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t i) { sign[i] = quad.evaluate(grid[i]).value.sign(); });

  std::vector<ZeroBracket> brackets;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (sign[i] == 0) {
      brackets.push_back({grid[i], grid[i]});
    } else if (sign[i] * sign[i + 1] < 0) {
      brackets.push_back({grid[i], grid[i + 1]});
    }
  }
  if (sign.back() == 0) brackets.push_back({grid.back(), grid.back()});

  parallel_for(brackets.size(), threads, [&](std::size_t b) {
    ZeroBracket& br = brackets[b];
    if (br.lo == br.hi) return;
    int s_lo = quad.evaluate(br.lo).value.sign();
    while (br.hi - br.lo > kZeroTolerance) {
      const double mid = br.mid();
      const int s = quad.evaluate(mid).value.sign();
      if (s == 0) {
        br.lo = br.hi = mid;
        break;
      }
      if (s == s_lo) {
        br.lo = mid;
      } else {
        br.hi = mid;
      }
    }
  });
  return brackets;
}

}  // namespace rhlab::debruijn
