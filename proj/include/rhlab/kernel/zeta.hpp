#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "rhlab/core/big_complex.hpp"
#include "rhlab/kernel/bernoulli.hpp"
#include "rhlab/kernel/zeta_even.hpp"

namespace rhlab::kernel {

inline constexpr double kDefaultDirichletMargin = 0.1;

/// zeta(s) for Re s >= 1 + margin from the Dirichlet series: a partial sum
/// plus the Euler-Maclaurin tail correction. Absolute error below 10^-digits.
inline BigComplex zeta_dirichlet(const BigComplex& s, int digits,
                                 double margin = kDefaultDirichletMargin) {
  require_digits(digits);
  if (s.re() == 1L && s.im().is_zero()) throw PoleError("zeta_dirichlet: pole at s = 1");
  if (s.re().to_double() < 1.0 + margin) {
    throw DomainError("zeta_dirichlet: Re s = " + to_string(s.re(), 8) +
                      " is closer to 1 than the margin " + std::to_string(margin) +
                      "; precision unattainable from the Dirichlet series");
  }
  const int w = working_digits(digits);
  const BigComplex sw = s.with_digits(w);
  const double abs_s = abs(sw).to_double();

  // Euler-Maclaurin terms behave like (|s + 2k| / (2 pi N))^{2k}; N comfortably
  // above |s| and the target digit count keeps them shrinking geometrically.
  const long n_split = static_cast<long>(std::ceil(abs_s + 0.35 * w + 10));

  BigComplex sum(w);
  for (long n = n_split - 1; n >= 1; --n) sum += pow(BigReal(n, w), -sw);

  const BigReal big_n(n_split, w);
  const BigComplex n_pow = pow(big_n, -sw);  // N^{-s}
  sum += n_pow * big_n / (sw - 1L);          // N^{1-s}/(s-1)
  sum += n_pow / 2L;

  const BigReal eps = BigReal::pow10(-w - 2, w);
  const BigReal inv_n_sq = 1L / (big_n * big_n);
  // T_k = B_2k/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
  BigComplex rising = sw;               // s(s+1)...(s+2k-2)
  BigComplex power = n_pow / big_n;     // N^{-s-2k+1}
  Integer factorial = 2;                // (2k)!
  std::size_t batch = 32;
  auto bern = bernoulli_even(batch + 1);
  for (std::size_t k = 1;; ++k) {
    if (k > batch) {
      batch *= 2;
      bern = bernoulli_even(batch + 1);
    }
    const BigComplex term = rising * power * BigReal(Rational(bern[k] / Rational(factorial)), w);
    sum += term;
    if (abs(term) < eps) break;
    if (k > 4 * static_cast<std::size_t>(w) + 100) {
      throw ConditioningError("zeta_dirichlet: Euler-Maclaurin tail failed to converge");
    }
    rising *= (sw + static_cast<long>(2 * k - 1)) * (sw + static_cast<long>(2 * k));
    power *= inv_n_sq;
    factorial *= static_cast<unsigned long>((2 * k + 1) * (2 * k + 2));
  }
  return sum.with_digits(digits);
}

inline BigComplex zeta_dirichlet(double s, int digits, double margin = kDefaultDirichletMargin) {
  return zeta_dirichlet(BigComplex(s, 0.0, digits), digits, margin);
}

/// Smallest |1 - 2^{1-s}| accepted by zeta_continued before it reports the
/// point as ill-conditioned.
inline constexpr double kEtaPrefactorFloor = 1e-6;

/// zeta(s) for Re s > 0, s != 1, by analytic continuation through the
/// alternating series eta(s) = sum (-1)^{n-1} n^{-s}, accelerated with the
/// Chebyshev-weighted (Borwein / Cohen-Rodriguez Villegas-Zagier) scheme, and
/// zeta = eta / (1 - 2^{1-s}).
inline BigComplex zeta_continued(const BigComplex& s, int digits) {
  require_digits(digits);
  if (s.re() == 1L && s.im().is_zero()) throw PoleError("zeta_continued: pole at s = 1");
  if (s.re().sign() <= 0) {
    throw DomainError("zeta_continued: requires Re s > 0, got Re s = " + to_string(s.re(), 8));
  }
  const double t = std::fabs(s.im().to_double());
  const double sigma = s.re().to_double();

  const int probe_digits = 30;
  const BigComplex sp = s.with_digits(probe_digits);
  const double prefactor =
      abs(1L - pow(BigReal(2L, probe_digits), 1L - sp)).to_double();
  if (prefactor < kEtaPrefactorFloor) {
    throw ConditioningError("zeta_continued: 1 - 2^(1-s) vanishes near s = " + to_string(s, 12) +
                            " (|prefactor| = " + std::to_string(prefactor) + ")");
  }

  // Acceleration error ~ (3 + sqrt 8)^{-n} (1 + 2|t|) e^{pi |t| / 2} / |Gamma(s)|;
  // the same e^{pi |t| / 2} growth is lost to cancellation inside the sum.
  const double loss = (M_PI * t / 2.0 + std::log(1.0 + 2.0 * t)) * kLog10OfE +
                      std::max(0.0, -std::log10(prefactor)) +
                      std::max(0.0, (0.5 - sigma) * std::log10(2.0 + t)) * 2.0;
  const int w = working_digits(digits) + static_cast<int>(std::ceil(loss));
  const long n = static_cast<long>(std::ceil((w + 5) / std::log10(3.0 + std::sqrt(8.0)))) + 2;

  // d_n - d_k = sum_{i=k+1}^{n} e_i with e_i = n (n+i-1)! 4^i / ((n-i)! (2i)!),
  // accumulated from the top so no subtraction is needed.
  std::vector<BigReal> term(static_cast<std::size_t>(n) + 1, BigReal(w));
  term[0] = BigReal(1L, w);
  for (long i = 0; i < n; ++i) {
    term[static_cast<std::size_t>(i) + 1] = term[static_cast<std::size_t>(i)] *
                                            (2L * (n + i) * (n - i)) /
                                            ((2L * i + 1) * (i + 1));
  }
  const BigComplex sw = s.with_digits(w);
  BigComplex eta(w);
  BigReal tail(w);
  for (long k = n - 1; k >= 0; --k) {
    tail += term[static_cast<std::size_t>(k) + 1];
    BigComplex contribution = pow(BigReal(k + 1, w), -sw) * tail;
    if (k % 2 == 0) {
      eta += contribution;
    } else {
      eta -= contribution;
    }
  }
  BigReal d_n = tail + term[0];
  eta /= d_n;
  const BigComplex zeta = eta / (1L - pow(BigReal(2L, w), 1L - sw));
  return zeta.with_digits(digits);
}

inline BigComplex zeta_continued(double s, int digits) {
  return zeta_continued(BigComplex(s, 0.0, digits), digits);
}

/// zeta(s) from the truncated binomial-moment representation
///   zeta(s) = 1/(s-1) * sum_{k=0}^{K} (1 - s/2)_k / k! * A_k,
///   A_k = sum_{j=0}^{k} (-1)^j C(k,j) (2j+1) zeta(2j+2).
/// The Gamma ratio is carried as the product prod_{j=1}^{k} (j - s/2) / k,
/// so even integer s hits no Gamma pole. A_k cancels down from ~2^k, which
/// the working precision absorbs.
inline BigComplex zeta_maslanka(const BigComplex& s, std::size_t truncation, int digits,
                                const ZetaEvenTable* table = nullptr) {
  require_digits(digits);
  if (s.re() == 1L && s.im().is_zero()) throw PoleError("zeta_maslanka: pole at s = 1");
  if (truncation < 1) throw DomainError("zeta_maslanka: truncation K must be at least 1");
  const int w = working_digits(digits) +
                static_cast<int>(std::ceil(kLog10Of2 * static_cast<double>(truncation))) +
                static_cast<int>(std::ceil(std::log10(2.0 * truncation + 1.0)));

  std::optional<ZetaEvenTable> own;
  if (table == nullptr || table->size() < truncation + 1 || table->digits() < w) {
    own.emplace(ZetaEvenTable::build(truncation + 1, w));
    table = &*own;
  }

  const BigComplex half_s = s.with_digits(w) / 2L;
  BigComplex ratio(BigReal(1L, w));  // (1 - s/2)_k / k!
  BigComplex sum(w);
  BigReal a_k(w);
  for (std::size_t k = 0; k <= truncation; ++k) {
    if (k > 0) {
      ratio *= (BigComplex(BigReal(static_cast<long>(k), w)) - half_s);
      ratio /= static_cast<long>(k);
    }
    a_k = BigReal(w);
    Integer binom = 1;
    for (std::size_t j = 0; j <= k; ++j) {
      const Integer weighted = binom * static_cast<unsigned long>(2 * j + 1);
      if (j % 2 == 0) {
        a_k.add_product(table->zeta(j + 1), weighted);
      } else {
        a_k.add_product(table->zeta(j + 1), Integer(-weighted));
      }
      binom = binom * static_cast<unsigned long>(k - j) / static_cast<unsigned long>(j + 1);
    }
    sum += ratio * a_k;
  }
  return (sum / (s.with_digits(w) - 1L)).with_digits(digits);
}

inline BigComplex zeta_maslanka(double s, std::size_t truncation, int digits) {
  return zeta_maslanka(BigComplex(s, 0.0, digits), truncation, digits);
}

}  // namespace rhlab::kernel
