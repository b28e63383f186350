#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "rhlab/core/big_complex.hpp"
#include "rhlab/core/parallel.hpp"

namespace rhlab::li {

/// Ordinates gamma_k of zeros rho = 1/2 + i gamma_k, strictly increasing,
/// each parsed at enough precision to keep every digit of its input text.
struct ZeroTable {
  std::vector<BigReal> gammas;
  std::string source;

  std::size_t count() const noexcept { return gammas.size(); }
  const BigReal& max() const { return gammas.back(); }
};

struct LiEstimate {
  std::size_t n;
  BigReal value;       // truncated sum over the table
  BigReal tail_bound;  // heuristic bound on the omitted zeros
  std::size_t zeros_used;

  /// Positivity is only asserted when it survives the tail bound.
  bool positive() const { return value - tail_bound > 0L; }
};

inline constexpr std::size_t kMinZeros = 100;
inline constexpr std::size_t kBlockSize = 4096;

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Decimal digits in a token, which sets the precision it is parsed at.
inline int token_digits(std::string_view s) {
  int n = 0;
  for (char c : s) {
    if (c == 'e' || c == 'E') break;
    if (c >= '0' && c <= '9') ++n;
  }
  return std::max(kMinDigits, n + 5);
}

}  // namespace detail

/// One decimal ordinate per line; '#' starts a comment, blank lines are
/// skipped. Ordinates must exceed 14 and increase strictly.
inline ZeroTable parse_zeros(std::istream& in, std::string source) {
  ZeroTable table;
  table.source = std::move(source);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view text = line;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
    text = detail::trim(text);
    if (text.empty()) continue;
    BigReal gamma(kMinDigits);
    try {
      gamma = BigReal::parse(text, detail::token_digits(text));
    } catch (const DomainError&) {
      throw ParseError("not a decimal ordinate: '" + std::string(text) + "'", lineno);
    }
    if (!(gamma > 14L)) throw ParseError("ordinate " + std::string(text) + " is not above 14", lineno);
    if (!table.gammas.empty() && !(gamma > table.gammas.back())) {
      throw ParseError("ordinate " + std::string(text) + " does not exceed the previous one", lineno);
    }
    table.gammas.push_back(std::move(gamma));
  }
  if (table.gammas.empty()) throw ParseError("no zero ordinates in " + table.source, lineno + 1);
  return table;
}

inline ZeroTable parse_zeros(std::string_view text, std::string source = "<memory>") {
  std::istringstream in{std::string(text)};
  return parse_zeros(in, std::move(source));
}

inline ZeroTable load_zeros(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open zero table '" + path + "'");
  return parse_zeros(in, path);
}

/// First `count` ordinates of `table`.
inline ZeroTable truncate(const ZeroTable& table, std::size_t count) {
  if (count == 0 || count > table.count()) throw DomainError("truncate: count out of range");
  ZeroTable out;
  out.source = table.source + "[:" + std::to_string(count) + "]";
  out.gammas.assign(table.gammas.begin(), table.gammas.begin() + static_cast<std::ptrdiff_t>(count));
  return out;
}

/// Heuristic bound on the zeros above T = gamma_max. Each omitted pair adds
/// at most (n + n(n-1)(1 + 1/T)^n) / gamma^2, and with zero density
/// ln(gamma / 2 pi) / 2 pi the sum of 1/gamma^2 above T is about
/// (ln(T / 2 pi) + 1) / (2 pi T); 2 ln T / T^2 covers the error term of N(T).
inline BigReal li_tail_bound(std::size_t n, const BigReal& t_max, int digits) {
  if (n == 0) return BigReal(digits);
  const BigReal t = t_max.with_digits(digits);
  const BigReal two_pi = BigReal::pi(digits) * 2L;
  const auto nl = static_cast<long>(n);
  const BigReal growth = pow(1L + 1L / t, nl);
  const BigReal per_pair = BigReal(nl, digits) + growth * (nl * (nl - 1));
  const BigReal density = (log(t / two_pi) + 1L) / (two_pi * t) + log(t) * 2L / (t * t);
  return per_pair * density;
}

namespace detail {

inline void check_table(const ZeroTable& zeros) {
  if (zeros.count() < kMinZeros) {
    throw DomainError("li_lambda: need at least " + std::to_string(kMinZeros) + " zeros, got " +
                      std::to_string(zeros.count()));
  }
}

// Enough digits that 1 - Re w^n keeps `digits` after the ~1/gamma^2
// cancellation, and the block sums absorb the rounding of `count` terms.
inline int lambda_working_digits(const ZeroTable& zeros, int digits) {
  return working_digits(digits) + static_cast<int>(std::ceil(2.0 * std::log10(zeros.max().to_double()))) +
         static_cast<int>(std::ceil(std::log10(static_cast<double>(zeros.count()))));
}

// w = 1 - 1/rho for rho = 1/2 + i gamma.
inline BigComplex one_minus_inverse(const BigReal& gamma, int w) {
  const BigComplex rho(BigReal(0.5, w), gamma.with_digits(w));
  return 1L - 1L / rho;
}

inline std::size_t block_count(std::size_t count) { return (count + kBlockSize - 1) / kBlockSize; }

}  // namespace detail

/// lambda_1..lambda_{n_max} from lambda_n = sum_rho (1 - (1 - 1/rho)^n), each
/// conjugate pair taken together as 2 Re(1 - (1 - 1/rho)^n). Zeros are
/// summed in fixed blocks whose partial sums are added in block order, so
/// the result does not depend on the thread count.
inline std::vector<LiEstimate> li_lambda_range(std::size_t n_max, const ZeroTable& zeros, int digits,
                                               unsigned threads = 0) {
  require_digits(digits);
  detail::check_table(zeros);
  if (n_max == 0) return {};
  const int w = detail::lambda_working_digits(zeros, digits);
  const std::size_t blocks = detail::block_count(zeros.count());
  std::vector<std::vector<BigReal>> partial(blocks);
  parallel_for(blocks, threads, [&](std::size_t b) {
    std::vector<BigReal> sums(n_max, BigReal(w));
    const std::size_t end = std::min(zeros.count(), (b + 1) * kBlockSize);
    for (std::size_t i = b * kBlockSize; i < end; ++i) {
      const BigComplex step = detail::one_minus_inverse(zeros.gammas[i], w);
      BigComplex power = step;
      for (std::size_t n = 0; n < n_max; ++n) {
        sums[n] += 1L - power.re();
        power *= step;
      }
    }
    partial[b] = std::move(sums);
  });
  std::vector<LiEstimate> out;
  for (std::size_t n = 1; n <= n_max; ++n) {
    BigReal total(w);
    for (const auto& p : partial) total += p[n - 1];
    out.push_back({n, (total * 2L).with_digits(digits), li_tail_bound(n, zeros.max(), digits), zeros.count()});
  }
  return out;
}

/// lambda_n alone; (1 - 1/rho)^n by binary powering. lambda_0 = 0.
inline LiEstimate li_lambda(std::size_t n, const ZeroTable& zeros, int digits, unsigned threads = 0) {
  require_digits(digits);
  detail::check_table(zeros);
  if (n == 0) return {0, BigReal(digits), BigReal(digits), zeros.count()};
  const int w = detail::lambda_working_digits(zeros, digits);
  const std::size_t blocks = detail::block_count(zeros.count());
  std::vector<BigReal> partial(blocks, BigReal(w));
  parallel_for(blocks, threads, [&](std::size_t b) {
    BigReal sum(w);
    const std::size_t end = std::min(zeros.count(), (b + 1) * kBlockSize);
    for (std::size_t i = b * kBlockSize; i < end; ++i) {
      sum += 1L - pow(detail::one_minus_inverse(zeros.gammas[i], w), static_cast<unsigned long>(n)).re();
    }
    partial[b] = std::move(sum);
  });
  BigReal total(w);
  for (const auto& p : partial) total += p;
  return {n, (total * 2L).with_digits(digits), li_tail_bound(n, zeros.max(), digits), zeros.count()};
}

/// The same sum taken naively over rho and conj(rho) in complex arithmetic.
/// Its imaginary part is the pairing residue, zero up to rounding.
inline BigComplex li_lambda_complex(std::size_t n, const ZeroTable& zeros, int digits) {
  require_digits(digits);
  detail::check_table(zeros);
  const int w = detail::lambda_working_digits(zeros, digits);
  BigComplex sum(w);
  for (const auto& gamma : zeros.gammas) {
    const BigComplex step = detail::one_minus_inverse(gamma, w);
    const BigComplex mirror = 1L - 1L / BigComplex(BigReal(0.5, w), -gamma.with_digits(w));
    sum += (1L - pow(step, static_cast<unsigned long>(n))) + (1L - pow(mirror, static_cast<unsigned long>(n)));
  }
  return sum.with_digits(digits);
}

}  // namespace rhlab::li
