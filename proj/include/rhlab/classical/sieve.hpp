#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "rhlab/core/errors.hpp"
#include "rhlab/core/parallel.hpp"

namespace rhlab::classical {

/// Largest table sigma_sieve will materialise (8 bytes per entry).
inline constexpr std::uint64_t kMaxSigmaTable = 100'000'000;

/// Largest bound accepted by the streaming scans and the prime sieve.
inline constexpr std::uint64_t kMaxScanBound = 1'000'000'000;
inline constexpr std::uint64_t kMaxPrimeBound = 10'000'000'000;

/// Above this bound sigma_sieve switches to segments.
inline constexpr std::uint64_t kSegmentThreshold = 10'000'000;
inline constexpr std::uint64_t kSegmentLength = 1u << 20;

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

/// sigma(n) for n in [lo, hi), lo >= 1. Every divisor pair (d, n/d) with
/// d <= n/d is visited once from its smaller member d <= sqrt(n).
inline std::vector<std::uint64_t> sigma_segment(std::uint64_t lo, std::uint64_t hi) {
  if (lo < 1 || hi < lo) throw DomainError("sigma_segment: need 1 <= lo <= hi");
  std::vector<std::uint64_t> out(hi - lo, 0);
  if (hi == lo) return out;
  const std::uint64_t root = isqrt(hi - 1);
  for (std::uint64_t d = 1; d <= root; ++d) {
    std::uint64_t m = std::max(d * d, (lo + d - 1) / d * d);
    for (; m < hi; m += d) {
      const std::uint64_t q = m / d;
      out[m - lo] += (q == d) ? d : d + q;
    }
  }
  return out;
}

/// sigma(n) for n = 1..N; sigma(0) is stored as 0 so indices are direct.
class DivisorSigmaTable {
 public:
  DivisorSigmaTable(std::uint64_t limit, std::vector<std::uint64_t> sigma)
      : limit_(limit), sigma_(std::move(sigma)) {}

  std::uint64_t limit() const noexcept { return limit_; }
  std::uint64_t operator[](std::uint64_t n) const { return sigma_[n]; }
  std::uint64_t at(std::uint64_t n) const {
    if (n < 1 || n > limit_) throw DomainError("sigma: index " + std::to_string(n) + " out of range");
    return sigma_[n];
  }
  const std::vector<std::uint64_t>& values() const noexcept { return sigma_; }

 private:
  std::uint64_t limit_;
  std::vector<std::uint64_t> sigma_;
};

/// Exact divisor sums up to N. Plain divisor accumulation up to
/// kSegmentThreshold, independent segments above it.
inline DivisorSigmaTable sigma_sieve(std::uint64_t limit, unsigned threads = 0) {
  if (limit < 1) throw DomainError("sigma_sieve: N must be at least 1");
  if (limit > kMaxSigmaTable) {
    throw CapacityError("sigma_sieve: N = " + std::to_string(limit) + " exceeds the table capacity " +
                        std::to_string(kMaxSigmaTable));
  }
  std::vector<std::uint64_t> sigma(limit + 1, 0);
  if (limit <= kSegmentThreshold) {
    for (std::uint64_t d = 1; d <= limit; ++d) {
      for (std::uint64_t m = d; m <= limit; m += d) sigma[m] += d;
    }
  } else {
    const std::uint64_t segments = (limit + kSegmentLength - 1) / kSegmentLength;
    parallel_for(segments, threads, [&](std::size_t s) {
      const std::uint64_t lo = 1 + s * kSegmentLength;
      const std::uint64_t hi = std::min(limit + 1, lo + kSegmentLength);
      const auto part = sigma_segment(lo, hi);
      std::copy(part.begin(), part.end(), sigma.begin() + static_cast<std::ptrdiff_t>(lo));
    });
  }
  return DivisorSigmaTable(limit, std::move(sigma));
}

struct PiCheckpoint {
  std::uint64_t x;
  std::uint64_t pi;
};

namespace detail {

// Odd primes up to n by a plain odd-only sieve (used for base primes).
inline std::vector<std::uint32_t> small_odd_primes(std::uint32_t n) {
  std::vector<std::uint32_t> primes;
  if (n < 3) return primes;
  std::vector<bool> composite(n / 2 + 1, false);  // index i <-> 2i + 1
  for (std::uint64_t i = 1; 2 * i + 1 <= n; ++i) {
    if (composite[i]) continue;
    const std::uint64_t p = 2 * i + 1;
    primes.push_back(static_cast<std::uint32_t>(p));
    for (std::uint64_t m = p * p; m <= n; m += 2 * p) composite[m / 2] = true;
  }
  return primes;
}

}  // namespace detail

/// Exact pi(x) at each checkpoint (sorted on output, duplicates kept) by a
/// segmented odd-only bit sieve up to the largest checkpoint.
inline std::vector<PiCheckpoint> prime_pi_sieve(std::uint64_t limit,
                                                std::vector<std::uint64_t> checkpoints) {
  if (limit < 2) throw DomainError("prime_pi_sieve: N must be at least 2");
  if (limit > kMaxPrimeBound) {
    throw CapacityError("prime_pi_sieve: N = " + std::to_string(limit) + " exceeds capacity " +
                        std::to_string(kMaxPrimeBound));
  }
  std::sort(checkpoints.begin(), checkpoints.end());
  for (auto x : checkpoints) {
    if (x > limit) throw DomainError("prime_pi_sieve: checkpoint " + std::to_string(x) + " above N");
  }
  std::vector<PiCheckpoint> out;
  out.reserve(checkpoints.size());
  auto next = checkpoints.begin();
  while (next != checkpoints.end() && *next < 2) out.push_back({*next++, 0});
  if (next == checkpoints.end()) return out;

  const auto base = detail::small_odd_primes(static_cast<std::uint32_t>(isqrt(limit)));
  std::uint64_t count = 1;  // the prime 2
  // Segment covers odd numbers lo, lo+2, ..., one bit each.
  const std::uint64_t span = 2 * kSegmentLength;
  std::vector<std::uint64_t> bits(kSegmentLength / 64);
  for (std::uint64_t lo = 3; lo <= limit && next != checkpoints.end(); lo += span) {
    const std::uint64_t hi = std::min(limit + 1, lo + span);  // exclusive
    std::fill(bits.begin(), bits.end(), ~std::uint64_t{0});
    for (const std::uint64_t p : base) {
      if (p * p >= hi) break;
      std::uint64_t m = std::max(p * p, (lo + p - 1) / p * p);
      if (m % 2 == 0) m += p;
      for (; m < hi; m += 2 * p) {
        const std::uint64_t i = (m - lo) / 2;
        bits[i / 64] &= ~(std::uint64_t{1} << (i % 64));
      }
    }
    const std::uint64_t slots = (hi - lo + 1) / 2;
    std::uint64_t done = 0;  // slots already counted
    auto count_until = [&](std::uint64_t slot_end) {
      while (done < slot_end) {
        const std::uint64_t word = done / 64;
        const std::uint64_t offset = done % 64;
        const std::uint64_t take = std::min<std::uint64_t>(64 - offset, slot_end - done);
        std::uint64_t w = bits[word] >> offset;
        if (take < 64) w &= (std::uint64_t{1} << take) - 1;
        count += static_cast<std::uint64_t>(__builtin_popcountll(w));
        done += take;
      }
    };
    while (next != checkpoints.end() && *next < hi) {
      const std::uint64_t x = *next;
      // Odd numbers in [lo, x] occupy slots [0, (x - lo)/2].
      count_until(x >= lo ? (x - lo) / 2 + 1 : 0);
      out.push_back({x, count});
      ++next;
    }
    count_until(slots);
  }
  // Checkpoints at 2 fall before the first segment.
  for (; next != checkpoints.end(); ++next) out.push_back({*next, count});
  return out;
}

}  // namespace rhlab::classical
