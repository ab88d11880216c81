#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "error.hpp"

namespace logent {

// Every prime in [lower, limit], ascending. Tables built by sieve_up_to and
// first_n_primes start at 2; primes_in_range produces windowed tables.
struct PrimeTable {
  std::uint64_t lower = 2;
  std::uint64_t limit = 2;
  std::vector<std::uint64_t> primes;

  std::size_t size() const noexcept { return primes.size(); }
  bool covers(std::uint64_t lo, std::uint64_t hi) const noexcept {
    return lower <= std::max<std::uint64_t>(lo, 2) && hi <= limit;
  }
};

inline constexpr std::uint64_t max_sieve_limit = std::uint64_t{1} << 63;

namespace detail {

inline std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r > n / r) --r;
  while ((r + 1) <= n / (r + 1)) ++r;
  return r;
}

// Plain sieve for the base primes up to sqrt of the segmented range.
inline std::vector<std::uint32_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<char> composite(limit + 1, 0);
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (!composite[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  for (std::uint64_t i = 2; i <= limit; ++i)
    if (!composite[i]) out.push_back(static_cast<std::uint32_t>(i));
  return out;
}

inline constexpr std::uint64_t segment_span = std::uint64_t{1} << 18;

}  // namespace detail

// Segmented sieve of Eratosthenes over [lo, hi]. Memory is O(sqrt(hi) + segment)
// beyond the output itself.
inline PrimeTable primes_in_range(std::uint64_t lo, std::uint64_t hi) {
  if (hi < 2) throw invalid_argument("prime range upper bound must be >= 2");
  if (hi > max_sieve_limit)
    throw invalid_argument("prime range upper bound " + std::to_string(hi) + " exceeds 2^63");
  lo = std::max<std::uint64_t>(lo, 2);
  if (lo > hi) throw invalid_argument("prime range is empty");

  PrimeTable table{lo, hi, {}};
  const auto base = detail::small_primes(detail::isqrt(hi));
  std::vector<char> composite;
  for (std::uint64_t seg_lo = lo;; seg_lo += detail::segment_span) {
    const std::uint64_t seg_hi = std::min(hi, seg_lo + detail::segment_span - 1);
    composite.assign(seg_hi - seg_lo + 1, 0);
    for (const std::uint64_t p : base) {
      if (p * p > seg_hi) break;
      std::uint64_t start = std::max(p * p, (seg_lo + p - 1) / p * p);
      for (std::uint64_t j = start; j <= seg_hi; j += p) composite[j - seg_lo] = 1;
    }
    for (std::uint64_t i = 0; i < composite.size(); ++i)
      if (!composite[i]) table.primes.push_back(seg_lo + i);
    if (seg_hi == hi) break;
  }
  return table;
}

inline PrimeTable sieve_up_to(std::uint64_t limit) {
  if (limit < 2) throw invalid_argument("sieve limit must be >= 2");
  return primes_in_range(2, limit);
}

// The n smallest primes. The sieve bound uses p_n < n (ln n + ln ln n), n >= 6.
inline PrimeTable first_n_primes(std::uint64_t n) {
  if (n == 0) throw invalid_argument("number of primes must be >= 1");
  std::uint64_t bound = 13;
  if (n >= 6) {
    const double ln = std::log(static_cast<double>(n));
    bound = static_cast<std::uint64_t>(static_cast<double>(n) * (ln + std::log(ln))) + 1;
  }
  PrimeTable table = sieve_up_to(bound);
  table.primes.resize(n);
  table.limit = table.primes.back();
  return table;
}

}  // namespace logent
