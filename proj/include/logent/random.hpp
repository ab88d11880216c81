#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

namespace logent {

// Counter-based SplitMix64: the i-th output of stream `key` is
// mix64(key + (i + 1) * 0x9E3779B97F4A7C15). Any output can be computed
// directly from (key, i), which is what lets the Cramér simulator evaluate a
// window of integers without touching the rest of [3, N].
inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Sub-seed of replicate `index` under `base`: mix64(base ^ mix64(index + gamma)).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  return mix64(base ^ mix64(index + golden_gamma));
}

// 53-bit uniform in (0, 1].
constexpr double to_unit_open0(std::uint64_t bits) noexcept {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

class CounterRng {
public:
  using result_type = std::uint64_t;

  explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  constexpr result_type at(std::uint64_t index) const noexcept {
    return mix64(key_ + (index + 1) * golden_gamma);
  }
  constexpr result_type operator()() noexcept { return at(counter_++); }

  double uniform() noexcept { return to_unit_open0((*this)()); }

  // Inversion keeps the draw a fixed function of one uniform, so
  // exponential(c * lambda) == exponential(lambda) / c on the same stream.
  double exponential(double lambda) noexcept { return -std::log(uniform()) / lambda; }

  // Unbiased integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n) noexcept {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = (*this)();
      if (r >= threshold) return r % n;
    }
  }

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t position() const noexcept { return counter_; }

private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace logent
