#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "error.hpp"

namespace logent::stats {

// Sequential left-to-right sums; callers rely on the fixed order for
// bit-identical results.
inline double mean(std::span<const double> xs) {
  if (xs.empty()) throw invalid_argument("mean of empty sample");
  double s = 0.0;
  for (const double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

inline double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw invalid_argument("sample variance needs at least two values");
  const double m = mean(xs);
  double s = 0.0;
  for (const double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

inline double standard_error(std::span<const double> xs) {
  return std::sqrt(sample_variance(xs) / static_cast<double>(xs.size()));
}

// Linear interpolation between order statistics (type 7).
inline double quantile(std::vector<double> xs, double q) {
  if (xs.empty()) throw invalid_argument("quantile of empty sample");
  std::sort(xs.begin(), xs.end());
  const double h = (static_cast<double>(xs.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (h - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

struct Histogram {
  double lo = 0.0;
  double width = 0.0;
  std::vector<std::size_t> counts;
};

// Fixed-width histogram over [min, max] of the sample; the maximum goes to the
// last bin.
inline Histogram histogram(std::span<const double> xs, std::size_t bins) {
  if (xs.empty() || bins == 0) throw invalid_argument("histogram needs data and at least one bin");
  const auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
  Histogram h{*mn, (*mx - *mn) / static_cast<double>(bins), std::vector<std::size_t>(bins, 0)};
  for (const double x : xs) {
    std::size_t j = h.width > 0.0 ? static_cast<std::size_t>((x - h.lo) / h.width) : 0;
    ++h.counts[std::min(j, bins - 1)];
  }
  return h;
}

// Two-sided Kolmogorov-Smirnov distance between a sample and a continuous CDF.
template <typename Cdf>
double ks_distance(std::vector<double> xs, Cdf&& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

}  // namespace logent::stats
