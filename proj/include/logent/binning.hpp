#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "distances.hpp"
#include "error.hpp"

namespace logent {

// Fixed-resolution logarithmic aggregation of a distance multiset.
//
// log_edges[j] = log d_min + (j / M) (log d_max - log d_min), j = 0..M
// bins are [b_{j-1}, b_j) with the last bin closed on the right.
// Natural logarithm throughout.
struct LogBinning {
  std::size_t M = 0;
  std::vector<double> log_edges;  // M + 1
  std::vector<double> edges;      // exp(log_edges)
  std::vector<double> centers;    // midpoints of consecutive log edges
  std::vector<std::uint64_t> counts;
  std::vector<double> probs;

  std::uint64_t total() const noexcept {
    std::uint64_t n = 0;
    for (const auto c : counts) n += c;
    return n;
  }
};

namespace detail {

inline void check_resolution(std::size_t M) {
  if (M < 2) throw invalid_argument("resolution M must be >= 2, got " + std::to_string(M));
}

// Position of log d on the axis in units of bin width.
inline double bin_coordinate(double log_d, double log_lo, double log_hi, std::size_t M) {
  return static_cast<double>(M) * (log_d - log_lo) / (log_hi - log_lo);
}

}  // namespace detail

// Log-axis edges and centers for the range [d_min, d_max] at resolution M.
inline LogBinning log_grid(double d_min, double d_max, std::size_t M) {
  detail::check_resolution(M);
  if (!(d_min > 0.0)) throw invalid_argument("distances must be positive");
  if (!(d_min < d_max))
    throw degenerate_range("d_min equals d_max; logarithmic range is empty");
  LogBinning b;
  b.M = M;
  const double lo = std::log(d_min);
  const double hi = std::log(d_max);
  b.log_edges.resize(M + 1);
  for (std::size_t j = 0; j <= M; ++j)
    b.log_edges[j] = lo + static_cast<double>(j) / static_cast<double>(M) * (hi - lo);
  b.log_edges.back() = hi;
  b.edges.resize(M + 1);
  std::transform(b.log_edges.begin(), b.log_edges.end(), b.edges.begin(),
                 [](double l) { return std::exp(l); });
  b.centers.resize(M);
  for (std::size_t j = 0; j < M; ++j) b.centers[j] = 0.5 * (b.log_edges[j] + b.log_edges[j + 1]);
  b.counts.assign(M, 0);
  b.probs.assign(M, 0.0);
  return b;
}

// Bin index (0-based) by index arithmetic in log space, clamped to [0, M-1];
// the clamp realizes the closed last bin.
inline std::size_t bin_index(double log_d, const LogBinning& grid) {
  const double t = detail::bin_coordinate(log_d, grid.log_edges.front(), grid.log_edges.back(), grid.M);
  if (!(t > 0.0)) return 0;
  const auto j = static_cast<std::size_t>(std::floor(t));
  return std::min(j, grid.M - 1);
}

inline LogBinning log_bin(const DistanceMultiset& distances, std::size_t M) {
  detail::check_resolution(M);
  if (distances.empty()) throw empty_input();
  LogBinning b = log_grid(distances.min(), distances.max(), M);
  for (const double d : distances.values()) ++b.counts[bin_index(std::log(d), b)];
  const double total = static_cast<double>(distances.size());
  for (std::size_t j = 0; j < M; ++j) b.probs[j] = static_cast<double>(b.counts[j]) / total;
  return b;
}

// True when some value sits within `tolerance` bin widths of an interior bin
// boundary, where floating rounding may decide its bin.
inline bool near_bin_boundary(const DistanceMultiset& distances, std::size_t M, double tolerance = 1e-9) {
  if (distances.size() < 2 || distances.min() == distances.max()) return false;
  const double lo = std::log(distances.min());
  const double hi = std::log(distances.max());
  for (const double d : distances.values()) {
    const double t = detail::bin_coordinate(std::log(d), lo, hi, M);
    const double nearest = std::round(t);
    if (nearest > 0.0 && nearest < static_cast<double>(M) && std::abs(t - nearest) < tolerance) return true;
  }
  return false;
}

// Whether log_bin(c * D) and log_bin(D) have the same probability vector,
// entry by entry within `tolerance`.
inline bool rescale_invariance_check(const DistanceMultiset& distances, double c, std::size_t M,
                                     double tolerance = 1e-12) {
  const LogBinning a = log_bin(distances, M);
  const LogBinning b = log_bin(distances.scaled(c), M);
  for (std::size_t j = 0; j < M; ++j)
    if (std::abs(a.probs[j] - b.probs[j]) > tolerance) return false;
  return true;
}

}  // namespace logent
