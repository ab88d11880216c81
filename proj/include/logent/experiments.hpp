#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "distances.hpp"
#include "entropy.hpp"
#include "error.hpp"
#include "nullmodel.hpp"
#include "parallel.hpp"
#include "primes.hpp"
#include "random.hpp"
#include "stats.hpp"

namespace logent {

// H_R(p) along an increasing radius grid. envelope[i] is the largest
// |H_{R1} - H_{R2}| over pairs with R1, R2 >= R_grid[i], i.e. the empirical
// stability envelope; it is non-increasing by construction.
struct StabilityProfile {
  double base_point = 0.0;
  std::size_t M = 0;
  std::vector<double> R_grid;
  std::vector<double> H_values;
  std::vector<double> envelope;
};

inline std::vector<double> tail_envelope(const std::vector<double>& values) {
  std::vector<double> env(values.size());
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t i = values.size(); i-- > 0;) {
    hi = std::max(hi, values[i]);
    lo = std::min(lo, values[i]);
    env[i] = hi - lo;
  }
  return env;
}

template <typename T>
StabilityProfile stability_profile(double base, std::size_t M, const std::vector<double>& R_grid,
                                   PointSet<T> set, unsigned threads = 0) {
  if (R_grid.empty()) throw invalid_argument("R grid is empty");
  for (std::size_t i = 1; i < R_grid.size(); ++i)
    if (R_grid[i] < R_grid[i - 1]) throw invalid_argument("R grid must be non-decreasing");
  StabilityProfile prof{base, M, R_grid, {}, {}};
  prof.H_values = parallel_map(R_grid.size(), threads, [&](std::size_t i) {
    return full_pipeline(truncated_distances(base, set, R_grid[i]), M).H;
  });
  prof.envelope = tail_envelope(prof.H_values);
  return prof;
}

inline StabilityProfile stability_profile(std::uint64_t p, std::size_t M, const std::vector<double>& R_grid,
                                          const PrimeTable& table, unsigned threads = 0) {
  return stability_profile(static_cast<double>(p), M, R_grid, as_point_set(table), threads);
}

// Finite-R snapshot of H_R(p) against the Poisson null at the same R and M.
struct DeviationProfile {
  double base_point = 0.0;
  std::size_t M = 0;
  double R = 0.0;
  double H_prime = 0.0;
  double null_mean = 0.0;
  double null_stderr = 0.0;
  double null_lambda = 0.0;
  std::size_t null_replicates = 0;
  std::uint64_t null_seed = 0;
  double delta = 0.0;
  double z_score = 0.0;
};

inline DeviationProfile make_deviation(double base, std::size_t M, double R, double H_prime,
                                       const NullEstimate& null) {
  DeviationProfile d;
  d.base_point = base;
  d.M = M;
  d.R = R;
  d.H_prime = H_prime;
  d.null_mean = null.mean_H;
  d.null_stderr = null.std_error;
  d.null_lambda = null.lambda;
  d.null_replicates = null.replicates;
  d.null_seed = null.seed;
  d.delta = H_prime - null.mean_H;
  d.z_score = null.std_error > 0.0 ? d.delta / null.std_error : std::nan("");
  return d;
}

// Null intensity defaults to the prime density 1 / log p at the base point.
template <typename T>
DeviationProfile deviation_profile(double base, std::size_t M, double R, PointSet<T> set, std::uint64_t null_seed,
                                   std::size_t replicates, std::optional<double> lambda = std::nullopt,
                                   unsigned threads = 0) {
  if (!lambda) {
    if (!(base > 1.0)) throw invalid_argument("density matching needs a base point > 1");
    lambda = 1.0 / std::log(base);
  }
  const double H = full_pipeline(truncated_distances(base, set, R), M).H;
  const NullEstimate null = estimate_null_entropy(M, PoissonConfig{*lambda, R, null_seed}, replicates, threads);
  return make_deviation(base, M, R, H, null);
}

inline DeviationProfile deviation_profile(std::uint64_t p, std::size_t M, double R, const PrimeTable& table,
                                          std::uint64_t null_seed, std::size_t replicates,
                                          std::optional<double> lambda = std::nullopt, unsigned threads = 0) {
  return deviation_profile(static_cast<double>(p), M, R, as_point_set(table), null_seed, replicates, lambda,
                           threads);
}

struct EnsembleConfig {
  std::size_t m = 1;
  std::size_t sample_count = 1;
  std::uint64_t range_lo = 2;
  std::uint64_t range_hi = 2;
  double R = 1.0;
  std::size_t M = 2;
  std::uint64_t seed = 0;
  std::size_t histogram_bins = 20;
};

inline constexpr std::array<double, 5> ensemble_quantile_levels{0.05, 0.25, 0.50, 0.75, 0.95};

// Empirical entropy distribution over seeded uniform m-subsets of the primes
// in [range_lo, range_hi]. When centered, every sample (and the summaries) is
// shifted by one global null baseline.
struct EnsembleDistribution {
  EnsembleConfig config;
  std::vector<std::vector<std::uint64_t>> multisets;
  std::vector<double> samples;
  stats::Histogram histogram;
  std::array<double, 5> quantiles{};
  bool centered = false;
  double center = 0.0;

  double iqr() const { return quantiles[3] - quantiles[1]; }
};

// Floyd's algorithm: m distinct indices from [0, n), returned ascending.
inline std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t m, CounterRng& rng) {
  std::set<std::size_t> chosen;
  for (std::size_t j = n - m; j < n; ++j) {
    const auto t = static_cast<std::size_t>(rng.below(j + 1));
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return {chosen.begin(), chosen.end()};
}

// Sample i draws its subset from the stream derive_seed(seed, i).
inline EnsembleDistribution ensemble_distribution(const EnsembleConfig& config,
                                                  std::span<const std::uint64_t> candidates,
                                                  const PrimeTable& table, std::optional<double> center,
                                                  unsigned threads = 0) {
  if (config.m == 0 || config.sample_count == 0) throw invalid_argument("m and sample count must be >= 1");
  if (candidates.size() < config.m)
    throw invalid_argument("only " + std::to_string(candidates.size()) + " primes in range, need m = " +
                           std::to_string(config.m));

  EnsembleDistribution dist;
  dist.config = config;
  dist.multisets = parallel_map(config.sample_count, threads, [&](std::size_t i) {
    CounterRng rng(derive_seed(config.seed, i));
    std::vector<std::uint64_t> picked;
    for (const auto idx : sample_without_replacement(candidates.size(), config.m, rng))
      picked.push_back(candidates[idx]);
    return picked;
  });
  dist.samples = parallel_map(config.sample_count, threads, [&](std::size_t i) {
    return full_pipeline(aggregate_distances(dist.multisets[i], table, config.R), config.M).H;
  });
  if (center) {
    dist.centered = true;
    dist.center = *center;
    for (double& h : dist.samples) h -= *center;
  }
  for (std::size_t q = 0; q < ensemble_quantile_levels.size(); ++q)
    dist.quantiles[q] = stats::quantile(dist.samples, ensemble_quantile_levels[q]);
  dist.histogram = stats::histogram(dist.samples, config.histogram_bins);
  return dist;
}

inline EnsembleDistribution ensemble_distribution(const EnsembleConfig& config, const PrimeTable& table,
                                                  std::optional<double> center, unsigned threads = 0) {
  if (config.range_lo > config.range_hi) throw invalid_argument("empty prime range");
  const auto first = std::lower_bound(table.primes.begin(), table.primes.end(), config.range_lo);
  const auto last = std::upper_bound(first, table.primes.end(), config.range_hi);
  if (!table.covers(config.range_lo, config.range_hi))
    throw coverage_error("prime table does not cover the sampling range");
  return ensemble_distribution(config, std::span<const std::uint64_t>(first, last), table, center, threads);
}

}  // namespace logent
