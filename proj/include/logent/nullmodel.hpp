#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "distances.hpp"
#include "entropy.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "stats.hpp"

namespace logent {

// Homogeneous Poisson process on (0, inf) with intensity lambda, conditioned
// to contain 0, truncated at R.
struct PoissonConfig {
  double lambda = 1.0;
  double R = 1.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw invalid_argument("lambda must be positive");
    if (!(R > 0.0) || !std::isfinite(R)) throw invalid_argument("R must be positive");
  }
};

struct NullEstimate {
  std::size_t M = 0;
  double mean_H = 0.0;
  double std_error = 0.0;
  std::size_t replicates = 0;
  std::size_t degenerate_replicates = 0;
  std::vector<double> per_replicate_H;
  double lambda = 0.0;
  double R = 0.0;
  std::uint64_t seed = 0;
};

// Points of the process in (0, R]. Since 0 belongs to the conditioned process,
// these are also the distances from the origin: cumulative sums of
// Exp(lambda) gaps drawn from the stream keyed by config.seed.
inline DistanceMultiset simulate_poisson_distances(const PoissonConfig& config) {
  config.validate();
  CounterRng rng(config.seed);
  std::vector<double> points;
  points.reserve(static_cast<std::size_t>(config.lambda * config.R * 1.05) + 16);
  for (double x = rng.exponential(config.lambda); x <= config.R; x += rng.exponential(config.lambda))
    points.push_back(x);
  return DistanceMultiset(std::move(points), config.R, {0.0});
}

struct PoissonExtrema {
  std::size_t count = 0;
  double d_min = 0.0;  // NaN when count == 0
  double d_max = 0.0;
};

// Same realization as simulate_poisson_distances, without storing it.
inline PoissonExtrema poisson_extrema(const PoissonConfig& config) {
  config.validate();
  CounterRng rng(config.seed);
  PoissonExtrema e{0, std::nan(""), std::nan("")};
  for (double x = rng.exponential(config.lambda); x <= config.R; x += rng.exponential(config.lambda)) {
    if (e.count++ == 0) e.d_min = x;
    e.d_max = x;
  }
  return e;
}

inline EntropyReport null_entropy_once(const PoissonConfig& config, std::size_t M,
                                       WeightMode mode = WeightMode::magnitude) {
  EntropyReport r = full_pipeline(simulate_poisson_distances(config), M, mode);
  r.provenance.model = "poisson";
  r.provenance.lambda = config.lambda;
  r.provenance.seed = config.seed;
  return r;
}

// Replicate i runs with seed derive_seed(config.seed, i). Degenerate
// realizations (empty, or a single distinct distance) are dropped and counted;
// more than 1% of them aborts, since lambda * R is then too small for the
// estimate to mean anything.
inline NullEstimate estimate_null_entropy(std::size_t M, const PoissonConfig& config, std::size_t replicates,
                                          unsigned threads = 0, WeightMode mode = WeightMode::magnitude) {
  config.validate();
  if (replicates < 2) throw invalid_argument("need at least 2 replicates for a standard error");
  detail::check_resolution(M);

  const auto runs = parallel_map(replicates, threads, [&](std::size_t i) -> std::optional<double> {
    PoissonConfig c = config;
    c.seed = derive_seed(config.seed, i);
    try {
      return null_entropy_once(c, M, mode).H;
    } catch (const empty_input&) {
    } catch (const degenerate_range&) {
    }
    return std::nullopt;
  });

  NullEstimate est;
  est.M = M;
  est.lambda = config.lambda;
  est.R = config.R;
  est.seed = config.seed;
  for (const auto& h : runs) {
    if (h) est.per_replicate_H.push_back(*h);
    else ++est.degenerate_replicates;
  }
  if (est.degenerate_replicates * 100 > replicates)
    throw configuration_error(std::to_string(est.degenerate_replicates) + " of " + std::to_string(replicates) +
                              " replicates were degenerate; increase lambda * R");
  est.replicates = est.per_replicate_H.size();
  if (est.replicates < 2) throw configuration_error("fewer than 2 usable replicates");
  est.mean_H = stats::mean(est.per_replicate_H);
  est.std_error = stats::standard_error(est.per_replicate_H);
  return est;
}

struct StabilizationRow {
  double R = 0.0;
  std::size_t replicates = 0;
  double mean_abs_log_gap = 0.0;  // mean |log d_max - log R|
  double se_abs_log_gap = 0.0;
  double mean_d_min = 0.0;
  double se_d_min = 0.0;
  double mean_log_d_min = 0.0;
  std::vector<double> d_min;  // per replicate, for distribution checks
};

struct StabilizationReport {
  double lambda = 0.0;
  std::uint64_t seed = 0;
  std::vector<StabilizationRow> rows;

  bool gap_strictly_decreasing() const {
    for (std::size_t i = 1; i < rows.size(); ++i)
      if (!(rows[i].mean_abs_log_gap < rows[i - 1].mean_abs_log_gap)) return false;
    return true;
  }
};

// Probe of the bin-geometry stabilization: per radius, how far log d_max sits
// below log R and where d_min lands. Grid point g, replicate i uses seed
// derive_seed(derive_seed(seed, g), i), so rows are independent samples.
inline StabilizationReport check_bin_stabilization(double lambda, const std::vector<double>& R_grid,
                                                   std::size_t replicates, std::uint64_t seed,
                                                   unsigned threads = 0) {
  if (replicates < 2) throw invalid_argument("need at least 2 replicates");
  if (R_grid.empty()) throw invalid_argument("R grid is empty");
  for (std::size_t i = 1; i < R_grid.size(); ++i)
    if (!(R_grid[i] > R_grid[i - 1])) throw invalid_argument("R grid must be strictly increasing");

  StabilizationReport report{lambda, seed, {}};
  for (std::size_t g = 0; g < R_grid.size(); ++g) {
    const std::uint64_t grid_seed = derive_seed(seed, g);
    const auto extrema = parallel_map(replicates, threads, [&](std::size_t i) {
      return poisson_extrema(PoissonConfig{lambda, R_grid[g], derive_seed(grid_seed, i)});
    });
    std::vector<double> gaps, mins, log_mins;
    for (const auto& e : extrema) {
      if (e.count == 0) continue;
      gaps.push_back(std::abs(std::log(e.d_max) - std::log(R_grid[g])));
      mins.push_back(e.d_min);
      log_mins.push_back(std::log(e.d_min));
    }
    if (gaps.size() * 100 < replicates * 99)
      throw configuration_error("too many empty realizations at R = " + std::to_string(R_grid[g]));
    StabilizationRow row;
    row.R = R_grid[g];
    row.replicates = gaps.size();
    row.mean_abs_log_gap = stats::mean(gaps);
    row.se_abs_log_gap = stats::standard_error(gaps);
    row.mean_d_min = stats::mean(mins);
    row.se_d_min = stats::standard_error(mins);
    row.mean_log_d_min = stats::mean(log_mins);
    row.d_min = std::move(mins);
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace logent
