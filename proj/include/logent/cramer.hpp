#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "distances.hpp"
#include "entropy.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "random.hpp"
#include "stats.hpp"

namespace logent {

// How distances are normalized by the local mean gap before binning.
//   per_base_point: d / log(b) for every distance from base point b
//   per_gap:        d / log(q) using the far endpoint q of each distance
enum class RescaleMode { none, per_base_point, per_gap };

inline const char* to_string(RescaleMode m) {
  switch (m) {
    case RescaleMode::none: return "none";
    case RescaleMode::per_base_point: return "per_base_point";
    case RescaleMode::per_gap: return "per_gap";
  }
  return "none";
}

inline RescaleMode parse_rescale_mode(const std::string& s) {
  if (s == "none") return RescaleMode::none;
  if (s == "per_base_point" || s == "base") return RescaleMode::per_base_point;
  if (s == "per_gap" || s == "gap") return RescaleMode::per_gap;
  throw invalid_argument("unknown rescale mode '" + s + "'");
}

// Cramér's random model on [3, N]: n is included independently with
// probability 1 / log n.
struct CramerConfig {
  std::uint64_t N = 3;
  std::uint64_t seed = 0;
  RescaleMode rescale = RescaleMode::none;

  void validate() const {
    if (N < 3) throw invalid_argument("Cramér model needs N >= 3");
  }
};

// The decision for n depends only on (seed, n): output n of the counter stream
// keyed by seed. Any window therefore agrees with the full simulation.
inline bool cramer_includes(std::uint64_t seed, std::uint64_t n) noexcept {
  if (n < 3) return false;
  return to_unit_open0(CounterRng(seed).at(n)) <= 1.0 / std::log(static_cast<double>(n));
}

inline std::vector<std::uint64_t> simulate_cramer_window(const CramerConfig& config, std::uint64_t lo,
                                                         std::uint64_t hi) {
  config.validate();
  lo = std::max<std::uint64_t>(lo, 3);
  hi = std::min(hi, config.N);
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = lo; n <= hi; ++n)
    if (cramer_includes(config.seed, n)) out.push_back(n);
  return out;
}

inline std::vector<std::uint64_t> simulate_cramer_set(const CramerConfig& config) {
  return simulate_cramer_window(config, 3, config.N);
}

// Member of the simulated set closest to `target`; ties go to the smaller one.
inline std::uint64_t nearest_member(const CramerConfig& config, std::uint64_t target) {
  config.validate();
  target = std::clamp<std::uint64_t>(target, 3, config.N);
  for (std::uint64_t d = 0; d <= config.N; ++d) {
    if (target >= 3 + d && cramer_includes(config.seed, target - d)) return target - d;
    if (target + d <= config.N && cramer_includes(config.seed, target + d)) return target + d;
    if (target < 3 + d && target + d > config.N) break;
  }
  throw empty_input("Cramér realization is empty");
}

// Truncated distances around base point b, rescaled per config.rescale.
inline DistanceMultiset cramer_distances(const CramerConfig& config, std::uint64_t base, double R) {
  config.validate();
  if (!(R > 0.0) || !std::isfinite(R)) throw invalid_argument("R must be positive");
  const double b = static_cast<double>(base);
  if (b + R > static_cast<double>(config.N))
    throw coverage_error("window [" + std::to_string(b - R) + ", " + std::to_string(b + R) +
                         "] exceeds the simulated range [3, " + std::to_string(config.N) + "]");
  const auto lo = static_cast<std::uint64_t>(std::max(3.0, std::ceil(b - R)));
  const auto hi = static_cast<std::uint64_t>(std::floor(b + R));
  const auto window = simulate_cramer_window(config, lo, hi);
  const DistanceMultiset raw = truncated_distances(
      b, PointSet<std::uint64_t>{window, -std::numeric_limits<double>::infinity(), b + R}, R);

  switch (config.rescale) {
    case RescaleMode::none:
      return raw;
    case RescaleMode::per_base_point:
      if (base < 3) throw invalid_argument("rescaling needs a base point >= 3");
      return raw.scaled(1.0 / std::log(b));
    case RescaleMode::per_gap: {
      std::vector<double> values;
      values.reserve(window.size());
      for (const auto q : window) {
        const double d = std::abs(static_cast<double>(q) - b);
        if (d > 0.0 && d <= R) values.push_back(d / std::log(static_cast<double>(q)));
      }
      return DistanceMultiset(std::move(values), R / std::log(static_cast<double>(lo)), {b});
    }
  }
  return raw;
}

// Measure addition across base points, each rescaled on its own first.
inline DistanceMultiset cramer_aggregate_distances(const CramerConfig& config,
                                                   std::span<const std::uint64_t> bases, double R) {
  if (bases.empty()) throw invalid_argument("no base points");
  DistanceMultiset total = cramer_distances(config, bases.front(), R);
  for (std::size_t i = 1; i < bases.size(); ++i) total += cramer_distances(config, bases[i], R);
  return total;
}

inline EntropyReport cramer_entropy(const CramerConfig& config, std::uint64_t target, double R, std::size_t M,
                                    WeightMode mode = WeightMode::magnitude) {
  const std::uint64_t base = nearest_member(config, target);
  EntropyReport r = full_pipeline(cramer_distances(config, base, R), M, mode);
  r.provenance.model = "cramer";
  r.provenance.R = R;
  r.provenance.seed = config.seed;
  r.provenance.base_points = {static_cast<double>(base)};
  r.provenance.extra["N"] = static_cast<double>(config.N);
  r.provenance.extra["target"] = static_cast<double>(target);
  r.provenance.tags["rescale"] = to_string(config.rescale);
  return r;
}

struct CramerEstimate {
  std::size_t M = 0;
  std::uint64_t N = 0;
  std::uint64_t target = 0;
  double R = 0.0;
  std::uint64_t seed = 0;
  RescaleMode rescale = RescaleMode::none;
  std::vector<std::uint64_t> base_points;
  std::vector<double> per_run_H;
  double mean_H = 0.0;
  double std_error = 0.0;
  // Intensity of the two-sided distance process at the mean base point,
  // 2 / log b: the Poisson intensity a matched null run should use.
  double matched_lambda = 0.0;
};

// Run i uses seed derive_seed(base.seed, i).
inline CramerEstimate estimate_cramer_entropy(const CramerConfig& base, std::uint64_t target, double R,
                                              std::size_t M, std::size_t runs, unsigned threads = 0) {
  if (runs < 2) throw invalid_argument("need at least 2 runs");
  const auto reports = parallel_map(runs, threads, [&](std::size_t i) {
    CramerConfig c = base;
    c.seed = derive_seed(base.seed, i);
    return cramer_entropy(c, target, R, M);
  });
  CramerEstimate est{M, base.N, target, R, base.seed, base.rescale, {}, {}, 0.0, 0.0, 0.0};
  double mean_base = 0.0;
  for (const auto& r : reports) {
    est.per_run_H.push_back(r.H);
    est.base_points.push_back(static_cast<std::uint64_t>(r.provenance.base_points.front()));
    mean_base += r.provenance.base_points.front();
  }
  mean_base /= static_cast<double>(runs);
  est.mean_H = stats::mean(est.per_run_H);
  est.std_error = stats::standard_error(est.per_run_H);
  est.matched_lambda = 2.0 / std::log(mean_base);
  return est;
}

}  // namespace logent
