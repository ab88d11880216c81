#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "binning.hpp"
#include "cramer.hpp"
#include "distances.hpp"
#include "entropy.hpp"
#include "error.hpp"
#include "experiments.hpp"
#include "nullmodel.hpp"
#include "spectrum.hpp"

namespace logent::io {

using nlohmann::json;

// ---- JSON ----

inline json to_json(const LogBinning& b) {
  return {{"M", b.M},           {"log_edges", b.log_edges}, {"edges", b.edges},
          {"counts", b.counts}, {"probs", b.probs},         {"centers", b.centers}};
}

inline json to_json(const Spectrum& s) {
  json arr = json::array();
  for (const auto& z : s.amplitudes) arr.push_back({z.real(), z.imag()});
  return arr;
}

inline json to_json(const Provenance& p) {
  json j{{"model", p.model}, {"base_points", p.base_points}};
  if (p.R) j["R"] = *p.R;
  if (p.lambda) j["lambda"] = *p.lambda;
  if (p.seed) j["seed"] = *p.seed;
  for (const auto& [k, v] : p.extra) j[k] = v;
  for (const auto& [k, v] : p.tags) j[k] = v;
  return j;
}

inline json to_json(const EntropyReport& r) {
  return {{"H", r.H}, {"weights", r.weights}, {"M", r.M}, {"provenance", to_json(r.provenance)}};
}

inline json to_json(const DistanceMultiset& d) {
  return {{"radius", d.radius()},
          {"base_points", std::vector<double>(d.base_points().begin(), d.base_points().end())},
          {"values", std::vector<double>(d.values().begin(), d.values().end())}};
}

inline json to_json(const NullEstimate& e) {
  return {{"M", e.M},
          {"mean_H", e.mean_H},
          {"std_error", e.std_error},
          {"replicates", e.replicates},
          {"degenerate_replicates", e.degenerate_replicates},
          {"per_replicate_H", e.per_replicate_H},
          {"lambda", e.lambda},
          {"R", e.R},
          {"seed", e.seed}};
}

inline json to_json(const StabilizationReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"R", row.R},
                    {"replicates", row.replicates},
                    {"mean_abs_log_gap", row.mean_abs_log_gap},
                    {"se_abs_log_gap", row.se_abs_log_gap},
                    {"mean_d_min", row.mean_d_min},
                    {"se_d_min", row.se_d_min},
                    {"mean_log_d_min", row.mean_log_d_min}});
  return {{"lambda", r.lambda},
          {"seed", r.seed},
          {"rows", rows},
          {"gap_strictly_decreasing", r.gap_strictly_decreasing()}};
}

inline json to_json(const CramerEstimate& e) {
  return {{"M", e.M},
          {"N", e.N},
          {"target", e.target},
          {"R", e.R},
          {"seed", e.seed},
          {"rescale", to_string(e.rescale)},
          {"base_points", e.base_points},
          {"per_run_H", e.per_run_H},
          {"mean_H", e.mean_H},
          {"std_error", e.std_error},
          {"matched_lambda", e.matched_lambda}};
}

inline json to_json(const StabilityProfile& p) {
  return {{"base_point", p.base_point},
          {"M", p.M},
          {"R_grid", p.R_grid},
          {"H_values", p.H_values},
          {"envelope", p.envelope}};
}

inline json to_json(const DeviationProfile& d) {
  return {{"base_point", d.base_point},
          {"M", d.M},
          {"R", d.R},
          {"H_prime", d.H_prime},
          {"null_mean", d.null_mean},
          {"null_stderr", d.null_stderr},
          {"null_lambda", d.null_lambda},
          {"null_replicates", d.null_replicates},
          {"null_seed", d.null_seed},
          {"delta", d.delta},
          {"z_score", d.z_score}};
}

inline json to_json(const EnsembleDistribution& e) {
  json q = json::object();
  for (std::size_t i = 0; i < ensemble_quantile_levels.size(); ++i) {
    std::ostringstream key;
    key << "q" << std::setw(2) << std::setfill('0') << static_cast<int>(ensemble_quantile_levels[i] * 100 + 0.5);
    q[key.str()] = e.quantiles[i];
  }
  return {{"m", e.config.m},
          {"sample_count", e.config.sample_count},
          {"range", {e.config.range_lo, e.config.range_hi}},
          {"R", e.config.R},
          {"M", e.config.M},
          {"seed", e.config.seed},
          {"samples", e.samples},
          {"multisets", e.multisets},
          {"histogram", {{"lo", e.histogram.lo}, {"width", e.histogram.width}, {"counts", e.histogram.counts}}},
          {"quantiles", q},
          {"iqr", e.iqr()},
          {"centered", e.centered},
          {"center", e.center},
          {"centering", e.centered ? "global" : "none"}};
}

// ---- CSV ----

// Round-trip precision for every real written to CSV.
inline std::string fmt(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

inline void write_csv(std::ostream& os, const EntropyReport& r) {
  os << "M,H,R,model,seed\n";
  os << r.M << ',' << fmt(r.H) << ',' << (r.provenance.R ? fmt(*r.provenance.R) : "") << ','
     << r.provenance.model << ',' << (r.provenance.seed ? std::to_string(*r.provenance.seed) : "") << '\n';
}

inline void write_csv(std::ostream& os, const NullEstimate& e) {
  os << "replicate,H\n";
  for (std::size_t i = 0; i < e.per_replicate_H.size(); ++i) os << i << ',' << fmt(e.per_replicate_H[i]) << '\n';
}

inline void write_csv(std::ostream& os, const StabilizationReport& r) {
  os << "R,replicates,mean_abs_log_gap,se_abs_log_gap,mean_d_min,se_d_min,mean_log_d_min\n";
  for (const auto& row : r.rows)
    os << fmt(row.R) << ',' << row.replicates << ',' << fmt(row.mean_abs_log_gap) << ','
       << fmt(row.se_abs_log_gap) << ',' << fmt(row.mean_d_min) << ',' << fmt(row.se_d_min) << ','
       << fmt(row.mean_log_d_min) << '\n';
}

inline void write_csv(std::ostream& os, const CramerEstimate& e) {
  os << "run,base_point,H\n";
  for (std::size_t i = 0; i < e.per_run_H.size(); ++i)
    os << i << ',' << e.base_points[i] << ',' << fmt(e.per_run_H[i]) << '\n';
}

inline void write_csv(std::ostream& os, const StabilityProfile& p) {
  os << "R,H,envelope\n";
  for (std::size_t i = 0; i < p.R_grid.size(); ++i)
    os << fmt(p.R_grid[i]) << ',' << fmt(p.H_values[i]) << ',' << fmt(p.envelope[i]) << '\n';
}

inline void write_csv(std::ostream& os, const DeviationProfile& d) {
  os << "base_point,M,R,H_prime,null_mean,null_stderr,null_lambda,null_replicates,delta,z_score\n";
  os << fmt(d.base_point) << ',' << d.M << ',' << fmt(d.R) << ',' << fmt(d.H_prime) << ',' << fmt(d.null_mean)
     << ',' << fmt(d.null_stderr) << ',' << fmt(d.null_lambda) << ',' << d.null_replicates << ','
     << fmt(d.delta) << ',' << fmt(d.z_score) << '\n';
}

inline void write_csv(std::ostream& os, const EnsembleDistribution& e) {
  os << "sample,H,primes\n";
  for (std::size_t i = 0; i < e.samples.size(); ++i) {
    os << i << ',' << fmt(e.samples[i]) << ',';
    for (std::size_t k = 0; k < e.multisets[i].size(); ++k) os << (k ? ";" : "") << e.multisets[i][k];
    os << '\n';
  }
}

// ---- one value per line ----

// Blank lines and lines starting with '#' are skipped.
inline std::vector<double> read_values(std::istream& in, const std::string& source = "input") {
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    double v = 0.0;
    const char* b = line.data() + first;
    const char* e = line.data() + last + 1;
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc{} || res.ptr != e)
      throw io_error(source + ":" + std::to_string(lineno) + ": not a number: '" + line + "'");
    out.push_back(v);
  }
  return out;
}

inline std::vector<double> read_values_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  return read_values(in, path);
}

template <typename Range>
void write_values(std::ostream& os, const Range& values) {
  for (const auto& v : values) {
    if constexpr (std::is_floating_point_v<std::decay_t<decltype(v)>>) os << fmt(v) << '\n';
    else os << v << '\n';
  }
}

}  // namespace logent::io
