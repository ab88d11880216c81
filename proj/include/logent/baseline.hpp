#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "error.hpp"
#include "nullmodel.hpp"

#ifndef LOGENT_DEFAULT_BASELINE_PATH
#define LOGENT_DEFAULT_BASELINE_PATH "data/null_baseline.json"
#endif

namespace logent {

// Monte Carlo reference value of the Poisson null entropy at one resolution.
struct BaselineEntry {
  std::size_t M = 0;
  double mean = 0.0;
  double stderr_ = 0.0;
  double lambda = 0.0;
  double R = 0.0;
  std::size_t replicates = 0;
  std::uint64_t seed = 0;
};

struct BaselineTable {
  int version = 1;
  std::vector<BaselineEntry> entries;

  std::optional<BaselineEntry> find(std::size_t M) const {
    for (const auto& e : entries)
      if (e.M == M) return e;
    return std::nullopt;
  }
  const BaselineEntry& at(std::size_t M) const {
    for (const auto& e : entries)
      if (e.M == M) return e;
    throw configuration_error("null baseline has no entry for M = " + std::to_string(M));
  }
};

inline constexpr const char* baseline_env_var = "LOGENT_NULL_BASELINE";

// $LOGENT_NULL_BASELINE if set, the shipped table otherwise.
inline std::string baseline_path() {
  if (const char* env = std::getenv(baseline_env_var); env && *env) return env;
  return LOGENT_DEFAULT_BASELINE_PATH;
}

inline BaselineEntry to_baseline_entry(const NullEstimate& est) {
  return {est.M, est.mean_H, est.std_error, est.lambda, est.R, est.replicates, est.seed};
}

inline nlohmann::json to_json(const BaselineEntry& e) {
  return {{"M", e.M},         {"mean", e.mean},       {"stderr", e.stderr_}, {"lambda", e.lambda},
          {"R", e.R},         {"replicates", e.replicates}, {"seed", e.seed}};
}

inline nlohmann::json to_json(const BaselineTable& t) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : t.entries) entries.push_back(to_json(e));
  return {{"schema", "logent/null_baseline/v1"}, {"version", t.version}, {"entries", entries}};
}

inline BaselineTable baseline_from_json(const nlohmann::json& j) {
  try {
    BaselineTable t;
    t.version = j.at("version").get<int>();
    for (const auto& e : j.at("entries"))
      t.entries.push_back({e.at("M").get<std::size_t>(), e.at("mean").get<double>(), e.at("stderr").get<double>(),
                           e.at("lambda").get<double>(), e.at("R").get<double>(),
                           e.at("replicates").get<std::size_t>(), e.at("seed").get<std::uint64_t>()});
    return t;
  } catch (const nlohmann::json::exception& ex) {
    throw io_error(std::string("malformed baseline table: ") + ex.what());
  }
}

inline BaselineTable load_baseline(const std::string& path = baseline_path()) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open baseline table '" + path + "' (set " + baseline_env_var + ")");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& ex) {
    throw io_error("cannot parse baseline table '" + path + "': " + ex.what());
  }
  return baseline_from_json(j);
}

}  // namespace logent
