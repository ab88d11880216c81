#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <ctime>
#include <functional>
#include <optional>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <logent/error.hpp>
#include <logent/io.hpp>
#include <logent/version.hpp>

namespace logent::cli {

using nlohmann::json;

// Bad flags or flag combinations; exits with status 2.
struct usage_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { json, csv };

// Flags shared by every subcommand.
struct CommonOptions {
  std::string format = "json";
  std::string out;
  std::string threads = "max";

  Format output_format() const { return format == "csv" ? Format::csv : Format::json; }

  unsigned thread_count() const {
    if (threads == "max") return 0;
    try {
      std::size_t pos = 0;
      const long n = std::stol(threads, &pos);
      if (pos == threads.size() && n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    throw usage_error("--threads takes a positive integer or 'max'");
  }
};

inline void add_common(CLI::App& cmd, CommonOptions& opts) {
  cmd.add_option("--format", opts.format, "Result file format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  cmd.add_option("--out", opts.out, "Result file path (omit to print only the summary)");
  cmd.add_option("--threads", opts.threads, "Worker threads, or 'max' for all cores; results do not depend on it")
      ->capture_default_str();
}

// Integer-valued flag that also accepts scientific notation such as 1e7.
inline std::uint64_t to_count(double v, const std::string& flag) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 9.2e18)
    throw usage_error(flag + " must be a non-negative integer, got " + std::to_string(v));
  return static_cast<std::uint64_t>(v);
}

// "lo:hi" with each side in plain or scientific notation.
inline std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s, const std::string& flag) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw usage_error(flag + " expects lo:hi");
  try {
    const double lo = std::stod(s.substr(0, colon));
    const double hi = std::stod(s.substr(colon + 1));
    const auto a = to_count(lo, flag);
    const auto b = to_count(hi, flag);
    if (a > b) throw usage_error(flag + " lower end exceeds upper end");
    return {a, b};
  } catch (const std::invalid_argument&) {
    throw usage_error(flag + " expects lo:hi");
  } catch (const std::out_of_range&) {
    throw usage_error(flag + " expects lo:hi");
  }
}

inline std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Every option of the subcommand with its effective value (given or default).
// --threads is left out: it cannot change a result.
inline json collect_parameters(const CLI::App& cmd) {
  json params = json::object();
  for (const CLI::Option* opt : cmd.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string key = opt->get_lnames().front();
    if (key == "help" || key == "threads") continue;
    if (opt->count() > 0) {
      const auto& res = opt->results();
      if (opt->get_type_size_max() == 0 && res.size() <= 1) params[key] = true;
      else if (res.size() == 1) params[key] = res.front();
      else params[key] = res;
    } else if (!opt->get_default_str().empty()) {
      params[key] = opt->get_default_str();
    } else if (opt->get_type_size_max() == 0) {
      params[key] = false;
    } else {
      params[key] = nullptr;
    }
  }
  return params;
}

struct Manifest {
  std::string subcommand;
  json parameters;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> outputs;

  json to_json() const {
    return {{"subcommand", subcommand},
            {"parameters", parameters},
            {"seed", seed ? json(*seed) : json(nullptr)},
            {"version", logent::version},
            {"timestamp", utc_timestamp()},
            {"outputs", outputs}};
  }
};

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw io_error("write failed for '" + path + "'");
}

// JSON results embed the manifest; CSV results get a <out>.manifest.json
// sidecar.
template <typename Result>
void emit(const CommonOptions& opts, Manifest manifest, const std::string& kind, const Result& result,
          json extra = json::object()) {
  if (opts.out.empty()) return;
  if (opts.output_format() == Format::json) {
    manifest.outputs = {opts.out};
    json doc{{"schema", "logent/" + kind + "/v1"}, {"manifest", manifest.to_json()}, {"result", io::to_json(result)}};
    for (auto& [k, v] : extra.items()) doc["result"][k] = v;
    write_text(opts.out, doc.dump(2) + "\n");
  } else {
    const std::string sidecar = opts.out + ".manifest.json";
    manifest.outputs = {opts.out, sidecar};
    std::ostringstream csv;
    io::write_csv(csv, result);
    write_text(opts.out, csv.str());
    json doc{{"schema", "logent/manifest/v1"}, {"result_schema", "logent/" + kind + "/v1"},
             {"manifest", manifest.to_json()}};
    write_text(sidecar, doc.dump(2) + "\n");
  }
}

// 12 significant digits for every value printed to stdout.
inline std::ostream& precise(std::ostream& os) { return os << std::showpoint << std::setprecision(12); }

}  // namespace logent::cli
