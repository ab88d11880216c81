// logent: command-line front end for the log-binned spectral entropy pipeline.
//
// Exit status: 0 success, 1 runtime or domain error, 2 usage error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <logent/logent.hpp>

#include "cli_support.hpp"

namespace logent::cli {
namespace {

// Where base points look for their neighbours: the primes, or an external
// configuration read from --points-file.
struct PointSource {
  double prime_limit = 0;
  double n_primes = 0;
  std::string points_file;
  double points_limit = 0;

  void add_to(CLI::App& cmd, bool with_counts = true) {
    if (with_counts) {
      cmd.add_option("--prime-limit", prime_limit, "Sieve primes up to this bound (default: just enough)");
      cmd.add_option("--n-primes", n_primes, "Use the first n primes");
    }
    cmd.add_option("--points-file", points_file, "One value per line; replaces the primes");
    cmd.add_option("--points-limit", points_limit,
                   "Upper bound up to which --points-file is complete (default: unbounded)");
  }
};

struct LoadedPoints {
  PrimeTable table;
  std::vector<double> points;
  bool external = false;
  double upper = std::numeric_limits<double>::infinity();

  DistanceMultiset distances(double base, double R) const {
    if (external)
      return truncated_distances(base, PointSet<double>{points, -std::numeric_limits<double>::infinity(), upper}, R);
    return truncated_distances(base, as_point_set(table), R);
  }

  template <typename Fn>
  auto visit(Fn&& fn) const {
    if (external) return fn(PointSet<double>{points, -std::numeric_limits<double>::infinity(), upper});
    return fn(as_point_set(table));
  }
};

LoadedPoints load_points(const PointSource& src, double needed_upper) {
  LoadedPoints lp;
  if (!src.points_file.empty()) {
    if (src.prime_limit > 0 || src.n_primes > 0)
      throw usage_error("--points-file cannot be combined with --prime-limit or --n-primes");
    lp.external = true;
    lp.points = io::read_values_file(src.points_file);
    std::sort(lp.points.begin(), lp.points.end());
    if (src.points_limit > 0) lp.upper = src.points_limit;
    return lp;
  }
  if (src.prime_limit > 0 && src.n_primes > 0)
    throw usage_error("--prime-limit and --n-primes are mutually exclusive");
  if (src.n_primes > 0) lp.table = first_n_primes(to_count(src.n_primes, "--n-primes"));
  else if (src.prime_limit > 0) lp.table = sieve_up_to(to_count(src.prime_limit, "--prime-limit"));
  else lp.table = sieve_up_to(static_cast<std::uint64_t>(std::max(2.0, std::ceil(needed_upper))));
  return lp;
}

void require_resolution(std::size_t M) {
  if (M < 2) throw usage_error("--M must be an integer M >= 2 (fixed logarithmic resolution)");
}

void require_positive(double v, const std::string& flag) {
  if (!(v > 0.0) || !std::isfinite(v)) throw usage_error(flag + " must be positive");
}

void require_grid(const std::vector<double>& grid, const std::string& flag) {
  if (grid.empty()) throw usage_error(flag + " needs at least one radius");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    require_positive(grid[i], flag);
    if (i > 0 && grid[i] < grid[i - 1]) throw usage_error(flag + " must be increasing");
  }
}

WeightMode parse_weights(const std::string& s) {
  return s == "squared" ? WeightMode::squared_magnitude : WeightMode::magnitude;
}

// ---- entropy ----

struct EntropyArgs {
  CommonOptions common;
  PointSource source;
  double p = 0;
  double R = 0;
  std::size_t M = 0;
  std::string weights = "magnitude";
  std::string distances_out;
};

void setup_entropy(CLI::App& app, std::function<void()>& run) {
  auto args = std::make_shared<EntropyArgs>();
  auto* cmd = app.add_subcommand("entropy", "Spectral entropy of D_R(p) for one base point");
  cmd->add_option("--p", args->p, "Base point")->required();
  cmd->add_option("--R", args->R, "Truncation radius")->required();
  cmd->add_option("--M", args->M, "Logarithmic resolution (>= 2)")->required();
  cmd->add_option("--weights", args->weights, "Spectral weights")
      ->check(CLI::IsMember({"magnitude", "squared"}))
      ->capture_default_str();
  cmd->add_option("--emit-distances", args->distances_out, "Also write D_R(p), one distance per line");
  args->source.add_to(*cmd);
  add_common(*cmd, args->common);
  cmd->callback([args, cmd, &run] {
    run = [args, cmd] {
      require_resolution(args->M);
      require_positive(args->R, "--R");
      const auto pts = load_points(args->source, args->p + args->R);
      const DistanceMultiset d = pts.distances(args->p, args->R);
      if (!args->distances_out.empty()) {
        std::ofstream out(args->distances_out);
        if (!out) throw io_error("cannot write '" + args->distances_out + "'");
        io::write_values(out, d.values());
      }
      const LogBinning binning = log_bin(d, args->M);
      const Spectrum spectrum = log_spectrum(binning);
      EntropyReport report = spectral_entropy(spectrum, parse_weights(args->weights));
      report.provenance.model = pts.external ? "points" : "primes";
      report.provenance.R = args->R;
      report.provenance.base_points = {args->p};
      report.provenance.tags["weights"] = args->weights;
      std::cout << precise << report.H << '\n';
      emit(args->common, Manifest{"entropy", collect_parameters(*cmd), std::nullopt, {}}, "entropy_report", report,
           {{"binning", io::to_json(binning)}, {"spectrum", io::to_json(spectrum)}});
    };
  });
}

// ---- null ----

struct NullArgs {
  CommonOptions common;
  double lambda = 1.0;
  double R = 0;
  std::size_t M = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  bool check_stabilization = false;
  std::vector<double> R_grid;
};

void setup_null(CLI::App& app, std::function<void()>& run) {
  auto args = std::make_shared<NullArgs>();
  auto* cmd = app.add_subcommand("null", "Poisson null-model entropy estimate");
  cmd->add_option("--lambda", args->lambda, "Intensity")->capture_default_str();
  cmd->add_option("--R", args->R, "Truncation radius");
  cmd->add_option("--M", args->M, "Logarithmic resolution (>= 2)");
  cmd->add_option("--reps", args->reps, "Replicates (>= 2)")->required();
  cmd->add_option("--seed", args->seed, "Base seed")->required();
  cmd->add_flag("--check-stabilization", args->check_stabilization,
                "Probe log d_max - log R and d_min over --R-grid instead");
  cmd->add_option("--R-grid", args->R_grid, "Comma-separated increasing radii")->delimiter(',');
  add_common(*cmd, args->common);
  cmd->callback([args, cmd, &run] {
    run = [args, cmd] {
      require_positive(args->lambda, "--lambda");
      if (args->reps < 2) throw usage_error("--reps must be >= 2 for a standard error");
      const Manifest manifest{"null", collect_parameters(*cmd), args->seed, {}};
      if (args->check_stabilization) {
        require_grid(args->R_grid, "--R-grid");
        const auto report = check_bin_stabilization(args->lambda, args->R_grid, args->reps, args->seed,
                                                    args->common.thread_count());
        std::cout << precise;
        for (const auto& row : report.rows)
          std::cout << "R=" << row.R << " mean|log dmax - log R|=" << row.mean_abs_log_gap
                    << " mean dmin=" << row.mean_d_min << " (se " << row.se_d_min << ")\n";
        emit(args->common, manifest, "stabilization_report", report);
        return;
      }
      require_resolution(args->M);
      require_positive(args->R, "--R");
      const auto est = estimate_null_entropy(args->M, PoissonConfig{args->lambda, args->R, args->seed}, args->reps,
                                             args->common.thread_count());
      std::cout << precise << "mean_H " << est.mean_H << "\nstd_error " << est.std_error << '\n';
      emit(args->common, manifest, "null_estimate", est);
    };
  });
}

// ---- cramer ----

struct CramerArgs {
  CommonOptions common;
  double N = 0;
  double R = 0;
  std::size_t M = 0;
  std::uint64_t seed = 0;
  double target = 0;
  std::size_t runs = 1;
  std::string rescale = "none";
  std::string export_set;
};

void setup_cramer(CLI::App& app, std::function<void()>& run) {
  auto args = std::make_shared<CramerArgs>();
  auto* cmd = app.add_subcommand("cramer", "Spectral entropy under Cramér's random model");
  cmd->add_option("--N", args->N, "Simulate integers in [3, N]")->required();
  cmd->add_option("--R", args->R, "Truncation radius")->required();
  cmd->add_option("--M", args->M, "Logarithmic resolution (>= 2)")->required();
  cmd->add_option("--seed", args->seed, "Seed")->required();
  cmd->add_option("--target", args->target, "Base point = member nearest to this (default N/2)");
  cmd->add_option("--runs", args->runs, "Independent realizations; > 1 reports mean and standard error")
      ->capture_default_str();
  cmd->add_option("--rescale", args->rescale, "Local mean gap rescaling")
      ->check(CLI::IsMember({"none", "per_base_point", "per_gap"}))
      ->capture_default_str();
  cmd->add_option("--export-set", args->export_set, "Write the simulated set (seed as given), one per line");
  add_common(*cmd, args->common);
  cmd->callback([args, cmd, &run] {
    run = [args, cmd] {
      require_resolution(args->M);
      require_positive(args->R, "--R");
      const auto N = to_count(args->N, "--N");
      if (N < 3) throw usage_error("--N must be >= 3");
      if (args->runs < 1) throw usage_error("--runs must be >= 1");
      const auto target = args->target > 0 ? to_count(std::round(args->target), "--target") : N / 2;
      const CramerConfig config{N, args->seed, parse_rescale_mode(args->rescale)};
      if (!args->export_set.empty()) {
        std::ofstream out(args->export_set);
        if (!out) throw io_error("cannot write '" + args->export_set + "'");
        io::write_values(out, simulate_cramer_set(config));
      }
      const Manifest manifest{"cramer", collect_parameters(*cmd), args->seed, {}};
      std::cout << precise;
      if (args->runs == 1) {
        const auto report = cramer_entropy(config, target, args->R, args->M);
        std::cout << report.H << '\n';
        emit(args->common, manifest, "entropy_report", report);
      } else {
        const auto est =
            estimate_cramer_entropy(config, target, args->R, args->M, args->runs, args->common.thread_count());
        std::cout << "mean_H " << est.mean_H << "\nstd_error " << est.std_error << '\n';
        emit(args->common, manifest, "cramer_estimate", est);
      }
    };
  });
}

// ---- stability ----

struct StabilityArgs {
  CommonOptions common;
  PointSource source;
  double p = 0;
  std::size_t M = 0;
  std::vector<double> R_grid;
};

void setup_stability(CLI::App& app, std::function<void()>& run) {
  auto args = std::make_shared<StabilityArgs>();
  auto* cmd = app.add_subcommand("stability", "H_R(p) along a radius grid with tail envelopes");
  cmd->add_option("--p", args->p, "Base point")->required();
  cmd->add_option("--M", args->M, "Logarithmic resolution (>= 2)")->required();
  cmd->add_option("--R-grid", args->R_grid, "Comma-separated increasing radii")->delimiter(',')->required();
  args->source.add_to(*cmd);
  add_common(*cmd, args->common);
  cmd->callback([args, cmd, &run] {
    run = [args, cmd] {
      require_resolution(args->M);
      require_grid(args->R_grid, "--R-grid");
      const auto pts = load_points(args->source, args->p + args->R_grid.back());
      const auto prof = pts.visit([&](auto set) {
        return stability_profile(args->p, args->M, args->R_grid, set, args->common.thread_count());
      });
      std::cout << precise;
      for (std::size_t i = 0; i < prof.R_grid.size(); ++i)
        std::cout << "R=" << prof.R_grid[i] << " H=" << prof.H_values[i] << " envelope=" << prof.envelope[i]
                  << '\n';
      emit(args->common, Manifest{"stability", collect_parameters(*cmd), std::nullopt, {}}, "stability_profile",
           prof);
    };
  });
}

// ---- deviation ----

struct DeviationArgs {
  CommonOptions common;
  PointSource source;
  double p = 0;
  double R = 0;
  std::size_t M = 0;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  double lambda = 0;
};

void setup_deviation(CLI::App& app, std::function<void()>& run) {
  auto args = std::make_shared<DeviationArgs>();
  auto* cmd = app.add_subcommand("deviation", "H_R(p) minus the Poisson null mean at the same R and M");
  cmd->add_option("--p", args->p, "Base point")->required();
  cmd->add_option("--R", args->R, "Truncation radius")->required();
  cmd->add_option("--M", args->M, "Logarithmic resolution (>= 2)")->required();
  cmd->add_option("--reps", args->reps, "Null replicates (>= 2)")->required();
  cmd->add_option("--seed", args->seed, "Null model seed")->required();
  cmd->add_option("--lambda", args->lambda, "Null intensity (default 1 / log p)");
  args->source.add_to(*cmd);
  add_common(*cmd, args->common);
  cmd->callback([args, cmd, &run] {
    run = [args, cmd] {
      require_resolution(args->M);
      require_positive(args->R, "--R");
      if (args->reps < 2) throw usage_error("--reps must be >= 2 for a standard error");
      std::optional<double> lambda;
      if (args->lambda > 0) lambda = args->lambda;
      const auto pts = load_points(args->source, args->p + args->R);
      const auto dev = pts.visit([&](auto set) {
        return deviation_profile(args->p, args->M, args->R, set, args->seed, args->reps, lambda,
                                 args->common.thread_count());
      });
      std::cout << precise << "delta " << dev.delta << "\nz_score " << dev.z_score << '\n';
      emit(args->common, Manifest{"deviation", collect_parameters(*cmd), args->seed, {}}, "deviation_profile", dev);
    };
  });
}

// ---- ensemble ----

struct EnsembleArgs {
  CommonOptions common;
  std::size_t m = 0;
  std::size_t samples = 0;
  std::string range;
  double R = 0;
  std::size_t M = 0;
  std::uint64_t seed = 0;
  bool center = false;
  std::size_t bins = 20;
};

void setup_ensemble(CLI::App& app, std::function<void()>& run) {
  auto args = std::make_shared<EnsembleArgs>();
  auto* cmd = app.add_subcommand("ensemble", "Entropy distribution over random prime multisets of size m");
  cmd->add_option("--m", args->m, "Multiset size")->required();
  cmd->add_option("--samples", args->samples, "Number of multisets")->required();
  cmd->add_option("--range", args->range, "Prime interval lo:hi")->required();
  cmd->add_option("--R", args->R, "Truncation radius")->required();
  cmd->add_option("--M", args->M, "Logarithmic resolution (>= 2)")->required();
  cmd->add_option("--seed", args->seed, "Sampling seed")->required();
  cmd->add_flag("--center", args->center, "Subtract the shipped null baseline for this M");
  cmd->add_option("--bins", args->bins, "Histogram bins")->capture_default_str();
  add_common(*cmd, args->common);
  cmd->callback([args, cmd, &run] {
    run = [args, cmd] {
      require_resolution(args->M);
      require_positive(args->R, "--R");
      if (args->m < 1 || args->samples < 1 || args->bins < 1)
        throw usage_error("--m, --samples and --bins must be >= 1");
      const auto [lo, hi] = parse_range(args->range, "--range");
      EnsembleConfig config{args->m, args->samples, lo, hi, args->R, args->M, args->seed, args->bins};
      const PrimeTable table = sieve_up_to(hi + static_cast<std::uint64_t>(std::ceil(args->R)));
      std::optional<double> center;
      json extra = json::object();
      if (args->center) {
        const auto path = baseline_path();
        center = load_baseline(path).at(args->M).mean;
        extra["baseline_path"] = path;
      }
      const auto dist = ensemble_distribution(config, table, center, args->common.thread_count());
      std::cout << precise << "median " << dist.quantiles[2] << "\niqr " << dist.iqr() << '\n';
      emit(args->common, Manifest{"ensemble", collect_parameters(*cmd), args->seed, {}}, "ensemble_distribution",
           dist, extra);
    };
  });
}

// ---- baseline ----

struct BaselineArgs {
  CommonOptions common;
  std::vector<std::size_t> Ms;
  double lambda = 1.0;
  double R = 1e6;
  std::size_t reps = 500;
  std::uint64_t seed = 0;
};

void setup_baseline(CLI::App& app, std::function<void()>& run) {
  auto args = std::make_shared<BaselineArgs>();
  auto* cmd = app.add_subcommand("baseline", "Regenerate the Poisson null baseline table");
  cmd->add_option("--M", args->Ms, "Comma-separated resolutions")->delimiter(',')->required();
  cmd->add_option("--lambda", args->lambda, "Intensity")->capture_default_str();
  cmd->add_option("--R", args->R, "Truncation radius")->capture_default_str();
  cmd->add_option("--reps", args->reps, "Replicates")->capture_default_str();
  cmd->add_option("--seed", args->seed, "Base seed")->required();
  add_common(*cmd, args->common);
  cmd->callback([args, cmd, &run] {
    run = [args, cmd] {
      if (args->common.output_format() != Format::json) throw usage_error("baseline tables are JSON only");
      for (const auto M : args->Ms) require_resolution(M);
      BaselineTable table;
      std::cout << precise;
      for (const auto M : args->Ms) {
        const auto est = estimate_null_entropy(M, PoissonConfig{args->lambda, args->R, args->seed}, args->reps,
                                               args->common.thread_count());
        table.entries.push_back(to_baseline_entry(est));
        std::cout << "M=" << M << " mean_H=" << est.mean_H << " std_error=" << est.std_error << std::endl;
      }
      if (!args->common.out.empty()) {
        json doc = to_json(table);
        Manifest manifest{"baseline", collect_parameters(*cmd), args->seed, {args->common.out}};
        doc["manifest"] = manifest.to_json();
        write_text(args->common.out, doc.dump(2) + "\n");
      }
    };
  });
}

}  // namespace
}  // namespace logent::cli

int main(int argc, char** argv) {
  using namespace logent::cli;
  CLI::App app{"Scale-invariant spectral entropy of log-binned distance distributions"};
  app.set_version_flag("--version", logent::version);
  app.require_subcommand(1);

  std::function<void()> run;
  setup_entropy(app, run);
  setup_null(app, run);
  setup_cramer(app, run);
  setup_stability(app, run);
  setup_deviation(app, run);
  setup_ensemble(app, run);
  setup_baseline(app, run);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    run();
  } catch (const usage_error& e) {
    std::cerr << "usage error: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  } catch (const logent::error& e) {
    std::cerr << "error: " << e.name() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
