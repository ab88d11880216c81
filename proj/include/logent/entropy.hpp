#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "binning.hpp"
#include "distances.hpp"
#include "error.hpp"
#include "spectrum.hpp"

namespace logent {

// How spectral magnitudes become weights. Linear magnitudes are the defined
// statistic; squared magnitudes are available for exploration only.
enum class WeightMode { magnitude, squared_magnitude };

struct Provenance {
  std::string model = "points";
  std::optional<double> R;
  std::optional<double> lambda;
  std::optional<std::uint64_t> seed;
  std::vector<double> base_points;
  std::map<std::string, double> extra;
  std::map<std::string, std::string> tags;
};

struct EntropyReport {
  double H = 0.0;  // nats
  std::vector<double> weights;
  std::size_t M = 0;
  Provenance provenance;
};

// H = -sum_{k : w_k > 0} w_k log w_k with w_k = |mu(k)| / sum |mu|.
// Zero weights contribute exactly nothing; no epsilon is added.
inline EntropyReport spectral_entropy(const Spectrum& spectrum, WeightMode mode = WeightMode::magnitude) {
  const std::size_t M = spectrum.size();
  if (M == 0) throw degenerate_spectrum("spectrum is empty");
  std::vector<double> w(M);
  double sum = 0.0;
  for (std::size_t k = 0; k < M; ++k) {
    const double a = std::abs(spectrum.amplitudes[k]);
    w[k] = mode == WeightMode::magnitude ? a : a * a;
    sum += w[k];
  }
  if (!(sum > 0.0)) throw degenerate_spectrum("all spectral magnitudes are zero");

  EntropyReport r;
  r.M = M;
  double H = 0.0;
  for (double& wk : w) {
    wk /= sum;
    if (wk > 0.0) H -= wk * std::log(wk);
  }
  r.H = H;
  r.weights = std::move(w);
  return r;
}

inline EntropyReport full_pipeline(const DistanceMultiset& distances, std::size_t M,
                                   WeightMode mode = WeightMode::magnitude) {
  EntropyReport r = spectral_entropy(log_spectrum(log_bin(distances, M)), mode);
  r.provenance.R = distances.radius();
  r.provenance.base_points.assign(distances.base_points().begin(), distances.base_points().end());
  return r;
}

}  // namespace logent
