#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "binning.hpp"
#include "error.hpp"

namespace logent {

struct Spectrum {
  std::vector<std::complex<double>> amplitudes;
  std::vector<double> source_centers;

  std::size_t size() const noexcept { return amplitudes.size(); }
};

// mu(k) = sum_j p_j exp(-2 pi i (k-1) (x_j - x_1) / (x_M - x_1)), k = 1..M.
//
// Direct summation with phases taken from the centers themselves. With equally
// spaced centers the period is M - 1 rather than M, so this is not a DFT and
// must not be swapped for an FFT.
inline Spectrum log_spectrum(std::span<const double> probs, std::span<const double> centers) {
  const std::size_t M = probs.size();
  if (M < 2) throw invalid_argument("spectrum needs at least two bins");
  if (centers.size() != M) throw invalid_argument("Length mismatch");
  const double span = centers[M - 1] - centers[0];
  if (!(span > 0.0)) throw degenerate_centers();

  std::vector<double> offsets(M);
  for (std::size_t j = 0; j < M; ++j) offsets[j] = (centers[j] - centers[0]) / span;

  Spectrum s;
  s.source_centers.assign(centers.begin(), centers.end());
  s.amplitudes.resize(M);
  for (std::size_t k = 0; k < M; ++k) {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t j = 0; j < M; ++j) {
      if (probs[j] == 0.0) continue;
      // whole turns dropped before the trig call
      const double turns = std::fmod(static_cast<double>(k) * offsets[j], 1.0);
      acc += std::polar(probs[j], -2.0 * std::numbers::pi * turns);
    }
    s.amplitudes[k] = acc;
  }
  return s;
}

inline Spectrum log_spectrum(const LogBinning& binning) {
  return log_spectrum(binning.probs, binning.centers);
}

}  // namespace logent
