#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include <logent/entropy.hpp>

#include "oracle/oracle.hpp"
#include "test_util.hpp"

using namespace logent;

namespace {

Spectrum from_magnitudes(const std::vector<double>& a) {
  Spectrum s;
  for (const double x : a) s.amplitudes.emplace_back(x, 0.0);
  s.source_centers = testutil::equally_spaced(a.size());
  return s;
}

// Values frozen from tests/oracle/reference_pipeline.py.
constexpr double uniform8_H = 1.5787213321366174;
constexpr double appendix_H = 3.4795389189972052;

}  // namespace

TEST(Entropy, FlatMagnitudesGiveLogM) {
  for (std::size_t M : {2u, 8u, 50u}) {
    const auto r = spectral_entropy(from_magnitudes(std::vector<double>(M, 1.0)));
    EXPECT_NEAR(r.H, std::log(static_cast<double>(M)), 1e-12);
    for (const double w : r.weights) EXPECT_NEAR(w, 1.0 / M, 1e-15);
  }
}

TEST(Entropy, SingleNonzeroMagnitudeIsExactlyZero) {
  const auto r = spectral_entropy(from_magnitudes({1.0, 0.0, 0.0, 0.0}));
  EXPECT_EQ(r.H, 0.0);
  EXPECT_EQ(r.weights, (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
}

TEST(Entropy, UniformEightBinHandDerivation) {
  // |mu| = (1, 1/8 x6, 1): sum 11/4, w = (4/11, 1/22 x6, 4/11)
  const double hand = -2.0 * (4.0 / 11.0) * std::log(4.0 / 11.0) - 6.0 * (1.0 / 22.0) * std::log(1.0 / 22.0);
  EXPECT_NEAR(hand, uniform8_H, 1e-15);
  const std::vector<double> p(8, 1.0 / 8.0);
  const auto r = spectral_entropy(log_spectrum(p, testutil::equally_spaced(8)));
  EXPECT_NEAR(r.H, hand, 1e-12);
  EXPECT_NEAR(r.weights[0], 4.0 / 11.0, 1e-12);
  EXPECT_NEAR(r.weights[3], 1.0 / 22.0, 1e-12);
}

TEST(Entropy, TwoBinsWithEqualMassGiveLog2) {
  const double e = std::numbers::e;
  const auto r = full_pipeline(DistanceMultiset({1.0, e, e * e}, 10.0), 2);
  EXPECT_NEAR(r.H, std::log(2.0), 1e-12);
  const auto r2 = full_pipeline(DistanceMultiset({2.0, 3.0, 50.0, 60.0}, 100.0), 2);
  EXPECT_NEAR(r2.H, std::log(2.0), 1e-12);
}

TEST(Entropy, AppendixExample) {
  const auto t = first_n_primes(10000);
  const auto d = truncated_distances(101, t, 5000.0);
  const auto r = full_pipeline(d, 50);
  EXPECT_NEAR(r.H, appendix_H, 1e-10);
  EXPECT_NEAR(r.H, oracle::pipeline({d.values().begin(), d.values().end()}, 50), 1e-10);
  EXPECT_EQ(r.M, 50u);
  ASSERT_TRUE(r.provenance.R);
  EXPECT_EQ(*r.provenance.R, 5000.0);
}

TEST(Entropy, AllZeroSpectrumIsRejected) {
  EXPECT_THROW(spectral_entropy(from_magnitudes({0.0, 0.0})), degenerate_spectrum);
  EXPECT_THROW(spectral_entropy(Spectrum{}), degenerate_spectrum);
}

TEST(Entropy, BoundsAndWeightsOnRandomVectors) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t M = 2 + trial % 120;
    const auto p = testutil::random_simplex(rng, M, 0.4);
    const auto spec = log_spectrum(p, testutil::equally_spaced(M));
    for (const auto mode : {WeightMode::magnitude, WeightMode::squared_magnitude}) {
      const auto r = spectral_entropy(spec, mode);
      ASSERT_GE(r.H, 0.0);
      ASSERT_LE(r.H, std::log(static_cast<double>(M)) + 1e-12);
      double s = 0.0;
      for (const double w : r.weights) {
        ASSERT_GE(w, 0.0);
        s += w;
      }
      ASSERT_NEAR(s, 1.0, 1e-12);
    }
    ASSERT_NEAR(spectral_entropy(spec).H, oracle::entropy(oracle::spectrum(p, testutil::equally_spaced(M))), 1e-12);
  }
}

TEST(Entropy, NotInvariantUnderPermutation) {
  const std::vector<double> a{0.5, 0.3, 0.1, 0.1};
  const std::vector<double> b{0.3, 0.5, 0.1, 0.1};
  const auto x = testutil::equally_spaced(4);
  EXPECT_GT(std::abs(spectral_entropy(log_spectrum(a, x)).H - spectral_entropy(log_spectrum(b, x)).H), 1e-3);
}

TEST(Entropy, ScaleInvariantWhenBinsAreStable) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = testutil::log_uniform_multiset(rng, 100, 1.0, 1e5);
    for (const double c : {1e-3, 7.0, 1e3}) {
      if (near_bin_boundary(d, 40) || near_bin_boundary(d.scaled(c), 40)) continue;
      ASSERT_NEAR(full_pipeline(d, 40).H, full_pipeline(d.scaled(c), 40).H, 1e-12);
    }
  }
}

TEST(Entropy, SquaredWeightsAreAnOption) {
  const std::vector<double> p(8, 1.0 / 8.0);
  const auto spec = log_spectrum(p, testutil::equally_spaced(8));
  const auto lin = spectral_entropy(spec);
  const auto sq = spectral_entropy(spec, WeightMode::squared_magnitude);
  // |mu|^2 = (1, 1/64 x6, 1): sum 2 + 6/64
  EXPECT_NEAR(sq.weights[0], 1.0 / (2.0 + 6.0 / 64.0), 1e-12);
  EXPECT_NE(lin.H, sq.H);
}
