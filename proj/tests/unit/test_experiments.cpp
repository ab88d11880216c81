#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include <logent/experiments.hpp>

using namespace logent;

namespace {
const PrimeTable& table_1e6() {
  static const PrimeTable t = sieve_up_to(1'000'200);
  return t;
}
}  // namespace

TEST(Experiments, TailEnvelope) {
  EXPECT_EQ(tail_envelope({1.0, 3.0, 2.0, 2.5}), (std::vector<double>{2.0, 1.0, 0.5, 0.0}));
  EXPECT_EQ(tail_envelope({}), std::vector<double>{});
}

TEST(Experiments, DuplicateRadiusContributesNothing) {
  const auto prof = stability_profile(101, 50, {5000.0, 5000.0}, table_1e6());
  EXPECT_EQ(prof.H_values[0], prof.H_values[1]);
  EXPECT_EQ(prof.envelope[0], 0.0);
}

TEST(Experiments, StabilityProfileAppendixBase) {
  const auto prof = stability_profile(101, 50, {1e3, 1e4, 1e5, 1e6}, table_1e6(), 2);
  ASSERT_EQ(prof.H_values.size(), 4u);
  for (const double h : prof.H_values) {
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log(50.0));
  }
  for (std::size_t i = 1; i < prof.envelope.size(); ++i) EXPECT_LE(prof.envelope[i], prof.envelope[i - 1]);
  EXPECT_LE(prof.envelope.back(), prof.envelope.front());
  // regression anchors, frozen after the first verified run
  const std::vector<double> anchors{3.4676090088625311, 3.5255900848075803, 3.5841373983258427, 3.6363706542270711};
  for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(prof.H_values[i], anchors[i], 1e-12) << i;
  // each value equals the direct pipeline
  EXPECT_EQ(prof.H_values[2], full_pipeline(truncated_distances(101, table_1e6(), 1e5), 50).H);
}

TEST(Experiments, StabilityCoverageError) {
  EXPECT_THROW(stability_profile(101, 50, {1e3, 2e6}, table_1e6()), coverage_error);
  EXPECT_THROW(stability_profile(101, 50, {1e4, 1e3}, table_1e6()), invalid_argument);
}

TEST(Experiments, DeviationDefinition) {
  NullEstimate null;
  null.mean_H = 3.5;
  null.std_error = 0.01;
  null.lambda = 0.2;
  null.replicates = 10;
  const auto zero = make_deviation(101, 50, 1e5, 3.5, null);
  EXPECT_EQ(zero.delta, 0.0);
  EXPECT_EQ(zero.z_score, 0.0);
  const auto d = make_deviation(101, 50, 1e5, 3.6, null);
  EXPECT_EQ(d.delta, 3.6 - 3.5);
  EXPECT_NEAR(d.z_score, 10.0, 1e-9);
}

TEST(Experiments, DeviationAppendixBase) {
  const auto dev = deviation_profile(101, 50, 1e5, table_1e6(), 5, 200, std::nullopt, 2);
  EXPECT_NEAR(dev.null_lambda, 1.0 / std::log(101.0), 1e-15);
  EXPECT_EQ(dev.null_replicates, 200u);
  EXPECT_EQ(dev.delta, dev.H_prime - dev.null_mean);
  EXPECT_TRUE(std::isfinite(dev.z_score));
  EXPECT_GT(dev.null_stderr, 0.0);
  EXPECT_EQ(dev.H_prime, full_pipeline(truncated_distances(101, table_1e6(), 1e5), 50).H);
}

TEST(Experiments, IdenticalMultisetsGiveIdenticalDelta) {
  // Base points 3 and 13 see the same neighbourhood.
  const std::vector<double> pts{1, 2, 4, 5, 11, 12, 14, 15};
  const PointSet<double> set{pts, -INFINITY, INFINITY};
  const auto da = truncated_distances(3.0, set, 2.5);
  const auto db = truncated_distances(13.0, set, 2.5);
  ASSERT_TRUE(std::equal(da.values().begin(), da.values().end(), db.values().begin(), db.values().end()));
  const auto a = deviation_profile(3.0, 4, 2.5, set, 3, 20, 10.0);
  const auto b = deviation_profile(13.0, 4, 2.5, set, 3, 20, 10.0);
  EXPECT_EQ(a.H_prime, b.H_prime);
  EXPECT_EQ(a.delta, b.delta);
}

TEST(Experiments, FloydSamplingDrawsDistinctIndices) {
  CounterRng rng(3);
  std::vector<int> hits(20, 0);
  for (int i = 0; i < 20000; ++i) {
    const auto s = sample_without_replacement(20, 5, rng);
    ASSERT_EQ(s.size(), 5u);
    ASSERT_TRUE(std::adjacent_find(s.begin(), s.end()) == s.end());
    for (auto j : s) ++hits[j];
  }
  for (const int h : hits) EXPECT_NEAR(h, 5000, 300);
}

TEST(Experiments, DegenerateEnsemble) {
  const EnsembleConfig c{1, 1, 10000, 100000, 1e4, 50, 9, 5};
  const auto dist = ensemble_distribution(c, table_1e6(), std::nullopt);
  ASSERT_EQ(dist.samples.size(), 1u);
  const auto p = dist.multisets[0][0];
  EXPECT_EQ(dist.samples[0], full_pipeline(truncated_distances(p, table_1e6(), 1e4), 50).H);
  for (const double q : dist.quantiles) EXPECT_EQ(q, dist.samples[0]);
}

TEST(Experiments, EnsembleDeterminismAndSummaries) {
  const EnsembleConfig c{5, 60, 10000, 100000, 1e4, 50, 7, 10};
  const auto a = ensemble_distribution(c, table_1e6(), std::nullopt, 1);
  const auto b = ensemble_distribution(c, table_1e6(), std::nullopt, 3);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.multisets, b.multisets);
  for (std::size_t i = 1; i < a.quantiles.size(); ++i) EXPECT_LE(a.quantiles[i - 1], a.quantiles[i]);
  EXPECT_EQ(std::accumulate(a.histogram.counts.begin(), a.histogram.counts.end(), std::size_t{0}), 60u);
  for (const auto& ms : a.multisets) {
    EXPECT_EQ(ms.size(), 5u);
    for (auto p : ms) {
      EXPECT_GE(p, 10000u);
      EXPECT_LE(p, 100000u);
    }
  }
  for (const double h : a.samples) {
    EXPECT_GE(h, 0.0);
    EXPECT_LE(h, std::log(50.0));
  }
}

TEST(Experiments, EnsembleCentering) {
  const EnsembleConfig c{2, 20, 10000, 20000, 1e3, 16, 4, 5};
  const auto raw = ensemble_distribution(c, table_1e6(), std::nullopt);
  const auto centered = ensemble_distribution(c, table_1e6(), 1.25);
  EXPECT_TRUE(centered.centered);
  for (std::size_t i = 0; i < raw.samples.size(); ++i) EXPECT_EQ(centered.samples[i], raw.samples[i] - 1.25);
  EXPECT_NEAR(centered.quantiles[2], raw.quantiles[2] - 1.25, 1e-12);
}

TEST(Experiments, EnsembleErrors) {
  EXPECT_THROW(ensemble_distribution({5, 10, 24, 30, 10.0, 8, 1, 5}, table_1e6(), std::nullopt), invalid_argument);
  EXPECT_THROW(ensemble_distribution({0, 10, 10, 1000, 10.0, 8, 1, 5}, table_1e6(), std::nullopt), invalid_argument);
  EXPECT_THROW(ensemble_distribution({2, 10, 10, 2'000'000, 10.0, 8, 1, 5}, table_1e6(), std::nullopt),
               coverage_error);
}

TEST(Experiments, EnsembleSummariesAreExchangeable) {
  // Reversing the candidate list changes the draws, not the distribution.
  const auto& t = table_1e6();
  const auto first = std::lower_bound(t.primes.begin(), t.primes.end(), 10000u);
  const auto last = std::upper_bound(first, t.primes.end(), 20000u);
  const std::vector<std::uint64_t> forward(first, last);
  const std::vector<std::uint64_t> reversed(forward.rbegin(), forward.rend());
  std::vector<double> med_f, med_r;
  bool any_difference = false;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const EnsembleConfig c{3, 60, 10000, 20000, 2e3, 32, seed, 10};
    const auto a = ensemble_distribution(c, forward, t, std::nullopt);
    const auto b = ensemble_distribution(c, reversed, t, std::nullopt);
    any_difference = any_difference || a.samples != b.samples;
    med_f.push_back(a.quantiles[2]);
    med_r.push_back(b.quantiles[2]);
  }
  EXPECT_TRUE(any_difference);
  const double se = std::sqrt(stats::sample_variance(med_f) / 10 + stats::sample_variance(med_r) / 10);
  EXPECT_LT(std::abs(stats::mean(med_f) - stats::mean(med_r)), 3.0 * se);
}
