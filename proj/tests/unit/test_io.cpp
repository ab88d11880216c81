#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <logent/logent.hpp>

using namespace logent;

TEST(Io, EntropyReportJson) {
  const auto r = full_pipeline(DistanceMultiset({1.0, 2.0, 5.0, 9.0}, 10.0, {3.0}), 4);
  const auto j = io::to_json(r);
  EXPECT_EQ(j.at("M"), 4);
  EXPECT_EQ(j.at("H").get<double>(), r.H);
  EXPECT_EQ(j.at("weights").size(), 4u);
  EXPECT_EQ(j.at("provenance").at("R"), 10.0);
  EXPECT_EQ(j.at("provenance").at("base_points")[0], 3.0);
}

TEST(Io, BinningAndSpectrumJson) {
  const auto b = log_bin(DistanceMultiset({1.0, 2.0, 5.0, 9.0}, 10.0), 3);
  const auto j = io::to_json(b);
  for (const char* key : {"M", "log_edges", "counts", "probs", "centers"}) EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.at("log_edges").size(), 4u);
  const auto s = io::to_json(log_spectrum(b));
  ASSERT_EQ(s.size(), 3u);
  EXPECT_EQ(s[0].size(), 2u);
  EXPECT_NEAR(s[0][0].get<double>(), 1.0, 1e-12);
}

TEST(Io, CsvHeaders) {
  std::ostringstream os;
  io::write_csv(os, StabilityProfile{101, 50, {1e3, 1e4}, {3.1, 3.2}, {0.1, 0.0}});
  EXPECT_EQ(os.str(), "R,H,envelope\n1000,3.1,0.1\n10000,3.2,0\n");
  std::ostringstream dev;
  io::write_csv(dev, DeviationProfile{});
  EXPECT_EQ(dev.str().substr(0, dev.str().find('\n')),
            "base_point,M,R,H_prime,null_mean,null_stderr,null_lambda,null_replicates,delta,z_score");
}

TEST(Io, ReadValues) {
  std::istringstream in("# comment\n5\n\n 2.5 \n1e3\n");
  EXPECT_EQ(io::read_values(in), (std::vector<double>{5.0, 2.5, 1000.0}));
  std::istringstream bad("3\nfour\n");
  EXPECT_THROW(io::read_values(bad), io_error);
  EXPECT_THROW(io::read_values_file("/nonexistent/points.txt"), io_error);
}

TEST(Io, WriteThenReadValues) {
  std::ostringstream os;
  io::write_values(os, std::vector<double>{0.1, 1.0 / 3.0, 1e300});
  std::istringstream in(os.str());
  EXPECT_EQ(io::read_values(in), (std::vector<double>{0.1, 1.0 / 3.0, 1e300}));
}

TEST(Io, BaselineTableRoundTrip) {
  BaselineTable t;
  t.entries.push_back({50, 3.6, 0.001, 1.0, 1e6, 500, 7});
  const auto back = baseline_from_json(to_json(t));
  ASSERT_EQ(back.entries.size(), 1u);
  EXPECT_EQ(back.at(50).mean, 3.6);
  EXPECT_EQ(back.at(50).seed, 7u);
  EXPECT_FALSE(back.find(8));
  EXPECT_THROW(back.at(8), configuration_error);
  EXPECT_THROW(baseline_from_json(nlohmann::json{{"version", 1}}), io_error);
}

TEST(Io, ShippedBaselineAndEnvironmentOverride) {
  unsetenv(baseline_env_var);
  const auto shipped = load_baseline();
  const auto e = shipped.at(50);
  EXPECT_EQ(e.lambda, 1.0);
  EXPECT_EQ(e.R, 1e6);
  EXPECT_EQ(e.replicates, 500u);
  EXPECT_GT(e.mean, 0.0);
  EXPECT_LT(e.mean, std::log(50.0));

  const auto path = std::filesystem::temp_directory_path() / "logent_baseline_override.json";
  BaselineTable custom;
  custom.entries.push_back({50, 1.0, 0.5, 2.0, 10.0, 3, 1});
  std::ofstream(path) << to_json(custom).dump();
  setenv(baseline_env_var, path.c_str(), 1);
  EXPECT_EQ(load_baseline().at(50).mean, 1.0);
  unsetenv(baseline_env_var);
  std::filesystem::remove(path);
  setenv(baseline_env_var, "/nonexistent/baseline.json", 1);
  EXPECT_THROW(load_baseline(), io_error);
  unsetenv(baseline_env_var);
}
