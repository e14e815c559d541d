#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "oracles.hpp"
#include "pilotwave/experiments/box_experiment.hpp"
#include "pilotwave/experiments/double_slit.hpp"
#include "pilotwave/experiments/stern_gerlach.hpp"
#include "pilotwave/numerics/initializers.hpp"

using namespace pilotwave;

TEST(DoubleSlit, ConfigValidation) {
  DoubleSlitConfig c;
  c.separation = 3.0;  // < 4 widths
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = DoubleSlitConfig{};
  c.t_screen = 0.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  EXPECT_THROW(parse_slits("middle"), InvalidArgument);
  EXPECT_EQ(parse_slits("upper"), SlitSelection::kUpper);
}

TEST(DoubleSlit, BothSlitsFringesAndNoCrossing) {
  DoubleSlitConfig c;
  c.ensemble = 2000;
  const auto out = run_double_slit(c);
  ASSERT_EQ(out.size(), 2000u);
  EXPECT_GE(out.summary["maxima"].get<int>(), 3);
  EXPECT_GE(out.summary["target_maxima"].get<int>(), 3);
  EXPECT_EQ(out.summary["symmetry_line_crossings"].get<int>(), 0);
  EXPECT_EQ(out.summary["slit_label_agreement"].get<double>(), 1.0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out.labels[i], out.initial[i][1] > 0.0 ? 1 : -1);
    EXPECT_EQ(out.final[i][1] > 0.0, out.initial[i][1] > 0.0);
  }
  EXPECT_EQ(out.trajectories.size(), kMaxPlotTrajectories);
}

TEST(DoubleSlit, SingleSlitIsUnimodal) {
  for (auto s : {SlitSelection::kUpper, SlitSelection::kLower}) {
    DoubleSlitConfig c;
    c.slits = s;
    c.ensemble = 2000;
    const auto out = run_double_slit(c);
    EXPECT_EQ(out.summary["maxima"].get<int>(), 1) << to_string(s);
  }
}

TEST(DoubleSlit, DeterministicInSeed) {
  DoubleSlitConfig c;
  c.ensemble = 300;
  c.plot_trajectories = 0;
  const auto a = run_double_slit(c);
  const auto b = run_double_slit(c);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.final[i], b.final[i]);
  c.threads = 1;
  const auto one = run_double_slit(c);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.final[i], one.final[i]);
}

TEST(SternGerlach, SpinLabelConvention) {
  EXPECT_EQ(spin_label(0.5, 9.0, FieldOrientation::kNormal), 1);
  EXPECT_EQ(spin_label(0.5, 9.0, FieldOrientation::kReversed), -1);
  EXPECT_EQ(spin_label(-0.5, -9.0, FieldOrientation::kNormal), -1);
  EXPECT_EQ(spin_label(-0.5, -9.0, FieldOrientation::kReversed), 1);
}

TEST(SternGerlach, UpperStartMovesUpInBothOrientations) {
  for (auto o : {FieldOrientation::kNormal, FieldOrientation::kReversed}) {
    SternGerlachConfig c;
    c.orientation = o;
    c.z0 = {0.7};
    const auto out = run_stern_gerlach(c);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_GT(out.final[0][0], out.initial[0][0] + 5.0);
    EXPECT_EQ(out.labels[0], o == FieldOrientation::kNormal ? 1 : -1);
  }
}

TEST(SternGerlach, EnsembleFollowsSpinWeights) {
  SternGerlachConfig c;
  c.ensemble = 4000;
  const auto out = run_stern_gerlach(c);
  const double f = out.summary["label_up_frequency"].get<double>();
  EXPECT_NEAR(f, 0.5, 3.0 * std::sqrt(0.25 / 4000.0));
  // Unequal weights: the up frequency follows |c_up|².
  c.c_up = {std::sqrt(0.8), 0.0};
  c.c_down = {0.0, std::sqrt(0.2)};
  const auto skew = run_stern_gerlach(c);
  EXPECT_NEAR(skew.summary["label_up_frequency"].get<double>(), 0.8, 3.0 * std::sqrt(0.16 / 4000.0));
}

TEST(SternGerlach, RejectsUnseparatedPackets) {
  SternGerlachConfig c;
  c.coupling = 0.3;
  c.z0 = {0.5};
  EXPECT_THROW(run_stern_gerlach(c), PacketsNotSeparated);
  c = SternGerlachConfig{};
  c.c_up = {0.9, 0.0};
  EXPECT_THROW(c.validate(), InvalidArgument);
}

TEST(SternGerlach, ContextualityWitness) {
  const auto rep = run_contextuality_suite(SternGerlachConfig{});
  ASSERT_EQ(rep.cases.size(), 100u);
  EXPECT_EQ(rep.same_deflection, 100u);
  EXPECT_EQ(rep.negated_label, 100u);
  EXPECT_TRUE(rep.pass());
}

TEST(Box, MomentumCdfMatchesAnalyticDensity) {
  const auto psi = make_wavefunction(Grid::line({0.0, 1.0, 1024}), BoxEigenstate{0.0, 1.0, 1});
  const MomentumCdf cdf(psi, 200.0, 40001);
  EXPECT_NEAR(cdf(0.0), 0.5, 1e-4);
  // Integrate the closed form on a fine mesh as the reference.
  double acc = 0.0;
  const double dp = 1e-3;
  for (double p = -200.0; p < 5.0; p += dp) acc += oracle::box_ground_momentum_density(p + 0.5 * dp) * dp;
  EXPECT_NEAR(cdf(5.0), acc, 2e-3);
}

TEST(Box, RestThenFlight) {
  BoxExperimentConfig c;
  c.ensemble = 4000;
  c.rest_members = 200;
  const auto out = run_box_experiment(c);
  EXPECT_LT(out.summary["in_box_max_speed"].get<double>(), 1e-10);
  EXPECT_LT(out.summary["rest_max_displacement"].get<double>(), 1e-8);
  const double sd = out.summary["v_meas_std"].get<double>();
  EXPECT_GT(sd, 0.5 / c.length * std::numbers::pi * 0.1);
  EXPECT_GE(out.summary["spread_product"].get<double>(), 0.475);
  EXPECT_LT(out.summary["ks_momentum"].get<double>(), 5e-2);
  for (std::size_t i = 0; i < out.size(); ++i)
    EXPECT_NEAR(out.values[i], (out.final[i][0] - out.initial[i][0]) / c.flight_time, 1e-12);
}

TEST(Box, ExcitedStateAlsoRests) {
  BoxExperimentConfig c;
  c.level = 2;
  c.ensemble = 1000;
  c.rest_members = 200;
  const auto out = run_box_experiment(c);
  EXPECT_LT(out.summary["in_box_max_speed"].get<double>(), 1e-10);
  EXPECT_LT(out.summary["rest_max_displacement"].get<double>(), 1e-8);
}

TEST(Outcome, FilesFollowTheCsvContract) {
  DoubleSlitConfig c;
  c.ensemble = 50;
  c.plot_trajectories = 3;
  const auto out = run_double_slit(c);
  const auto dir = std::filesystem::temp_directory_path() / "pilotwave_outcome_test";
  std::filesystem::remove_all(dir);
  write_outcome_files(dir, out);
  std::ifstream csv(dir / "outcome.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "id,x0,y0,x_t,y_t,slit,flag");
  std::size_t rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  EXPECT_EQ(rows, 50u);
  EXPECT_TRUE(std::filesystem::exists(dir / "summary.json"));
  std::size_t traj = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir / "trajectories")) traj += e.is_regular_file();
  EXPECT_EQ(traj, 3u);
  std::filesystem::remove_all(dir);
}
