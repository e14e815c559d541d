#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "pilotwave/guidance/trajectory.hpp"
#include "pilotwave/guidance/trajectory_io.hpp"
#include "pilotwave/guidance/velocity.hpp"
#include "pilotwave/guidance/wave_source.hpp"
#include "pilotwave/numerics/initializers.hpp"

using namespace pilotwave;

namespace {

WaveFunction box_ground(std::size_t points = 1024) {
  return make_wavefunction(Grid::line({0.0, 1.0, points}), BoxEigenstate{0.0, 1.0, 1});
}

WaveFunction windowed_plane_wave(double k) {
  const Grid g = Grid::line({-50.0, 50.0, 2048});
  std::vector<Complex> amps(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.position(i)[0];
    const double w = 0.5 * (std::tanh((x + 30.0) / 2.0) - std::tanh((x - 30.0) / 2.0));
    amps[i] = w * std::exp(Complex(0.0, k * x));
  }
  WaveFunction psi(g, 1, amps);
  psi.normalize();
  return psi;
}

SnapshotSource free_gaussian_source(double t_final) {
  const Grid g = Grid::line({-16.0, 16.0, 512});
  const WaveFunction psi = make_wavefunction(g, GaussianPacket{{0.0, 0.0}, {1.0, 1.0}, {0.0, 0.0}});
  return SnapshotSource(psi, FreePotential{}, t_final, {1e-3, 20, {}});
}

}  // namespace

TEST(Velocity, RealWaveFunctionHasZeroVelocity) {
  const VelocityField f = velocity_field(box_ground());
  ASSERT_LT(f.masked_count(), f.grid.size());
  for (std::size_t i = 0; i < f.grid.size(); ++i)
    if (!f.masked[i]) EXPECT_LE(std::abs(f.values[0][i]), 1e-10);
}

TEST(Velocity, PlaneWaveMovesAtK) {
  const VelocityField f = velocity_field(windowed_plane_wave(2.0));
  for (std::size_t i = 0; i < f.grid.size(); ++i)
    if (std::abs(f.grid.position(i)[0]) < 10.0) EXPECT_NEAR(f.values[0][i], 2.0, 1e-6);
}

TEST(Velocity, FreeGaussianMatchesAnalyticPhase) {
  const SnapshotSource src = free_gaussian_source(2.0);
  const VelocitySample s = src.velocity({1.0, 0.0}, 2.0);
  EXPECT_FALSE(s.masked);
  EXPECT_NEAR(s.v[0], 0.25, 1e-3);
  EXPECT_NEAR(s.v[0], oracle::free_velocity(1.0, 1.0, 2.0), 1e-3);
  // Between snapshots as well.
  const VelocitySample mid = src.velocity({-2.0, 0.0}, 1.23);
  EXPECT_NEAR(mid.v[0], oracle::free_velocity(-2.0, 1.0, 1.23), 1e-3);
}

TEST(Velocity, SpinorCurrentUsesBothComponents) {
  const Grid g = Grid::line({-12.0, 12.0, 256});
  const WaveFunction psi = make_wavefunction(g, SpinorGaussian{{0.6, 0.0}, {0.0, 0.8}, 0.0, 1.0, 1.5});
  const VelocityField f = velocity_field(psi);
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!f.masked[i] && std::abs(g.position(i)[0]) < 4.0) EXPECT_NEAR(f.values[0][i], 1.5, 1e-9);
}

TEST(Velocity, NodesAreMaskedAndZeroFieldIsDegenerate) {
  const VelocityField f = velocity_field(box_ground(256));
  EXPECT_TRUE(f.masked[0]);
  EXPECT_GT(f.node_floor, 0.0);
  const Grid g = Grid::line({0.0, 1.0, 64});
  EXPECT_THROW(velocity_field(WaveFunction(g, 1)), DegenerateField);
}

TEST(Velocity, CubicInterpolationIsExactForCubics) {
  VelocityField f;
  f.grid = Grid::line({-2.0, 2.0, 32});
  f.values[0].resize(32);
  f.masked.assign(32, 0);
  auto poly = [](double x) { return 0.3 * x * x * x - x * x + 0.5 * x - 2.0; };
  for (std::size_t i = 0; i < 32; ++i) f.values[0][i] = poly(f.grid.position(i)[0]);
  for (double x : {-1.7, -0.33, 0.01, 1.2}) EXPECT_NEAR(interpolate(f, {x, 0.0}).v[0], poly(x), 1e-12);
  EXPECT_TRUE(interpolate(f, {1.99, 0.0}).outside);
}

TEST(Trajectory, FreeGaussianScalesWithWidth) {
  const SnapshotSource src = free_gaussian_source(2.0);
  const Trajectory tr = integrate_trajectory(src, {1.0, 0.0}, 2.0);
  EXPECT_NEAR(tr.final_position()[0], std::sqrt(2.0), 1e-3);
  for (std::size_t i = 0; i < tr.times.size(); ++i)
    EXPECT_NEAR(tr.positions[i][0], oracle::free_trajectory(1.0, 1.0, tr.times[i]), 1e-3);
  for (std::size_t i = 1; i < tr.times.size(); ++i) EXPECT_GT(tr.times[i], tr.times[i - 1]);
  EXPECT_EQ(tr.dt_min_events, 0u);
}

TEST(Trajectory, BoxGroundStateIsAtRest) {
  const StationarySource src(box_ground());
  for (double x0 : {0.05, 0.3, 0.5, 0.77}) {
    const Trajectory tr = integrate_trajectory(src, {x0, 0.0}, 10.0);
    for (const Point& p : tr.positions) EXPECT_NEAR(p[0], x0, 1e-8);
  }
}

TEST(Trajectory, PlaneWaveTranslatesUniformly) {
  const SnapshotSource src(windowed_plane_wave(2.0), FreePotential{}, 1.0, {1e-3, 20, {}});
  const Trajectory tr = integrate_trajectory(src, {0.0, 0.0}, 1.0);
  EXPECT_NEAR(tr.final_position()[0], 2.0, 1e-3);
}

TEST(Trajectory, HalvingToleranceConverges) {
  const SnapshotSource src = free_gaussian_source(2.0);
  for (double tol : {1e-4, 1e-5, 1e-6}) {
    IntegratorSettings a, b;
    a.tol = tol;
    b.tol = tol / 2.0;
    const double xa = integrate_trajectory(src, {1.3, 0.0}, 2.0, a).final_position()[0];
    const double xb = integrate_trajectory(src, {1.3, 0.0}, 2.0, b).final_position()[0];
    EXPECT_LT(std::abs(xa - xb), 10.0 * tol) << "tol " << tol;
  }
}

TEST(Trajectory, DeterministicOutput) {
  const SnapshotSource src = free_gaussian_source(1.0);
  const Trajectory a = integrate_trajectory(src, {0.7, 0.0}, 1.0, {}, {42, {}, "det"});
  const Trajectory b = integrate_trajectory(src, {0.7, 0.0}, 1.0, {}, {42, {}, "det"});
  std::ostringstream sa, sb;
  write_trajectory_csv(sa, a, 1);
  write_trajectory_csv(sb, b, 1);
  EXPECT_EQ(sa.str(), sb.str());
}

TEST(Trajectory, PreconditionsAndLeavingTheGrid) {
  const Grid g = Grid::line({-10.0, 10.0, 256});
  const WaveFunction moving = make_wavefunction(g, GaussianPacket{{0.0, 0.0}, {1.0, 1.0}, {3.0, 0.0}});
  const SnapshotSource src(moving, FreePotential{}, 3.0, {1e-3, 20, {}});
  EXPECT_THROW(integrate_trajectory(src, {2.0, 0.0}, 3.0), LeftGrid);
  EXPECT_THROW(integrate_trajectory(src, {12.0, 0.0}, 1.0), InvalidArgument);
  EXPECT_THROW(integrate_trajectory(src, {0.0, 0.0}, 4.0), InvalidArgument);

  const StationarySource box(box_ground(256));
  EXPECT_THROW(integrate_trajectory(box, {0.0, 0.0}, 1.0), InvalidArgument);  // starts on the wall node
}

TEST(Ensemble, BoxGroundStateMembersStayPut) {
  const StationarySource src(box_ground());
  std::vector<Point> xs;
  for (int i = 0; i < 10000; ++i) xs.push_back({0.01 + 0.98 * (i + 0.5) / 10000.0, 0.0});
  const EnsembleRun run = evolve_ensemble(Ensemble::from_positions(xs), src, 10.0);
  ASSERT_EQ(run.ensemble.size(), xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_LT(std::abs(run.ensemble.current[i][0] - xs[i][0]), 1e-8);
  EXPECT_TRUE(run.failures.empty());
}

TEST(Ensemble, OneDimensionalOrderIsPreserved) {
  const Grid g = Grid::line({-20.0, 20.0, 1024});
  const WaveFunction psi = make_wavefunction(g, TwoGaussian{2.5, 0.6, 0.0, 1.0});
  const SnapshotSource src(psi, FreePotential{}, 4.0, {5e-4, 40, {}});
  std::vector<Point> xs;
  for (double x = -4.0; x <= 4.0; x += 0.37) xs.push_back({x, 0.0});
  EnsembleOptions opts;
  opts.record_paths = xs.size();
  const EnsembleRun run = evolve_ensemble(Ensemble::from_positions(xs), src, 4.0, {}, opts);
  ASSERT_TRUE(run.failures.empty());
  const auto& paths = run.paths;
  for (std::size_t r = 0; r < paths.front().times.size(); ++r)
    for (std::size_t m = 1; m < paths.size(); ++m)
      EXPECT_LT(paths[m - 1].positions[r][0], paths[m].positions[r][0]) << "t = " << paths[m].times[r];
}

TEST(Ensemble, ZeroDurationLeavesMembersUnchanged) {
  const SnapshotSource src = free_gaussian_source(1.0);
  const std::vector<Point> xs{{-0.5, 0.0}, {0.25, 0.0}};
  const EnsembleRun run = evolve_ensemble(Ensemble::from_positions(xs), src, 0.0);
  EXPECT_EQ(run.ensemble.current, xs);
}

TEST(Ensemble, ThreadCountDoesNotChangeResults) {
  const SnapshotSource src = free_gaussian_source(1.0);
  std::vector<Point> xs;
  for (int i = 0; i < 64; ++i) xs.push_back({-3.0 + 6.0 * i / 63.0, 0.0});
  EnsembleOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const auto a = evolve_ensemble(Ensemble::from_positions(xs), src, 1.0, {}, one);
  const auto b = evolve_ensemble(Ensemble::from_positions(xs), src, 1.0, {}, four);
  EXPECT_EQ(a.ensemble.current, b.ensemble.current);
}

TEST(Ensemble, FailuresAreAggregated) {
  const Grid g = Grid::line({-10.0, 10.0, 256});
  const WaveFunction moving = make_wavefunction(g, GaussianPacket{{0.0, 0.0}, {1.0, 1.0}, {3.0, 0.0}});
  const SnapshotSource src(moving, FreePotential{}, 3.0, {1e-3, 20, {}});
  // Leading members run off the right edge.
  std::vector<Point> xs;
  for (int i = 0; i < 20; ++i) xs.push_back({-2.0 + 0.2 * i, 0.0});
  EXPECT_THROW(evolve_ensemble(Ensemble::from_positions(xs), src, 3.0), EnsembleFailure);
  EnsembleOptions lenient;
  lenient.max_failure_fraction = 1.0;
  const EnsembleRun run = evolve_ensemble(Ensemble::from_positions(xs), src, 3.0, {}, lenient);
  EXPECT_FALSE(run.failures.empty());
  for (const auto& f : run.failures) EXPECT_EQ(run.status[f.index], MemberStatus::kFailed);
}

TEST(TrajectoryIo, CsvRoundTrip) {
  const SnapshotSource src = free_gaussian_source(1.0);
  const Trajectory tr = integrate_trajectory(src, {0.4, 0.0}, 1.0);
  std::stringstream ss;
  write_trajectory_csv(ss, tr, 1);
  const Trajectory back = read_trajectory_csv(ss);
  EXPECT_EQ(back.times, tr.times);
  EXPECT_EQ(back.positions, tr.positions);
  EXPECT_EQ(back.flags, tr.flags);

  const EnsembleRun run = evolve_ensemble(Ensemble::from_positions({{0.1, 0.0}, {0.2, 0.0}}), src, 1.0);
  std::stringstream es;
  write_ensemble_csv(es, run, 1);
  EXPECT_EQ(es.str().substr(0, es.str().find('\n')), "id,x0,x_t,flag");
  const auto rows = read_ensemble_csv(es);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1].final, run.ensemble.current[1]);

  const auto side = run_sidecar(7, IntegratorSettings{}, src.grid(), {{"dt", src.step()}});
  EXPECT_EQ(side["seed"], 7);
  EXPECT_TRUE(side.contains("tolerances"));
  EXPECT_TRUE(side.contains("grid"));
}
