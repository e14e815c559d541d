#pragma once

#include <cstdint>
#include <vector>

#include "pilotwave/experiments/outcome.hpp"
#include "pilotwave/numerics/wavefunction.hpp"

namespace pilotwave {

// A particle in the eigenstate `level` of a hard-wall box [0, L]. Phase 1
// checks that it is at rest; phase 2 removes the walls, lets the packet fly
// for T and reads off v_meas = (X(T) − X(0))/T.
struct BoxExperimentConfig {
  double length = 1.0;
  int level = 1;
  double flight_time = 10.0;
  std::size_t ensemble = 100000;
  std::uint64_t seed = 1;

  std::size_t box_points = 1024;
  double rest_time = 10.0;
  std::size_t rest_members = 1000;
  std::size_t flight_points = 16384;
  double dt = 2e-3;
  std::size_t steps_per_snapshot = 10;
  double tol = 1e-5;
  // Largest integrator step during the flight; the field is close to x/t
  // soon after release so steps may span several snapshots.
  double flight_dt_max = 0.1;
  std::size_t plot_trajectories = kMaxPlotTrajectories;
  unsigned threads = 0;

  void validate() const;
  // Half-width of the flight grid: wide enough that the fastest momentum the
  // grid resolves stays inside it for the whole flight.
  double flight_half_width() const;
};

// CDF of |ψ̂(p)|² computed by direct Fourier summation of a sampled 1D field
// on a uniform momentum mesh.
class MomentumCdf {
 public:
  MomentumCdf(const WaveFunction& psi, double p_max, std::size_t points);
  double operator()(double p) const;

 private:
  double p_lo_, dp_;
  std::vector<double> cumulative_;
};

// Labels are unused; values hold v_meas. The summary carries the phase-1 rest
// checks, v_meas statistics, the KS distance against the momentum CDF and the
// position-velocity spread product.
ExperimentOutcome run_box_experiment(const BoxExperimentConfig& cfg);

}  // namespace pilotwave
