#pragma once

#include <cstddef>
#include <vector>

#include "pilotwave/guidance/velocity.hpp"
#include "pilotwave/numerics/potential.hpp"
#include "pilotwave/numerics/split_step.hpp"
#include "pilotwave/numerics/wavefunction.hpp"

namespace pilotwave {

// Time-dependent guidance field seen by the trajectory integrator.
class WaveSource {
 public:
  virtual ~WaveSource() = default;

  virtual const Grid& grid() const = 0;
  // Latest time the source can be sampled at (absolute clock).
  virtual double t_end() const = 0;
  // Natural time resolution; also the integrator's default largest step.
  virtual double resolution() const = 0;
  virtual VelocitySample velocity(const Point& x, double t) const = 0;
};

// A stationary state: one velocity field valid at every time.
class StationarySource final : public WaveSource {
 public:
  explicit StationarySource(const WaveFunction& psi, double resolution = 0.1);

  const Grid& grid() const override { return field_.grid; }
  double t_end() const override;
  double resolution() const override { return resolution_; }
  VelocitySample velocity(const Point& x, double t) const override;

  const VelocityField& field() const noexcept { return field_; }

 private:
  VelocityField field_;
  double resolution_;
};

// Split-step evolution from Ψ₀ to t_final with a velocity snapshot every
// `steps_per_snapshot` steps. Sampling is linear in time between snapshots.
class SnapshotSource final : public WaveSource {
 public:
  struct Settings {
    double dt = 1e-3;
    std::size_t steps_per_snapshot = 10;
    SolverOptions solver{};
  };

  // The step is shrunk so that whole steps land on every snapshot time.
  SnapshotSource(WaveFunction psi0, Potential potential, double t_final, Settings settings);

  const Grid& grid() const override { return snapshots_.front().grid; }
  double t_end() const override { return t_final_; }
  double resolution() const override { return spacing_; }
  VelocitySample velocity(const Point& x, double t) const override;

  const WaveFunction& initial() const noexcept { return initial_; }
  const WaveFunction& final_state() const noexcept { return final_; }
  std::size_t snapshot_count() const noexcept { return snapshots_.size(); }
  const VelocityField& snapshot(std::size_t i) const { return snapshots_.at(i); }
  double spacing() const noexcept { return spacing_; }
  double step() const noexcept { return dt_; }
  double absorbed() const noexcept { return absorbed_; }

 private:
  WaveFunction initial_;
  WaveFunction final_;
  std::vector<VelocityField> snapshots_;
  double t_final_;
  double spacing_;
  double dt_;
  double absorbed_ = 0.0;
};

}  // namespace pilotwave
