#include "pilotwave/guidance/wave_source.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pilotwave/error.hpp"

namespace pilotwave {

StationarySource::StationarySource(const WaveFunction& psi, double resolution)
    : field_(velocity_field(psi)), resolution_(resolution) {
  if (!(resolution > 0.0)) throw InvalidArgument("stationary source: resolution must be > 0");
}

double StationarySource::t_end() const { return std::numeric_limits<double>::infinity(); }

VelocitySample StationarySource::velocity(const Point& x, double) const {
  return interpolate(field_, x);
}

SnapshotSource::SnapshotSource(WaveFunction psi0, Potential potential, double t_final,
                               Settings settings)
    : initial_(psi0), final_(psi0), t_final_(psi0.time() + t_final), spacing_(0.0), dt_(settings.dt) {
  if (!(t_final >= 0.0) || !std::isfinite(t_final))
    throw InvalidArgument("snapshot source: t_final must be finite and >= 0");
  if (!(settings.dt > 0.0)) throw InvalidArgument("snapshot source: dt must be > 0");
  if (settings.steps_per_snapshot == 0)
    throw InvalidArgument("snapshot source: steps_per_snapshot must be >= 1");

  snapshots_.push_back(velocity_field(final_));
  if (t_final == 0.0) {
    spacing_ = settings.dt * static_cast<double>(settings.steps_per_snapshot);
    return;
  }

  const double nominal = settings.dt * static_cast<double>(settings.steps_per_snapshot);
  const auto intervals = static_cast<std::size_t>(std::ceil(t_final / nominal - 1e-9));
  spacing_ = t_final / static_cast<double>(intervals);
  const auto substeps = static_cast<std::size_t>(std::ceil(spacing_ / settings.dt - 1e-9));
  dt_ = spacing_ / static_cast<double>(substeps);

  const double t0 = final_.time();
  SplitStepSolver solver(final_.grid(), final_.components(), std::move(potential), dt_,
                         settings.solver);
  snapshots_.reserve(intervals + 1);
  for (std::size_t j = 1; j <= intervals; ++j) {
    solver.advance(final_, substeps);
    // Pin the clock to the snapshot time so rounding does not accumulate.
    final_.set_time(t0 + static_cast<double>(j) * spacing_);
    snapshots_.push_back(velocity_field(final_));
  }
  absorbed_ = solver.absorbed();
}

VelocitySample SnapshotSource::velocity(const Point& x, double t) const {
  const double t0 = snapshots_.front().time;
  if (snapshots_.size() == 1) return interpolate(snapshots_.front(), x);
  const double s = std::clamp((t - t0) / spacing_, 0.0, static_cast<double>(snapshots_.size() - 1));
  auto j = static_cast<std::size_t>(s);
  if (j >= snapshots_.size() - 1) j = snapshots_.size() - 2;
  const double theta = s - static_cast<double>(j);

  const VelocitySample a = interpolate(snapshots_[j], x);
  if (theta == 0.0) return a;
  const VelocitySample b = interpolate(snapshots_[j + 1], x);
  VelocitySample out;
  out.outside = a.outside || b.outside;
  out.masked = theta < 0.5 ? a.masked : b.masked;
  for (std::size_t k = 0; k < 2; ++k) out.v[k] = (1.0 - theta) * a.v[k] + theta * b.v[k];
  return out;
}

}  // namespace pilotwave
