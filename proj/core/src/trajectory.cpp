#include "pilotwave/guidance/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "pilotwave/rng.hpp"

namespace pilotwave {

namespace {

double norm(const Point& p) { return std::hypot(p[0], p[1]); }

Point axpy(const Point& x, double h, const Point& v) { return {x[0] + h * v[0], x[1] + h * v[1]}; }

struct Step {
  Point x{0.0, 0.0};
  bool masked = false;
  bool outside = false;
};

// One classical RK4 step with the first stage already evaluated.
Step rk4(const WaveSource& src, const Point& x, double t, double h, const Point& k1) {
  Step s;
  auto stage = [&](const Point& p, double tt) {
    const VelocitySample vs = src.velocity(p, tt);
    s.masked |= vs.masked;
    s.outside |= vs.outside;
    return vs.v;
  };
  const Point k2 = stage(axpy(x, 0.5 * h, k1), t + 0.5 * h);
  const Point k3 = stage(axpy(x, 0.5 * h, k2), t + 0.5 * h);
  const Point k4 = stage(axpy(x, h, k3), t + h);
  for (std::size_t a = 0; a < 2; ++a)
    s.x[a] = x[a] + h / 6.0 * (k1[a] + 2.0 * k2[a] + 2.0 * k3[a] + k4[a]);
  return s;
}

std::string where(const Point& x, double t) {
  return "x = (" + std::to_string(x[0]) + ", " + std::to_string(x[1]) + ") at t = " +
         std::to_string(t);
}

}  // namespace

Trajectory integrate_trajectory(const WaveSource& source, const Point& x0, double t_final,
                                const IntegratorSettings& cfg, Provenance provenance,
                                bool record_path, double t_start) {
  if (!(cfg.tol > 0.0) || !(cfg.dt_min > 0.0))
    throw InvalidArgument("integrator: tol and dt_min must be > 0");
  if (!(t_final >= t_start)) throw InvalidArgument("integrator: t_final precedes t_start");
  if (t_final > source.t_end() * (1.0 + 1e-12) + 1e-12)
    throw InvalidArgument("integrator: t_final beyond the end of the wave source");

  VelocitySample v0 = source.velocity(x0, t_start);
  if (v0.outside) throw InvalidArgument("integrator: x0 outside the grid, " + where(x0, t_start));
  if (v0.masked) throw InvalidArgument("integrator: x0 in a masked (nodal) region, " + where(x0, t_start));

  const double dt_max = cfg.dt_max > 0.0 ? cfg.dt_max : source.resolution();
  const double out_dt = cfg.output_interval > 0.0 ? cfg.output_interval : source.resolution();
  if (!(dt_max >= cfg.dt_min)) throw InvalidArgument("integrator: dt_max < dt_min");

  Trajectory traj;
  provenance.initial = x0;
  traj.provenance = std::move(provenance);
  traj.times.push_back(t_start);
  traj.positions.push_back(x0);
  traj.flags.push_back(0);

  const double span = t_final - t_start;
  const auto rows =
      span > 0.0 ? static_cast<std::size_t>(std::ceil(span / out_dt - 1e-9)) : std::size_t{0};

  Point x = x0;
  double t = t_start;
  double h_try = dt_max;
  std::uint8_t pending_flag = 0;
  for (std::size_t r = 1; r <= rows; ++r) {
    const double t_out = r == rows ? t_final : t_start + static_cast<double>(r) * out_dt;
    std::uint8_t flag = 0;
    while (t < t_out) {
      const double remaining = t_out - t;
      const bool lands = h_try >= remaining;
      const double h = lands ? remaining : h_try;

      const Step full = rk4(source, x, t, h, v0.v);
      const Step a = rk4(source, x, t, 0.5 * h, v0.v);
      Step b;
      VelocitySample v1;
      bool bad = full.masked || full.outside || a.masked || a.outside;
      if (!bad) {
        const VelocitySample va = source.velocity(a.x, t + 0.5 * h);
        b = rk4(source, a.x, t + 0.5 * h, 0.5 * h, va.v);
        b.masked |= va.masked;
        b.outside |= va.outside;
        v1 = source.velocity(b.x, t + h);
        bad = b.masked || b.outside || v1.masked || v1.outside;
      }
      const double err = bad ? INFINITY : std::hypot(full.x[0] - b.x[0], full.x[1] - b.x[1]);
      const double dv = bad ? INFINITY : std::hypot(v1.v[0] - v0.v[0], v1.v[1] - v0.v[1]);
      const double vscale = std::max({norm(v0.v), norm(v1.v), cfg.tol / h});
      const bool reject = bad || err > cfg.tol || dv > cfg.max_relative_dv * vscale;

      if (reject && 0.5 * h >= cfg.dt_min) {
        ++traj.rejected_steps;
        h_try = 0.5 * h;
        continue;
      }
      if (reject) {
        // Forced through at the floor: take the best available estimate and log it.
        ++traj.dt_min_events;
        flag = 1;
        Step forced = b;
        if (bad) {
          forced = rk4(source, x, t, h, v0.v);
          if (forced.outside) throw LeftGrid("trajectory left the grid near " + where(x, t));
        }
        if (!source.grid().contains(forced.x))
          throw LeftGrid("trajectory left the grid near " + where(x, t));
        b = forced;
        v1 = source.velocity(b.x, t + h);
      }
      ++traj.accepted_steps;
      x = b.x;
      t = lands ? t_out : t + h;
      v0 = v1;
      if (!std::isfinite(x[0]) || !std::isfinite(x[1]))
        throw NumericalError("non-finite trajectory position near " + where(x, t));
      if (!reject && err < cfg.tol / 32.0 && dv < 0.25 * cfg.max_relative_dv * vscale && !lands)
        h_try = std::min(2.0 * h, dt_max);
    }
    pending_flag |= flag;
    if (record_path || r == rows) {
      traj.times.push_back(t_out);
      traj.positions.push_back(x);
      traj.flags.push_back(pending_flag);
      pending_flag = 0;
    }
  }
  traj.near_node_unreliable = traj.dt_min_events > cfg.unreliable_after;
  return traj;
}

Ensemble Ensemble::from_positions(std::vector<Point> positions, double time) {
  if (positions.empty()) throw InvalidArgument("ensemble: at least one member required");
  Ensemble e;
  e.current = positions;
  e.initial = std::move(positions);
  e.time = time;
  return e;
}

EnsembleRun evolve_ensemble(const Ensemble& ens, const WaveSource& source, double t_final,
                            const IntegratorSettings& settings, const EnsembleOptions& options) {
  const std::size_t n = ens.size();
  if (n == 0) throw InvalidArgument("ensemble: at least one member required");
  for (const Point& p : ens.current)
    if (!source.grid().contains(p)) throw InvalidArgument("ensemble: member outside the grid");

  EnsembleRun run;
  run.ensemble = ens;
  run.ensemble.time = t_final;
  run.status.assign(n, MemberStatus::kOk);
  const std::size_t kept = std::min(options.record_paths, n);
  run.paths.resize(kept);
  std::vector<std::string> reasons(n);
  std::vector<std::size_t> events(n, 0);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Provenance prov{derive_seed(options.seed, i), ens.current[i], options.experiment};
      try {
        Trajectory tr = integrate_trajectory(source, ens.current[i], t_final, settings,
                                             std::move(prov), i < kept, ens.time);
        run.ensemble.current[i] = tr.final_position();
        events[i] = tr.dt_min_events;
        if (tr.near_node_unreliable) run.status[i] = MemberStatus::kUnreliable;
        if (i < kept) run.paths[i] = std::move(tr);
      } catch (const std::exception& e) {
        run.status[i] = MemberStatus::kFailed;
        reasons[i] = e.what();
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < n; ++i) {
    run.dt_min_events += events[i];
    if (run.status[i] == MemberStatus::kUnreliable) ++run.unreliable;
    if (run.status[i] == MemberStatus::kFailed) run.failures.push_back({i, reasons[i]});
  }
  if (static_cast<double>(run.failures.size()) > options.max_failure_fraction * static_cast<double>(n)) {
    throw EnsembleFailure(std::to_string(run.failures.size()) + " of " + std::to_string(n) +
                              " ensemble members failed; first: " + run.failures.front().reason,
                          run.failures);
  }
  return run;
}

}  // namespace pilotwave
