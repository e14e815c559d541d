#include "pilotwave/experiments/box_experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pilotwave/equilibrium/born_sampler.hpp"
#include "pilotwave/equilibrium/statistics.hpp"
#include "pilotwave/guidance/velocity.hpp"
#include "pilotwave/guidance/wave_source.hpp"
#include "pilotwave/numerics/field_io.hpp"
#include "pilotwave/numerics/fourier.hpp"
#include "pilotwave/numerics/initializers.hpp"

namespace pilotwave {

void BoxExperimentConfig::validate() const {
  if (!(length > 0.0)) throw InvalidArgument("box: length must be > 0");
  if (level < 1) throw InvalidArgument("box: level must be >= 1");
  if (!(flight_time > 0.0)) throw InvalidArgument("box: flight_time must be > 0");
  if (ensemble == 0) throw InvalidArgument("box: ensemble must be >= 1");
  if (box_points < 16 || flight_points < 64) throw InvalidArgument("box: grids too coarse");
}

double BoxExperimentConfig::flight_half_width() const {
  // W = L/2 + k_max·T with k_max = π·N/(2W).
  const double a = 0.5 * length;
  const double c = std::numbers::pi * static_cast<double>(flight_points) * flight_time / 2.0;
  return 0.5 * (a + std::sqrt(a * a + 4.0 * c));
}

MomentumCdf::MomentumCdf(const WaveFunction& psi, double p_max, std::size_t points)
    : p_lo_(-p_max), dp_(2.0 * p_max / static_cast<double>(points - 1)) {
  if (psi.grid().dims() != 1 || psi.components() != 1)
    throw InvalidArgument("MomentumCdf: scalar 1D field required");
  const Grid& g = psi.grid();
  const auto amp = psi.component(0);
  const double dx = g.axis(0).spacing();
  const double scale = dx * dx / (2.0 * std::numbers::pi);
  std::vector<double> density(points);
  for (std::size_t k = 0; k < points; ++k) {
    const double p = p_lo_ + static_cast<double>(k) * dp_;
    Complex sum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (amp[i] == Complex(0.0)) continue;
      sum += amp[i] * std::polar(1.0, -p * g.position(i)[0]);
    }
    density[k] = std::norm(sum) * scale;
  }
  cumulative_.assign(points, 0.0);
  for (std::size_t k = 1; k < points; ++k)
    cumulative_[k] = cumulative_[k - 1] + 0.5 * (density[k - 1] + density[k]) * dp_;
  // Mass outside ±p_max is split evenly between the two tails.
  const double tail = std::max(0.0, 1.0 - cumulative_.back());
  for (double& c : cumulative_) c += 0.5 * tail;
}

double MomentumCdf::operator()(double p) const {
  const double s = (p - p_lo_) / dp_;
  if (s <= 0.0) return cumulative_.front();
  const double last = static_cast<double>(cumulative_.size() - 1);
  if (s >= last) return cumulative_.back();
  const auto i = static_cast<std::size_t>(s);
  const double u = s - static_cast<double>(i);
  return cumulative_[i] + u * (cumulative_[i + 1] - cumulative_[i]);
}

ExperimentOutcome run_box_experiment(const BoxExperimentConfig& cfg) {
  cfg.validate();
  const double L = cfg.length;

  // Phase 1: the eigenstate inside the closed box.
  const Grid box_grid = Grid::line({0.0, L, cfg.box_points});
  const WaveFunction in_box = make_wavefunction(box_grid, BoxEigenstate{0.0, L, cfg.level});
  const StationarySource rest_source(in_box);
  const double in_box_speed = rest_source.field().max_speed();

  const std::vector<Point> x0 = sample_born(in_box, cfg.ensemble, cfg.seed);
  const std::size_t rest_n = std::min(cfg.rest_members, cfg.ensemble);
  IntegratorSettings rest_integ;
  rest_integ.tol = cfg.tol;
  EnsembleOptions rest_opts;
  rest_opts.seed = cfg.seed;
  rest_opts.experiment = "box_rest";
  rest_opts.threads = cfg.threads;
  const EnsembleRun rest = evolve_ensemble(
      Ensemble::from_positions({x0.begin(), x0.begin() + static_cast<std::ptrdiff_t>(rest_n)}),
      rest_source, cfg.rest_time, rest_integ, rest_opts);
  double rest_displacement = 0.0;
  for (std::size_t i = 0; i < rest_n; ++i)
    if (rest.status[i] != MemberStatus::kFailed)
      rest_displacement = std::max(rest_displacement, std::abs(rest.ensemble.current[i][0] - x0[i][0]));

  // Phase 2: walls removed, free flight.
  const double W = cfg.flight_half_width();
  const Grid flight_grid = Grid::line({0.5 * L - W, 0.5 * L + W, cfg.flight_points});
  const WaveFunction released = make_wavefunction(flight_grid, BoxEigenstate{0.0, L, cfg.level});
  const SnapshotSource flight(released, FreePotential{}, cfg.flight_time, {cfg.dt, cfg.steps_per_snapshot, {}});

  IntegratorSettings integ;
  integ.tol = cfg.tol;
  integ.dt_max = std::max(cfg.flight_dt_max, flight.resolution());
  integ.output_interval = flight.resolution() * 10.0;
  EnsembleOptions opts;
  opts.seed = cfg.seed;
  opts.experiment = "box_flight";
  opts.threads = cfg.threads;
  opts.record_paths = std::min(cfg.plot_trajectories, kMaxPlotTrajectories);
  EnsembleRun run = evolve_ensemble(Ensemble::from_positions(x0), flight, cfg.flight_time, integ, opts);

  ExperimentOutcome out;
  out.experiment = "box";
  out.dims = 1;
  out.initial = run.ensemble.initial;
  out.final = run.ensemble.current;
  out.status = run.status;
  out.value_name = "v_meas";
  std::vector<double> v, start;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double vm = (out.final[i][0] - out.initial[i][0]) / cfg.flight_time;
    out.values.push_back(vm);
    if (run.status[i] == MemberStatus::kFailed) continue;
    v.push_back(vm);
    start.push_back(out.initial[i][0]);
  }
  out.trajectories = std::move(run.paths);

  // Momentum law of the in-box state, resolved well past the grid's own
  // Nyquist limit of the flight grid.
  const double p_max = std::max(200.0, 4.0 * nyquist_wavenumber(flight_grid.axis(0)));
  const MomentumCdf pcdf(in_box, p_max, 40001);
  const double ks = ks_statistic(v, [&](double p) { return pcdf(p); });
  const double sx = stddev(start), sv = stddev(v);

  auto& s = out.summary;
  s["experiment"] = "box";
  s["config"] = {{"length", L},
                 {"level", cfg.level},
                 {"flight_time", cfg.flight_time},
                 {"ensemble", cfg.ensemble},
                 {"seed", cfg.seed},
                 {"box_grid", grid_to_json(box_grid)},
                 {"flight_grid", grid_to_json(flight_grid)},
                 {"dt", flight.step()},
                 {"snapshot_spacing", flight.spacing()},
                 {"tol", cfg.tol},
                 {"flight_dt_max", integ.dt_max}};
  s["in_box_max_speed"] = in_box_speed;
  s["rest_members"] = rest_n;
  s["rest_time"] = cfg.rest_time;
  s["rest_max_displacement"] = rest_displacement;
  s["members_failed"] = run.failures.size();
  s["members_unreliable"] = run.unreliable;
  s["v_meas_mean"] = mean(v);
  s["v_meas_std"] = sv;
  s["x0_std"] = sx;
  s["spread_product"] = sx * sv;
  s["ks_momentum"] = ks;
  s["flight_absorbed"] = flight.absorbed();
  return out;
}

}  // namespace pilotwave
