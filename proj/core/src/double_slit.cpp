#include "pilotwave/experiments/double_slit.hpp"

#include <algorithm>
#include <cmath>

#include "pilotwave/equilibrium/born_sampler.hpp"
#include "pilotwave/equilibrium/equivariance.hpp"
#include "pilotwave/equilibrium/statistics.hpp"
#include "pilotwave/numerics/field_io.hpp"
#include "pilotwave/numerics/initializers.hpp"

namespace pilotwave {

SlitSelection parse_slits(const std::string& name) {
  if (name == "both") return SlitSelection::kBoth;
  if (name == "upper") return SlitSelection::kUpper;
  if (name == "lower") return SlitSelection::kLower;
  throw InvalidArgument("slits must be one of both, upper, lower (got '" + name + "')");
}

const char* to_string(SlitSelection s) {
  switch (s) {
    case SlitSelection::kBoth: return "both";
    case SlitSelection::kUpper: return "upper";
    case SlitSelection::kLower: return "lower";
  }
  return "?";
}

void DoubleSlitConfig::validate() const {
  if (!(width > 0.0)) throw InvalidArgument("double slit: width must be > 0");
  if (!(separation > 4.0 * width)) throw InvalidArgument("double slit: separation must exceed 4 widths");
  if (!(t_screen > 0.0)) throw InvalidArgument("double slit: t_screen must be > 0");
  if (ensemble == 0) throw InvalidArgument("double slit: ensemble must be >= 1");
  if (!(bin_width > 0.0)) throw InvalidArgument("double slit: bin_width must be > 0");
}

namespace {

int sign(double y) { return y > 0.0 ? 1 : (y < 0.0 ? -1 : 0); }

std::vector<double> as_double(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

ExperimentOutcome run_double_slit(const DoubleSlitConfig& cfg) {
  cfg.validate();
  const Grid grid = Grid::plane(cfg.x_axis, cfg.y_axis);
  const double half = 0.5 * cfg.separation;
  Initializer init;
  switch (cfg.slits) {
    case SlitSelection::kBoth:
      init = TwoGaussian{half, cfg.width, cfg.momentum, cfg.longitudinal_width};
      break;
    case SlitSelection::kUpper:
    case SlitSelection::kLower: {
      const double y = cfg.slits == SlitSelection::kUpper ? half : -half;
      init = GaussianPacket{{0.0, y}, {cfg.longitudinal_width, cfg.width}, {cfg.momentum, 0.0}};
      break;
    }
  }
  const WaveFunction psi0 = make_wavefunction(grid, init);
  const SnapshotSource source(psi0, FreePotential{}, cfg.t_screen, {cfg.dt, cfg.steps_per_snapshot, {}});

  const std::vector<Point> x0 = sample_born(psi0, cfg.ensemble, cfg.seed);
  IntegratorSettings integ;
  integ.tol = cfg.tol;
  EnsembleOptions opts;
  opts.seed = cfg.seed;
  opts.experiment = "double_slit";
  opts.threads = cfg.threads;
  // Every path is needed for the crossing check; only a few are kept.
  opts.record_paths = cfg.ensemble;
  EnsembleRun run = evolve_ensemble(Ensemble::from_positions(x0), source, cfg.t_screen, integ, opts);

  ExperimentOutcome out;
  out.experiment = "double_slit";
  out.dims = 2;
  out.initial = run.ensemble.initial;
  out.final = run.ensemble.current;
  out.status = run.status;
  out.label_name = "slit";
  out.labels.resize(cfg.ensemble);

  std::size_t crossings = 0, agree = 0, counted = 0;
  for (std::size_t i = 0; i < cfg.ensemble; ++i) {
    const int s0 = sign(out.initial[i][1]);
    out.labels[i] = s0;
    if (run.status[i] == MemberStatus::kFailed) continue;
    ++counted;
    bool crossed = false;
    for (const Point& p : run.paths[i].positions) crossed |= sign(p[1]) != s0;
    crossings += crossed ? 1 : 0;
    agree += sign(out.final[i][1]) == s0 ? 1 : 0;
  }
  run.paths.resize(std::min(cfg.plot_trajectories, std::min(run.paths.size(), kMaxPlotTrajectories)));
  out.trajectories = std::move(run.paths);

  // Transverse screen pattern, empirical and from the solver's own |Ψ|².
  const WaveFunction& screen = source.final_state();
  const std::vector<double> wy = marginal_weights(screen, 1);
  const GridCdf target(grid.axis(1), wy);
  // Bins are laid out symmetrically with one centred on the axis y = 0.
  const auto [sup_lo, sup_hi] = support_interval(grid.axis(1), wy, 1e-4);
  const double reach = std::ceil(std::max(-sup_lo, sup_hi) / cfg.bin_width - 0.5);
  const double lo = -(reach + 0.5) * cfg.bin_width;
  const double hi = -lo;
  const auto bins = static_cast<std::size_t>(2.0 * reach + 1.0);
  std::vector<double> ys;
  for (std::size_t i = 0; i < cfg.ensemble; ++i)
    if (run.status[i] != MemberStatus::kFailed) ys.push_back(out.final[i][1]);
  const Histogram screen_hist = make_histogram(ys, lo, hi, bins, &target);
  const auto maxima = find_maxima(as_double(screen_hist.counts));
  const auto target_maxima = find_maxima(screen_hist.target_density);
  std::vector<double> maxima_y;
  for (std::size_t b : maxima) maxima_y.push_back(0.5 * (screen_hist.edges[b] + screen_hist.edges[b + 1]));

  std::vector<std::uint8_t> failed(cfg.ensemble, 0);
  for (const auto& f : run.failures) failed[f.index] = 1;
  const EquivarianceReport eq = compare_to_density(out.final, screen, "double_slit", cfg.seed, failed);

  auto& s = out.summary;
  s["experiment"] = "double_slit";
  s["config"] = {{"separation", cfg.separation},
                 {"width", cfg.width},
                 {"momentum", cfg.momentum},
                 {"t_screen", cfg.t_screen},
                 {"slits", to_string(cfg.slits)},
                 {"ensemble", cfg.ensemble},
                 {"seed", cfg.seed},
                 {"longitudinal_width", cfg.longitudinal_width},
                 {"grid", grid_to_json(grid)},
                 {"dt", source.step()},
                 {"snapshot_spacing", source.spacing()},
                 {"tol", cfg.tol},
                 {"bin_width", cfg.bin_width}};
  s["members"] = cfg.ensemble;
  s["members_failed"] = run.failures.size();
  s["members_unreliable"] = run.unreliable;
  s["dt_min_events"] = run.dt_min_events;
  s["screen_histogram"] = {{"edges", screen_hist.edges},
                           {"counts", screen_hist.counts},
                           {"target_density", screen_hist.target_density}};
  s["maxima"] = maxima.size();
  s["maxima_y"] = maxima_y;
  s["target_maxima"] = target_maxima.size();
  s["symmetry_line_crossings"] = crossings;
  s["slit_label_agreement"] = counted ? static_cast<double>(agree) / static_cast<double>(counted) : 0.0;
  s["equivariance"] = {{"ks", eq.ks}, {"ks_axes", eq.ks_axes}, {"threshold", eq.threshold}, {"pass", eq.pass}};
  return out;
}

}  // namespace pilotwave
