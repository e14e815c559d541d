#include "pilotwave/experiments/stern_gerlach.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pilotwave/equilibrium/born_sampler.hpp"
#include "pilotwave/equilibrium/statistics.hpp"
#include "pilotwave/numerics/field_io.hpp"
#include "pilotwave/numerics/initializers.hpp"

namespace pilotwave {

FieldOrientation parse_orientation(const std::string& name) {
  if (name == "normal") return FieldOrientation::kNormal;
  if (name == "reversed") return FieldOrientation::kReversed;
  throw InvalidArgument("orientation must be normal or reversed (got '" + name + "')");
}

const char* to_string(FieldOrientation o) { return o == FieldOrientation::kNormal ? "normal" : "reversed"; }

void SternGerlachConfig::validate() const {
  const double w = std::norm(c_up) + std::norm(c_down);
  if (std::abs(w - 1.0) > 1e-9) throw InvalidArgument("stern-gerlach: |c_up|^2 + |c_down|^2 must be 1");
  if (!(width > 0.0)) throw InvalidArgument("stern-gerlach: width must be > 0");
  if (!(coupling > 0.0) || !(window > 0.0)) throw InvalidArgument("stern-gerlach: coupling and window must be > 0");
  if (!(flight >= 0.0)) throw InvalidArgument("stern-gerlach: flight must be >= 0");
  if (z0.empty() && ensemble == 0) throw InvalidArgument("stern-gerlach: ensemble must be >= 1");
}

int spin_label(double z0, double z_final, FieldOrientation orientation) {
  const double d = z_final - z0;
  const int deflection = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
  return deflection * static_cast<int>(orientation);
}

namespace {

struct Moments {
  double weight = 0.0, mean = 0.0, sd = 0.0;
};

Moments component_moments(const WaveFunction& psi, std::size_t c) {
  const auto rho = psi.component_density(c);
  const Grid& g = psi.grid();
  Moments m;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    m.weight += rho[i];
    m.mean += rho[i] * g.position(i)[0];
  }
  if (!(m.weight > 0.0)) return m;
  m.mean /= m.weight;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double d = g.position(i)[0] - m.mean;
    m.sd += rho[i] * d * d;
  }
  m.sd = std::sqrt(m.sd / m.weight);
  m.weight *= g.cell_volume();
  return m;
}

struct Evolved {
  SnapshotSource source;
  Moments up, down;
};

Evolved evolve_apparatus(const SternGerlachConfig& cfg) {
  const Grid grid = Grid::line(cfg.axis);
  const WaveFunction psi0 =
      make_wavefunction(grid, SpinorGaussian{cfg.c_up, cfg.c_down, cfg.center, cfg.width, 0.0});
  const Potential v = SternGerlachPotential{cfg.coupling, cfg.window, cfg.orientation};
  SnapshotSource source(psi0, v, cfg.readout_time(), {cfg.dt, cfg.steps_per_snapshot, {}});
  const Moments up = component_moments(source.final_state(), 0);
  const Moments down = component_moments(source.final_state(), 1);
  // A component with no weight cannot overlap anything.
  if (up.weight > 1e-12 && down.weight > 1e-12) {
    const double gap = std::abs(up.mean - down.mean);
    const double spread = std::max(up.sd, down.sd);
    if (!(gap > 6.0 * spread)) {
      throw PacketsNotSeparated("stern-gerlach: packets " + std::to_string(gap) +
                                " apart at readout, need > 6 x " + std::to_string(spread));
    }
  }
  return {std::move(source), up, down};
}

}  // namespace

ExperimentOutcome run_stern_gerlach(const SternGerlachConfig& cfg) {
  cfg.validate();
  const Evolved ev = evolve_apparatus(cfg);
  const double t_end = cfg.readout_time();

  const bool single = !cfg.z0.empty();
  std::vector<Point> x0;
  if (single) {
    for (double z : cfg.z0) x0.push_back({z, 0.0});
  } else {
    x0 = sample_born(ev.source.initial(), cfg.ensemble, cfg.seed);
  }

  IntegratorSettings integ;
  integ.tol = cfg.tol;
  EnsembleOptions opts;
  opts.seed = cfg.seed;
  opts.experiment = "stern_gerlach";
  opts.threads = cfg.threads;
  opts.record_paths = std::min(cfg.plot_trajectories, kMaxPlotTrajectories);
  // A single shot has no ensemble to absorb a failure.
  if (single) opts.max_failure_fraction = 0.0;
  EnsembleRun run = evolve_ensemble(Ensemble::from_positions(x0), ev.source, t_end, integ, opts);

  ExperimentOutcome out;
  out.experiment = "stern_gerlach";
  out.dims = 1;
  out.initial = run.ensemble.initial;
  out.final = run.ensemble.current;
  out.status = run.status;
  out.label_name = "spin";
  out.value_name = "deflection";
  std::size_t ups = 0, counted = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double d = out.final[i][0] - out.initial[i][0];
    out.values.push_back(d);
    out.labels.push_back(spin_label(out.initial[i][0], out.final[i][0], cfg.orientation));
    if (run.status[i] == MemberStatus::kFailed) continue;
    ++counted;
    ups += out.labels.back() > 0 ? 1 : 0;
  }
  out.trajectories = std::move(run.paths);

  const double up_weight = std::norm(cfg.c_up);
  const double n = static_cast<double>(counted);
  auto& s = out.summary;
  s["experiment"] = "stern_gerlach";
  s["config"] = {{"c_up", {cfg.c_up.real(), cfg.c_up.imag()}},
                 {"c_down", {cfg.c_down.real(), cfg.c_down.imag()}},
                 {"center", cfg.center},
                 {"width", cfg.width},
                 {"coupling", cfg.coupling},
                 {"window", cfg.window},
                 {"flight", cfg.flight},
                 {"orientation", to_string(cfg.orientation)},
                 {"mode", single ? "single_shot" : "ensemble"},
                 {"members", out.size()},
                 {"seed", cfg.seed},
                 {"grid", grid_to_json(ev.source.grid())},
                 {"dt", ev.source.step()},
                 {"snapshot_spacing", ev.source.spacing()},
                 {"tol", cfg.tol}};
  s["members_failed"] = run.failures.size();
  s["members_unreliable"] = run.unreliable;
  s["readout"] = {{"up", {{"weight", ev.up.weight}, {"mean", ev.up.mean}, {"sd", ev.up.sd}}},
                  {"down", {{"weight", ev.down.weight}, {"mean", ev.down.mean}, {"sd", ev.down.sd}}}};
  s["label_up_frequency"] = n > 0 ? static_cast<double>(ups) / n : 0.0;
  s["label_down_frequency"] = n > 0 ? 1.0 - static_cast<double>(ups) / n : 0.0;
  // Born weight of the component that ends up labelled "up". In either
  // orientation it is the spin-up component.
  s["expected_up_frequency"] = up_weight;
  s["tolerance_3sigma"] = n > 0 ? 3.0 * std::sqrt(up_weight * (1.0 - up_weight) / n) : 0.0;
  return out;
}

ContextualityReport run_contextuality_suite(const SternGerlachConfig& base) {
  static constexpr double kWidths[] = {0.8, 0.9, 1.0, 1.1, 1.2};
  static constexpr double kPhases[] = {0.0, std::numbers::pi / 2.0};
  static constexpr double kStarts[] = {-2.0, -1.5, -1.0, -0.5, -0.2, 0.2, 0.5, 1.0, 1.5, 2.0};

  ContextualityReport report;
  for (double width : kWidths) {
    for (double phase : kPhases) {
      SternGerlachConfig cfg = base;
      cfg.width = width;
      cfg.center = 0.0;
      cfg.c_up = {std::sqrt(0.5), 0.0};
      cfg.c_down = std::polar(std::sqrt(0.5), phase);
      cfg.z0.clear();
      for (double z : kStarts) cfg.z0.push_back(z * width);
      cfg.plot_trajectories = 0;

      cfg.orientation = FieldOrientation::kNormal;
      const ExperimentOutcome normal = run_stern_gerlach(cfg);
      cfg.orientation = FieldOrientation::kReversed;
      const ExperimentOutcome reversed = run_stern_gerlach(cfg);

      for (std::size_t i = 0; i < cfg.z0.size(); ++i) {
        ContextualityCase c;
        c.width = width;
        c.relative_phase = phase;
        c.z0 = cfg.z0[i];
        c.deflection_normal = normal.values[i] > 0 ? 1 : -1;
        c.deflection_reversed = reversed.values[i] > 0 ? 1 : -1;
        c.label_normal = normal.labels[i];
        c.label_reversed = reversed.labels[i];
        report.same_deflection += c.deflection_normal == c.deflection_reversed ? 1 : 0;
        report.negated_label += c.label_normal == -c.label_reversed && c.label_normal != 0 ? 1 : 0;
        report.cases.push_back(c);
      }
    }
  }
  return report;
}

nlohmann::ordered_json to_json(const ContextualityReport& r) {
  nlohmann::ordered_json j;
  j["inputs"] = r.cases.size();
  j["same_deflection"] = r.same_deflection;
  j["negated_label"] = r.negated_label;
  j["pass"] = r.pass();
  auto rows = nlohmann::ordered_json::array();
  for (const auto& c : r.cases) {
    rows.push_back({{"width", c.width},
                    {"relative_phase", c.relative_phase},
                    {"z0", c.z0},
                    {"deflection_normal", c.deflection_normal},
                    {"deflection_reversed", c.deflection_reversed},
                    {"label_normal", c.label_normal},
                    {"label_reversed", c.label_reversed}});
  }
  j["cases"] = rows;
  return j;
}

}  // namespace pilotwave
