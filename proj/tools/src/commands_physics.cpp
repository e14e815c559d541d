#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>

#include "commands.hpp"
#include "pilotwave/equilibrium/equivariance.hpp"
#include "pilotwave/experiments/box_experiment.hpp"
#include "pilotwave/experiments/double_slit.hpp"
#include "pilotwave/experiments/stern_gerlach.hpp"
#include "pilotwave/numerics/initializers.hpp"

namespace pilotwave::cli {

std::vector<Key> with_common(std::vector<Key> keys) {
  keys.insert(keys.begin(), {"seed", "1", "64-bit run seed"});
  return keys;
}

namespace {

std::string s(std::size_t v) { return std::to_string(v); }

Axis axis(const RunConfig& c, const std::string& prefix) {
  return {c.real(prefix + "-lo"), c.real(prefix + "-hi"), c.count(prefix + "-points")};
}

std::vector<Key> axis_keys(const std::string& prefix, const Axis& a) {
  return {{prefix + "-lo", fmt(a.lo), prefix + " axis lower end"},
          {prefix + "-hi", fmt(a.hi), prefix + " axis upper end (exclusive, periodic)"},
          {prefix + "-points", s(a.points), prefix + " axis points"}};
}

template <class T>
std::vector<T> concat(std::vector<T> a, const std::vector<T>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Command double_slit() {
  const DoubleSlitConfig d;
  std::vector<Key> keys{
      {"separation", fmt(d.separation), "distance between slit centres"},
      {"width", fmt(d.width), "transverse sigma of each slit packet"},
      {"momentum", fmt(d.momentum), "forward momentum k"},
      {"t-screen", fmt(d.t_screen), "time at which the screen is read"},
      {"slits", to_string(d.slits), "open slits: both, upper or lower"},
      {"ensemble", s(d.ensemble), "number of trajectories"},
      {"longitudinal-width", fmt(d.longitudinal_width), "sigma along the flight direction"},
  };
  keys = concat(keys, axis_keys("x", d.x_axis));
  keys = concat(keys, axis_keys("y", d.y_axis));
  keys = concat(keys, std::vector<Key>{{"dt", fmt(d.dt), "solver step"},
                                       {"steps-per-snapshot", s(d.steps_per_snapshot), "solver steps between stored fields"},
                                       {"tol", fmt(d.tol), "integrator error tolerance"},
                                       {"bin-width", fmt(d.bin_width), "screen histogram bin width"},
                                       {"emit-trajectories", s(d.plot_trajectories), "trajectory files to write (max 200)"},
                                       {"threads", "0", "worker threads (0 = hardware)"}});
  return {"double-slit", "two-slit interference with pilot-wave trajectories", with_common(keys), [](RunContext& ctx) {
            const auto& c = ctx.config;
            DoubleSlitConfig cfg;
            cfg.separation = c.real("separation");
            cfg.width = c.real("width");
            cfg.momentum = c.real("momentum");
            cfg.t_screen = c.real("t-screen");
            cfg.slits = parse_slits(c.text("slits"));
            cfg.ensemble = c.count("ensemble");
            cfg.seed = c.u64("seed");
            cfg.longitudinal_width = c.real("longitudinal-width");
            cfg.x_axis = axis(c, "x");
            cfg.y_axis = axis(c, "y");
            cfg.dt = c.real("dt");
            cfg.steps_per_snapshot = c.count("steps-per-snapshot");
            cfg.tol = c.real("tol");
            cfg.bin_width = c.real("bin-width");
            cfg.plot_trajectories = c.count("emit-trajectories");
            cfg.threads = static_cast<unsigned>(c.count("threads"));
            const auto out = run_double_slit(cfg);
            write_outcome_files(ctx.out, out);
            const auto& sm = out.summary;
            const int maxima = sm["maxima"].get<int>();
            auto& a = ctx.assertions;
            if (cfg.slits == SlitSelection::kBoth) {
              a.check("fringes", maxima >= 3, "maxima=" + std::to_string(maxima) + " (need >= 3)");
              const int crossings = sm["symmetry_line_crossings"].get<int>();
              a.check("no-crossing", crossings == 0, "crossings=" + std::to_string(crossings));
              const double agree = sm["slit_label_agreement"].get<double>();
              a.check("slit-of-origin", agree == 1.0, "agreement=" + fmt(agree));
            } else {
              a.check("single-slit", maxima == 1, "maxima=" + std::to_string(maxima) + " (need 1)");
            }
            const auto& eq = sm["equivariance"];
            a.check("screen-equivariance", eq["pass"].get<bool>(),
                    "ks=" + fmt_fixed(eq["ks"].get<double>(), 4) + " threshold=" + fmt(eq["threshold"].get<double>()));
            std::cout << "double-slit: slits=" << to_string(cfg.slits) << " maxima=" << maxima
                      << " members=" << out.size() << '\n';
          }};
}

Command stern_gerlach() {
  const SternGerlachConfig d;
  std::vector<Key> keys{
      {"c-up", fmt(d.c_up.real()), "spin-up amplitude (real)"},
      {"c-down", fmt(d.c_down.real()), "spin-down amplitude modulus"},
      {"phase", "0", "relative phase of the spin-down amplitude (radians)"},
      {"center", fmt(d.center), "packet centre"},
      {"width", fmt(d.width), "packet sigma"},
      {"coupling", fmt(d.coupling), "field gradient coupling lambda"},
      {"window", fmt(d.window), "pulse duration tau"},
      {"flight", fmt(d.flight), "free flight after the pulse"},
      {"orientation", to_string(d.orientation), "field orientation: normal or reversed"},
      {"z0", "", "comma-separated single-shot starting points (empty: ensemble)"},
      {"ensemble", s(d.ensemble), "ensemble size when z0 is empty"},
  };
  keys = concat(keys, axis_keys("z", d.axis));
  keys = concat(keys, std::vector<Key>{{"dt", fmt(d.dt), "solver step"},
                                       {"steps-per-snapshot", s(d.steps_per_snapshot), "solver steps between stored fields"},
                                       {"tol", fmt(d.tol), "integrator error tolerance"},
                                       {"contextuality", "true", "also run the 100-input orientation comparison"},
                                       {"emit-trajectories", s(d.plot_trajectories), "trajectory files to write (max 200)"},
                                       {"threads", "0", "worker threads (0 = hardware)"}});
  return {"stern-gerlach", "spin measurement by packet separation, both field orientations", with_common(keys),
          [](RunContext& ctx) {
            const auto& c = ctx.config;
            SternGerlachConfig cfg;
            cfg.c_up = {c.real("c-up"), 0.0};
            cfg.c_down = std::polar(c.real("c-down"), c.real("phase"));
            cfg.center = c.real("center");
            cfg.width = c.real("width");
            cfg.coupling = c.real("coupling");
            cfg.window = c.real("window");
            cfg.flight = c.real("flight");
            cfg.orientation = parse_orientation(c.text("orientation"));
            cfg.z0 = c.reals("z0");
            cfg.ensemble = c.count("ensemble");
            cfg.seed = c.u64("seed");
            cfg.axis = axis(c, "z");
            cfg.dt = c.real("dt");
            cfg.steps_per_snapshot = c.count("steps-per-snapshot");
            cfg.tol = c.real("tol");
            cfg.plot_trajectories = c.count("emit-trajectories");
            cfg.threads = static_cast<unsigned>(c.count("threads"));
            const auto out = run_stern_gerlach(cfg);
            write_outcome_files(ctx.out, out);
            auto& a = ctx.assertions;
            const auto& sm = out.summary;
            if (cfg.z0.empty()) {
              const double f = sm["label_up_frequency"].get<double>();
              const double want = sm["expected_up_frequency"].get<double>();
              const double tol = sm["tolerance_3sigma"].get<double>();
              a.check("born-frequency", std::abs(f - want) <= tol,
                      "up=" + fmt_fixed(f, 4) + " expected=" + fmt_fixed(want, 4) + " +- " + fmt_fixed(tol, 4));
            } else if (std::abs(std::norm(cfg.c_up) - 0.5) < 1e-12) {
              // Equal weights: the start half decides the deflection.
              std::size_t agree = 0;
              for (std::size_t i = 0; i < out.size(); ++i)
                agree += (out.final[i][0] > out.initial[i][0]) == (out.initial[i][0] > cfg.center);
              a.check("upper-start-moves-up", agree == out.size(),
                      std::to_string(agree) + "/" + std::to_string(out.size()) + " single shots");
            } else {
              std::cout << "note: unequal spin weights, single-shot deflections reported only\n";
            }
            if (c.flag("contextuality")) {
              const auto rep = run_contextuality_suite(cfg);
              write_json(ctx.out / "contextuality.json", to_json(rep));
              a.check("contextuality", rep.pass(),
                      "same deflection " + std::to_string(rep.same_deflection) + "/" + std::to_string(rep.cases.size()) +
                          ", negated label " + std::to_string(rep.negated_label) + "/" + std::to_string(rep.cases.size()));
            }
          }};
}

Command box() {
  const BoxExperimentConfig d;
  std::vector<Key> keys{
      {"length", fmt(d.length), "box length L"},
      {"level", std::to_string(d.level), "eigenstate index n"},
      {"flight-time", fmt(d.flight_time), "free flight time T after the walls are removed"},
      {"ensemble", s(d.ensemble), "ensemble size"},
      {"box-points", s(d.box_points), "grid points across the box"},
      {"rest-time", fmt(d.rest_time), "duration of the in-box rest check"},
      {"rest-members", s(d.rest_members), "members integrated during the rest check"},
      {"flight-points", s(d.flight_points), "grid points of the flight domain"},
      {"dt", fmt(d.dt), "solver step"},
      {"steps-per-snapshot", s(d.steps_per_snapshot), "solver steps between stored fields"},
      {"tol", fmt(d.tol), "integrator error tolerance"},
      {"flight-dt-max", fmt(d.flight_dt_max), "largest integrator step in flight"},
      {"emit-trajectories", s(d.plot_trajectories), "trajectory files to write (max 200)"},
      {"threads", "0", "worker threads (0 = hardware)"},
  };
  return {"box", "particle at rest in a box, then the measured-velocity protocol", with_common(keys), [](RunContext& ctx) {
            const auto& c = ctx.config;
            BoxExperimentConfig cfg;
            cfg.length = c.real("length");
            cfg.level = static_cast<int>(c.count("level"));
            cfg.flight_time = c.real("flight-time");
            cfg.ensemble = c.count("ensemble");
            cfg.seed = c.u64("seed");
            cfg.box_points = c.count("box-points");
            cfg.rest_time = c.real("rest-time");
            cfg.rest_members = c.count("rest-members");
            cfg.flight_points = c.count("flight-points");
            cfg.dt = c.real("dt");
            cfg.steps_per_snapshot = c.count("steps-per-snapshot");
            cfg.tol = c.real("tol");
            cfg.flight_dt_max = c.real("flight-dt-max");
            cfg.plot_trajectories = c.count("emit-trajectories");
            cfg.threads = static_cast<unsigned>(c.count("threads"));
            const auto out = run_box_experiment(cfg);
            write_outcome_files(ctx.out, out);
            const auto& sm = out.summary;
            auto& a = ctx.assertions;
            const double speed = sm["in_box_max_speed"].get<double>();
            a.check("at-rest", speed < 1e-10, "in-box max |v| = " + fmt(speed));
            const double disp = sm["rest_max_displacement"].get<double>();
            a.check("rest-displacement", disp < 1e-8, "max displacement = " + fmt(disp));
            const double sv = sm["v_meas_std"].get<double>();
            const double floor = 0.05 * std::numbers::pi / cfg.length;
            a.check("nonzero-velocity-spread", sv > floor, "std(v_meas)=" + fmt_fixed(sv, 4) + " > " + fmt_fixed(floor, 4));
            const double ks = sm["ks_momentum"].get<double>();
            a.check("momentum-law", ks < 5e-2, "ks=" + fmt_fixed(ks, 4) + " (< 0.05)");
            const double prod = sm["spread_product"].get<double>();
            a.check("uncertainty", prod >= 0.475, "std(X0)*std(v_meas)=" + fmt_fixed(prod, 4) + " (>= 0.475)");
          }};
}

Command equivariance() {
  std::vector<Key> keys{
      {"case", "free-gaussian", "free-gaussian, two-gaussian or harmonic"},
      {"n", "100000", "sample count (>= 1000)"},
      {"t", "2", "transport time"},
      {"x-lo", "-24", "grid lower end"},
      {"x-hi", "24", "grid upper end"},
      {"x-points", "1024", "grid points"},
      {"width", "1", "packet sigma (free-gaussian, two-gaussian)"},
      {"separation", "4", "distance between the two packets (two-gaussian)"},
      {"momentum", "0", "mean momentum (free-gaussian) or opposing momenta (two-gaussian)"},
      {"omega", "1", "oscillator frequency (harmonic; ground state)"},
      {"dt", "1e-3", "solver step"},
      {"steps-per-snapshot", "10", "solver steps between stored fields"},
      {"tol", "1e-6", "integrator error tolerance"},
      {"threads", "0", "worker threads (0 = hardware)"},
  };
  return {"equivariance", "transport a Born-sampled ensemble and compare with |psi(t)|^2", with_common(keys),
          [](RunContext& ctx) {
            const auto& c = ctx.config;
            const Grid grid = Grid::line(axis(c, "x"));
            const std::string which = c.text("case");
            Initializer init;
            Potential pot = FreePotential{};
            if (which == "free-gaussian") {
              init = GaussianPacket{{0, 0}, {c.real("width"), 1}, {c.real("momentum"), 0}};
            } else if (which == "two-gaussian") {
              init = TwoGaussian{0.5 * c.real("separation"), c.real("width"), c.real("momentum"), 1.0};
            } else if (which == "harmonic") {
              const double w = c.real("omega");
              if (!(w > 0.0)) throw InvalidArgument("omega must be > 0");
              init = GaussianPacket{{0, 0}, {1.0 / std::sqrt(2.0 * w), 1}, {0, 0}};
              pot = HarmonicPotential{w};
            } else {
              throw InvalidArgument("case must be free-gaussian, two-gaussian or harmonic (got '" + which + "')");
            }
            EquivarianceSettings set;
            set.experiment = which;
            set.source.dt = c.real("dt");
            set.source.steps_per_snapshot = c.count("steps-per-snapshot");
            set.integrator.tol = c.real("tol");
            set.threads = static_cast<unsigned>(c.count("threads"));
            const auto rep = equivariance_check(make_wavefunction(grid, init), pot, c.real("t"), c.count("n"),
                                                c.u64("seed"), set);
            write_json(ctx.out / "equivariance.json", to_json(rep));
            std::ofstream csv(ctx.out / "histogram.csv");
            write_histogram_csv(csv, rep);
            ctx.assertions.check("equivariance", rep.pass,
                                 which + " t=" + fmt(rep.t) + " n=" + std::to_string(rep.n) + " ks=" +
                                     fmt_fixed(rep.ks, 4) + " threshold=" + fmt(rep.threshold));
          }};
}

}  // namespace

std::vector<Command> physics_commands() { return {double_slit(), stern_gerlach(), box(), equivariance()}; }

}  // namespace pilotwave::cli
