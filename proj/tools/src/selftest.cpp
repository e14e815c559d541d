#include <cmath>
#include <functional>
#include <numbers>

#include "commands.hpp"
#include "pilotwave/equilibrium/born_sampler.hpp"
#include "pilotwave/equilibrium/equivariance.hpp"
#include "pilotwave/experiments/stern_gerlach.hpp"
#include "pilotwave/guidance/trajectory.hpp"
#include "pilotwave/guidance/wave_source.hpp"
#include "pilotwave/hilbert/kochen_specker.hpp"
#include "pilotwave/hilbert/mermin.hpp"
#include "pilotwave/hilbert/spin1.hpp"
#include "pilotwave/nonlocality/chsh.hpp"
#include "pilotwave/nonlocality/schroedinger_demo.hpp"
#include "pilotwave/numerics/initializers.hpp"
#include "pilotwave/numerics/split_step.hpp"

namespace pilotwave::cli {

namespace {

struct Check {
  std::string name;
  std::function<std::pair<bool, std::string>()> run;
};

std::pair<double, double> moments(const WaveFunction& psi) {
  const auto rho = psi.density();
  const double dx = psi.grid().cell_volume();
  double m = 0.0, m2 = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double x = psi.grid().position(i)[0];
    m += x * rho[i] * dx;
    m2 += x * x * rho[i] * dx;
  }
  return {m, std::sqrt(m2 - m * m)};
}

WaveFunction unit_gaussian(double lo, double hi, std::size_t points) {
  return make_wavefunction(Grid::line({lo, hi, points}), GaussianPacket{});
}

std::vector<Check> checks(std::uint64_t seed) {
  std::vector<Check> c;
  c.push_back({"gaussian-normalized", [] {
                 const auto psi = unit_gaussian(-10, 10, 512);
                 const double mean = moments(psi).first;
                 return std::pair{std::abs(psi.norm() - 1.0) < 1e-12 && std::abs(mean) < 1e-12,
                                  "norm-1 " + fmt(psi.norm() - 1.0) + ", mean " + fmt(mean)};
               }});
  c.push_back({"box-ground-state-real", [] {
                 const auto psi = make_wavefunction(Grid::line({-0.5, 1.5, 256}), BoxEigenstate{0.0, 1.0, 1});
                 double im = 0.0;
                 for (auto a : psi.amplitudes()) im = std::max(im, std::abs(a.imag()));
                 return std::pair{im == 0.0, "max |Im| " + fmt(im)};
               }});
  c.push_back({"two-gaussian-two-maxima", [] {
                 const auto rho = make_wavefunction(Grid::line({-8, 8, 512}), TwoGaussian{2.0, 0.5, 0.0, 1.0}).density();
                 int maxima = 0;
                 for (std::size_t i = 1; i + 1 < rho.size(); ++i) maxima += rho[i] > rho[i - 1] && rho[i] > rho[i + 1];
                 return std::pair{maxima == 2, std::to_string(maxima) + " maxima"};
               }});
  c.push_back({"free-spreading", [] {
                 const auto out = evolve(unit_gaussian(-20, 20, 512), FreePotential{}, 1e-3, 1000);
                 const double w = moments(out).second;
                 return std::pair{std::abs(w - std::sqrt(1.25)) < 1e-3, "width " + fmt_fixed(w, 6)};
               }});
  c.push_back({"harmonic-stationary", [] {
                 const auto psi = make_wavefunction(Grid::line({-10, 10, 256}),
                                                    GaussianPacket{{0, 0}, {std::sqrt(0.5), 1}, {0, 0}});
                 const auto out = evolve(psi, HarmonicPotential{1.0}, 1e-4, 20000);
                 double d = 0.0;
                 for (std::size_t i = 0; i < psi.amplitudes().size(); ++i)
                   d = std::max(d, std::abs(std::abs(out.amplitudes()[i]) - std::abs(psi.amplitudes()[i])));
                 return std::pair{d < 1e-8, "max ||psi_t| - |psi_0|| " + fmt(d)};
               }});
  c.push_back({"zero-steps-identity", [] {
                 const auto psi = unit_gaussian(-10, 10, 256);
                 const auto out = evolve(psi, FreePotential{}, 1e-3, 0);
                 bool same = true;
                 for (std::size_t i = 0; i < psi.amplitudes().size(); ++i) same = same && out.amplitudes()[i] == psi.amplitudes()[i];
                 return std::pair{same, same ? "identical" : "changed"};
               }});
  c.push_back({"free-trajectory", [] {
                 const auto psi = unit_gaussian(-16, 16, 512);
                 SnapshotSource::Settings set;
                 set.dt = 1e-3;
                 const SnapshotSource src(psi, FreePotential{}, 2.0, set);
                 const auto tr = integrate_trajectory(src, {0.7, 0.0}, 2.0);
                 const double x = tr.final_position()[0];
                 return std::pair{std::abs(x - 0.7 * std::numbers::sqrt2) < 1e-3, "X(2) " + fmt_fixed(x, 6)};
               }});
  c.push_back({"box-at-rest", [] {
                 const auto psi = make_wavefunction(Grid::line({-0.25, 1.25, 1024}), BoxEigenstate{0.0, 1.0, 1});
                 const StationarySource src(psi);
                 const auto tr = integrate_trajectory(src, {0.3, 0.0}, 10.0);
                 const double d = std::abs(tr.final_position()[0] - 0.3);
                 return std::pair{d < 1e-8, "displacement " + fmt(d)};
               }});
  c.push_back({"sampler-determinism", [seed] {
                 const auto psi = unit_gaussian(-10, 10, 256);
                 const auto a = sample_born(psi, 1, seed);
                 const auto b = sample_born(psi, 1, seed);
                 return std::pair{a == b, "single draw " + fmt(a[0][0])};
               }});
  c.push_back({"equivariance-free", [seed] {
                 const auto rep = equivariance_check(unit_gaussian(-16, 16, 512), FreePotential{}, 1.0, 10000, seed);
                 return std::pair{rep.pass, "ks " + fmt_fixed(rep.ks, 4) + " threshold " + fmt_fixed(rep.threshold, 4)};
               }});
  c.push_back({"spin-label-convention", [] {
                 const bool ok = spin_label(0.5, 9.0, FieldOrientation::kNormal) == 1 &&
                                 spin_label(0.5, 9.0, FieldOrientation::kReversed) == -1;
                 return std::pair{ok, "up deflection: normal -> up, reversed -> down"};
               }});
  c.push_back({"eigen-diagonal", [] {
                 const auto es = eigendecompose(HermitianOperator::diagonal({1.0, -1.0}));
                 const bool ok = es.values(0) == -1.0 && es.values(1) == 1.0 && std::abs(es.vectors(1, 0) - 1.0) < 1e-15;
                 return std::pair{ok, "eigenvalues (-1, 1)"};
               }});
  c.push_back({"sz-squared", [] {
                 const auto sq = spin1_squares({Eigen::Vector3d::UnitX(), Eigen::Vector3d::UnitY(), Eigen::Vector3d::UnitZ()});
                 const auto es = eigendecompose(sq[2]);
                 const bool ok = std::abs(es.values(0)) < 1e-12 && std::abs(es.values(1) - 1) < 1e-12 &&
                                 std::abs(es.values(2) - 1) < 1e-12;
                 return std::pair{ok, "eigenvalues (0, 1, 1)"};
               }});
  c.push_back({"random-reconstruction", [seed] {
                 Rng rng(seed, streams::kOperators);
                 const auto op = random_hermitian(4, rng);
                 const double r = reconstruction_residual(op, eigendecompose(op));
                 return std::pair{r < 1e-10, "residual " + fmt(r)};
               }});
  c.push_back({"spin1-properties", [seed] {
                 Rng rng(seed);
                 double worst = 0.0;
                 for (int i = 0; i < 100; ++i) {
                   const auto sq = spin1_squares(random_frame(rng));
                   worst = std::max({worst, commutator_norm(sq[0].matrix(), sq[1].matrix()),
                                     max_abs(sq[0].matrix() + sq[1].matrix() + sq[2].matrix() - 2.0 * Matrix::Identity(3, 3))});
                 }
                 return std::pair{worst < 1e-12, "worst residual " + fmt(worst)};
               }});
  c.push_back({"single-triad", [] {
                 const auto r = ks_search(abstract_hypergraph(3, {{0, 1, 2}}), {.count_all = true});
                 return std::pair{r.satisfiable && r.solutions == 3, std::to_string(r.solutions) + " witnesses"};
               }});
  c.push_back({"disjoint-triads", [] {
                 const auto r = ks_search(abstract_hypergraph(6, {{0, 1, 2}, {3, 4, 5}}), {.count_all = true});
                 return std::pair{r.solutions == 9, std::to_string(r.solutions) + " assignments"};
               }});
  c.push_back({"peres33-unsat", [] {
                 const auto r = ks_search(peres33());
                 return std::pair{!r.satisfiable, std::string(r.verdict()) + ", nodes " + std::to_string(r.stats.nodes_visited)};
               }});
  c.push_back({"mermin", [] {
                 const auto r = mermin_square_check();
                 bool five = true;
                 for (auto n : r.satisfying_without) five = five && n > 0;
                 return std::pair{r.contradiction() && five, std::to_string(r.satisfying_all) + "/512, five-of-six satisfiable"};
               }});
  c.push_back({"singlet-state", [] {
                 const auto s = singlet();
                 const double h = 1.0 / std::sqrt(2.0);
                 const bool ok = std::abs(s.amplitudes()(1) - h) < 1e-15 && std::abs(s.amplitudes()(2) + h) < 1e-15;
                 return std::pair{ok, "(|ud> - |du>)/sqrt(2)"};
               }});
  c.push_back({"reduced-density", [seed] {
                 Rng rng(seed, streams::kBases);
                 const Matrix u1 = random_unitary(4, rng);
                 const auto s = make_max_entangled(u1, random_unitary(4, rng));
                 const double r = max_abs(s.reduced_density_1() - Matrix::Identity(4, 4) / 4.0);
                 return std::pair{r < 1e-10, "max |rho - I/4| " + fmt(r)};
               }});
  c.push_back({"singlet-minus-o", [] {
                 const auto p = correspond(HermitianOperator::diagonal({1.0, -1.0}), singlet());
                 const double g = max_abs(p.o_tilde.matrix() + p.o.matrix());
                 return std::pair{g == 0.0, "max |O~ + O| " + fmt(g)};
               }});
  c.push_back({"identity-correspondent", [] {
                 const auto p = correspond(HermitianOperator::identity(2), singlet());
                 const double g = max_abs(p.o_tilde.matrix() - Matrix::Identity(2, 2));
                 return std::pair{g < 1e-12, "max |O~ - I| " + fmt(g)};
               }});
  c.push_back({"epr-four-levels", [seed] {
                 Rng rng(seed, streams::kBases);
                 const Matrix u1 = random_unitary(4, rng);
                 const auto s = make_max_entangled(u1, random_unitary(4, rng));
                 Rng orng(seed, streams::kOperators);
                 const auto p = correspond(random_hermitian(4, orng), s);
                 const auto recs = sample_epr(s, p, 2000, seed);
                 std::size_t eq = 0;
                 for (const auto& r : recs) eq += r.outcome_1 == r.outcome_2;
                 const double gap = (exact_joint_distribution(s, p, Side::kOne) - exact_joint_distribution(s, p, Side::kTwo))
                                        .cwiseAbs()
                                        .maxCoeff();
                 return std::pair{eq == recs.size() && gap < 1e-12,
                                  std::to_string(eq) + "/" + std::to_string(recs.size()) + " equal, order gap " + fmt(gap)};
               }});
  c.push_back({"chsh-singlet", [] {
                 const auto r = chsh_quantum(singlet(), optimal_chsh_angles());
                 return std::pair{std::abs(r.s_exact + 2.0 * std::numbers::sqrt2) < 1e-12, "S " + fmt(r.s_exact)};
               }});
  c.push_back({"chsh-parallel", [] {
                 const auto r = chsh_quantum(singlet(), {0.3, 0.3, 0.3, 0.3});
                 return std::pair{std::abs(std::abs(r.s_exact) - 2.0) < 1e-14, "S " + fmt(r.s_exact)};
               }});
  c.push_back({"local-bound", [] {
                 const auto b = enumerate_local_strategies();
                 return std::pair{b.max_abs_s == 2.0 && std::abs(b.witness.s()) == 2.0, "max |S| " + fmt(b.max_abs_s)};
               }});
  c.push_back({"schroedinger-demo", [seed] {
                 const auto rep = schroedinger_theorem_demo(4, seed, 200);
                 bool rejects = false;
                 try {
                   schroedinger_theorem_demo(2, seed);
                 } catch (const InvalidArgument&) {
                   rejects = true;
                 }
                 return std::pair{rep.pass() && rejects, rep.conclusion + (rejects ? "; N = 2 rejected" : "; N = 2 accepted")};
               }});
  return c;
}

}  // namespace

Command selftest_command() {
  return {"selftest", "quick run of the worked examples across all modules", with_common({}), [](RunContext& ctx) {
            for (const auto& ch : checks(ctx.config.u64("seed"))) {
              std::pair<bool, std::string> r;
              try {
                r = ch.run();
              } catch (const std::exception& e) {
                r = {false, std::string("threw: ") + e.what()};
              }
              ctx.assertions.check(ch.name, r.first, r.second);
            }
          }};
}

}  // namespace pilotwave::cli
