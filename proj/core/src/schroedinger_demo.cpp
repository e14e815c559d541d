#include "pilotwave/nonlocality/schroedinger_demo.hpp"

#include <ostream>

#include "pilotwave/hilbert/mermin.hpp"
#include "pilotwave/rng.hpp"

namespace pilotwave {

bool DemoReport::pass() const noexcept {
  for (const auto& s : steps)
    if (!s.pass) return false;
  return !steps.empty() && conclusion == kLocalityRefuted;
}

namespace {

void finish(DemoReport& rep, DemoStep step) {
  const bool ok = step.pass;
  std::string id = step.step;
  rep.steps.push_back(std::move(step));
  if (!ok) throw DemoAborted(id, rep);
}

}  // namespace

DemoReport schroedinger_theorem_demo(std::size_t n, std::uint64_t seed, std::size_t trials) {
  if (n < 4) throw InvalidArgument("dimension " + std::to_string(n) + " is too small: the value-map step needs N >= 4");
  if (n % 4 != 0) throw InvalidArgument("dimension must be a multiple of 4 to host the two-qubit family");
  if (trials == 0) throw InvalidArgument("trials must be positive");

  DemoReport rep;
  rep.dim = n;
  rep.seed = seed;
  rep.trials = trials;

  Rng basis_rng(seed, streams::kBases);
  const Matrix u1 = random_unitary(n, basis_rng);
  const Matrix u2 = random_unitary(n, basis_rng);
  const MaxEntangledState state(u1, u2);
  const Matrix flat = Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) / static_cast<double>(n);
  const double rho1 = max_abs(state.reduced_density_1() - flat);
  const double rho2 = max_abs(state.reduced_density_2() - flat);
  const double norm_err = std::abs(state.amplitudes().norm() - 1.0);
  finish(rep, {"entangled-state", "result",
               "a maximally entangled state of dimension N is constructed from seeded random bases",
               {{"dim", n}, {"norm_error", norm_err}, {"reduced_1_residual", rho1}, {"reduced_2_residual", rho2}},
               norm_err < 1e-12 && rho1 < 1e-10 && rho2 < 1e-10});

  const auto& sq = mermin_square();
  const Matrix pad = Matrix::Identity(static_cast<Eigen::Index>(n / 4), static_cast<Eigen::Index>(n / 4));
  std::vector<Matrix> family;
  nlohmann::ordered_json per_op = nlohmann::ordered_json::array();
  bool all_equal = true;
  for (std::size_t i = 0; i < sq.ops.size(); ++i) {
    family.push_back(kron(sq.ops[i], pad));
    const CorrespondencePair pair = correspond(HermitianOperator(family.back()), state);
    auto recs = sample_epr(state, pair, trials, derive_seed(seed, 0x100 + i));
    std::size_t equal = 0;
    for (const auto& r : recs) equal += r.outcome_1 == r.outcome_2;
    all_equal = all_equal && equal == trials;
    per_op.push_back({{"operator", sq.names[i]},
                      {"agreements", equal},
                      {"trials", trials},
                      {"residual_1", pair.residual_1},
                      {"residual_2", pair.residual_2}});
    rep.records.push_back({sq.names[i], std::move(recs)});
  }
  finish(rep, {"perfect-correlation", "result",
               "every operator O in the family has a correspondent on factor 2 whose outcome always equals O's",
               {{"operators", per_op}, {"perfectly_correlated", all_equal ? sq.ops.size() : 0}}, all_equal});

  // The family's algebra, checked at dimension N.
  const Matrix id = Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const MerminLabeling plain;
  const ContradictionReport base = mermin_square_check(plain);
  double comm = 0.0, prod = 0.0;
  static constexpr int kLines[6][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6}, {1, 4, 7}, {2, 5, 8}};
  for (std::size_t k = 0; k < 6; ++k) {
    const Matrix& a = family[kLines[k][0]];
    const Matrix& b = family[kLines[k][1]];
    const Matrix& c = family[kLines[k][2]];
    comm = std::max({comm, commutator_norm(a, b), commutator_norm(b, c), commutator_norm(a, c)});
    prod = std::max(prod, max_abs(a * b * c - static_cast<double>(base.product_signs[k]) * id));
  }
  finish(rep, {"value-map-premise", "premise",
               "locality plus perfect correlation predetermine a value for each O in the family (the outcome of "
               "its correspondent, measured first at a distance), and those values obey the product rule on each "
               "commuting line. The family is a strict subset of all self-adjoint operators on factor 1, which "
               "suffices for the contradiction",
               {{"max_commutator", comm}, {"max_product_residual", prod}, {"product_signs", base.product_signs}},
               comm < 1e-12 && prod < 1e-12});

  finish(rep, {"value-map-impossible", "result", "no assignment of +-1 values satisfies all six product constraints",
               {{"assignments", base.assignments},
                {"satisfying_all", base.satisfying_all},
                {"operators_ok", base.operators_ok}},
               base.contradiction()});

  rep.conclusion = kLocalityRefuted;
  finish(rep, {"conclusion", "result",
               "the premises imply a value map that cannot exist, so the locality premise is false",
               {{"conclusion", rep.conclusion}}, true});
  return rep;
}

nlohmann::ordered_json to_json(const DemoReport& r) {
  nlohmann::ordered_json steps = nlohmann::ordered_json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"step", s.step}, {"kind", s.kind}, {"statement", s.statement}, {"evidence", s.evidence}, {"pass", s.pass}});
  return {{"dim", r.dim}, {"seed", r.seed}, {"trials", r.trials}, {"steps", steps},
          {"conclusion", r.conclusion}, {"pass", r.pass()}};
}

void write_demo_records_csv(std::ostream& out, const DemoReport& r) {
  write_measurement_csv_header(out, true);
  for (const auto& g : r.records) write_measurement_csv(out, g.records, g.operator_name);
}

}  // namespace pilotwave
