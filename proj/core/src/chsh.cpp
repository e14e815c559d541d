#include "pilotwave/nonlocality/chsh.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "pilotwave/rng.hpp"
#include "pilotwave/text.hpp"

namespace pilotwave {

ChshAngles optimal_chsh_angles() {
  const double pi = std::numbers::pi;
  return {0.0, pi / 4.0, pi / 2.0, 3.0 * pi / 4.0};
}

HermitianOperator spin_projection(double theta) {
  Matrix m(2, 2);
  m << std::cos(theta), std::sin(theta), std::sin(theta), -std::cos(theta);
  return HermitianOperator(m);
}

namespace {

void require_qubits(const MaxEntangledState& state) {
  if (state.dim() != 2) throw InvalidArgument("CHSH needs a two-qubit state (N = 2)");
}

std::array<std::pair<double, double>, 4> settings(const ChshAngles& g) {
  return {{{g.a, g.b}, {g.a, g.b_prime}, {g.a_prime, g.b}, {g.a_prime, g.b_prime}}};
}

double combine(const std::array<double, 4>& e) { return e[0] - e[1] + e[2] + e[3]; }

}  // namespace

double correlation(const MaxEntangledState& state, double t1, double t2) {
  require_qubits(state);
  const Matrix ab = kron(spin_projection(t1).matrix(), spin_projection(t2).matrix());
  const Vector& psi = state.amplitudes();
  return psi.dot(ab * psi).real();
}

ChshResult chsh_quantum(const MaxEntangledState& state, const ChshAngles& angles, std::size_t trials,
                        std::uint64_t seed) {
  require_qubits(state);
  ChshResult r;
  r.angles = angles;
  r.trials = trials;
  const auto set = settings(angles);
  for (std::size_t k = 0; k < 4; ++k) r.e_exact[k] = correlation(state, set[k].first, set[k].second);
  r.s_exact = combine(r.e_exact);
  if (trials == 0) return r;

  double var = 0.0;
  const Vector& psi = state.amplitudes();
  for (std::size_t k = 0; k < 4; ++k) {
    // Joint outcome probabilities from the ±1 eigenprojectors.
    const Spectrum sa = spectral_projectors(spin_projection(set[k].first));
    const Spectrum sb = spectral_projectors(spin_projection(set[k].second));
    std::array<double, 4> p{};
    std::array<int, 4> product{};
    std::array<std::size_t, 4> slot{};
    // Spectra are ascending (−1, +1); count slots are ordered +,+ first.
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        p[2 * i + j] = (kron(sa.projectors[i], sb.projectors[j]) * psi).squaredNorm();
        product[2 * i + j] = static_cast<int>(std::lround(sa.values[i] * sb.values[j]));
        slot[2 * i + j] = 2 * (1 - i) + (1 - j);
      }
    Rng rng(derive_seed(seed, streams::kChsh), k);
    long long sum = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      double u = rng.uniform();
      std::size_t cell = 3;
      for (std::size_t c = 0; c < 3; ++c) {
        if (u < p[c]) {
          cell = c;
          break;
        }
        u -= p[c];
      }
      sum += product[cell];
      ++r.counts[k][slot[cell]];
    }
    r.e_sampled[k] = static_cast<double>(sum) / static_cast<double>(trials);
    var += (1.0 - r.e_exact[k] * r.e_exact[k]) / static_cast<double>(trials);
  }
  r.s_sampled = combine(r.e_sampled);
  r.sigma = std::sqrt(var);
  return r;
}

LocalBound enumerate_local_strategies() {
  LocalBound out;
  for (int bits = 0; bits < 16; ++bits) {
    LocalStrategy s;
    s.a = bits & 1 ? -1 : 1;
    s.a_prime = bits & 2 ? -1 : 1;
    s.b = bits & 4 ? -1 : 1;
    s.b_prime = bits & 8 ? -1 : 1;
    out.strategies.push_back(s);
    if (std::abs(s.s()) > out.max_abs_s) {
      out.max_abs_s = std::abs(s.s());
      out.witness = s;
    }
  }
  return out;
}

nlohmann::ordered_json to_json(const ChshResult& r) {
  nlohmann::ordered_json j;
  j["angles"] = {{"a", r.angles.a}, {"b", r.angles.b}, {"a_prime", r.angles.a_prime}, {"b_prime", r.angles.b_prime}};
  j["e_exact"] = r.e_exact;
  j["s_exact"] = r.s_exact;
  j["trials_per_setting"] = r.trials;
  if (r.trials > 0) {
    j["e_sampled"] = r.e_sampled;
    j["s_sampled"] = r.s_sampled;
    j["sigma"] = r.sigma;
  }
  return j;
}

nlohmann::ordered_json to_json(const LocalBound& b) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& s : b.strategies)
    list.push_back({{"a", s.a}, {"a_prime", s.a_prime}, {"b", s.b}, {"b_prime", s.b_prime}, {"s", s.s()}});
  return {{"max_abs_s", b.max_abs_s},
          {"witness", {{"a", b.witness.a}, {"a_prime", b.witness.a_prime}, {"b", b.witness.b}, {"b_prime", b.witness.b_prime}}},
          {"strategies", list}};
}

void write_chsh_counts_csv(std::ostream& out, const ChshResult& r) {
  static constexpr const char* kSettings[4] = {"a,b", "a,b'", "a',b", "a',b'"};
  static constexpr int kSigns[4][2] = {{1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
  out << "setting,outcome_a,outcome_b,count,probability\n";
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t c = 0; c < 4; ++c) {
      const double f = r.trials ? static_cast<double>(r.counts[k][c]) / static_cast<double>(r.trials) : 0.0;
      out << '"' << kSettings[k] << "\"," << kSigns[c][0] << ',' << kSigns[c][1] << ',' << r.counts[k][c] << ','
          << format_double(f) << '\n';
    }
}

}  // namespace pilotwave
