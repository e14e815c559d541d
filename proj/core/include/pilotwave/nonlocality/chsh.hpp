#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "pilotwave/nonlocality/entangled.hpp"

namespace pilotwave {

// Analyzer angles in the x-z plane. S = E(a,b) − E(a,b′) + E(a′,b) + E(a′,b′).
struct ChshAngles {
  double a = 0.0;
  double b = 0.0;
  double a_prime = 0.0;
  double b_prime = 0.0;
};

// Angles (a, b, a′, b′) = (0, π/4, π/2, 3π/4).
ChshAngles optimal_chsh_angles();

// cos θ σ_z + sin θ σ_x, eigenvalues ±1.
HermitianOperator spin_projection(double theta);

// ⟨Ψ| A(θ₁) ⊗ B(θ₂) |Ψ⟩ for a qubit pair.
double correlation(const MaxEntangledState& state, double theta_1, double theta_2);

struct ChshResult {
  ChshAngles angles;
  std::array<double, 4> e_exact{};    // (a,b), (a,b′), (a′,b), (a′,b′)
  double s_exact = 0.0;
  std::size_t trials = 0;              // per setting pair
  std::array<double, 4> e_sampled{};
  double s_sampled = 0.0;
  double sigma = 0.0;  // binomial standard error of s_sampled at the exact E
  // Per setting pair, counts of (A, B) = (+,+), (+,−), (−,+), (−,−).
  std::array<std::array<std::size_t, 4>, 4> counts{};
};

// Exact value plus a sampled estimate; trials = 0 skips sampling. Throws
// InvalidArgument unless the state is a qubit pair.
ChshResult chsh_quantum(const MaxEntangledState& state, const ChshAngles& angles, std::size_t trials = 0,
                        std::uint64_t seed = 1);

struct LocalStrategy {
  int a = 1, a_prime = 1, b = 1, b_prime = 1;  // predetermined ±1 responses
  double s() const noexcept {
    return static_cast<double>(a * b - a * b_prime + a_prime * b + a_prime * b_prime);
  }
};

struct LocalBound {
  std::vector<LocalStrategy> strategies;  // all 16
  double max_abs_s = 0.0;
  LocalStrategy witness;
};

LocalBound enumerate_local_strategies();

nlohmann::ordered_json to_json(const ChshResult& r);
nlohmann::ordered_json to_json(const LocalBound& b);

// Columns: setting, outcome_a, outcome_b, count, probability.
void write_chsh_counts_csv(std::ostream& out, const ChshResult& r);

}  // namespace pilotwave
