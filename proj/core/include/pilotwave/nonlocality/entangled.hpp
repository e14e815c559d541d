#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pilotwave/hilbert/linalg.hpp"

namespace pilotwave {

// Ψ = N^{-1/2} Σ_n ψ_n ⊗ φ_n with ψ_n, φ_n the columns of basis_1, basis_2.
// Product-space amplitudes are indexed i·N + j (factor 1 major).
class MaxEntangledState {
 public:
  MaxEntangledState(Matrix basis_1, Matrix basis_2);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(b1_.rows()); }
  const Matrix& basis_1() const noexcept { return b1_; }
  const Matrix& basis_2() const noexcept { return b2_; }
  const Vector& amplitudes() const noexcept { return psi_; }

  // Partial traces over the other factor.
  Matrix reduced_density_1() const;
  Matrix reduced_density_2() const;

  // Same state with the two factors exchanged.
  MaxEntangledState swapped() const { return MaxEntangledState(b2_, b1_); }

 private:
  Matrix b1_, b2_;
  Vector psi_;
};

MaxEntangledState make_max_entangled(const Matrix& basis_1, const Matrix& basis_2);

// (|↑↓⟩ − |↓↑⟩)/√2 with ψ = (|↑⟩, −|↓⟩) and φ = (|↓⟩, |↑⟩).
MaxEntangledState singlet();

// Product-space vector ↔ N×N coefficient matrix C with Ψ = Σ C_ij e_i ⊗ e_j.
Matrix coefficient_matrix(const Vector& psi, std::size_t n);

// O on factor 1 and the operator Õ on factor 2 with (O ⊗ I)Ψ = (I ⊗ Õ)Ψ:
// Õ = U₂ · conj(U₁† O U₁) · U₂†. eigenvectors_1 are O's (sorted, phase
// fixed); eigenvectors_2[:, n] = U₂ conj(U₁† ψ_n), so that Ψ is again
// N^{-1/2} Σ ψ_n ⊗ φ_n in the new bases.
struct CorrespondencePair {
  HermitianOperator o;
  HermitianOperator o_tilde;
  Eigen::VectorXd eigenvalues;  // ascending, with multiplicity
  Matrix eigenvectors_1;
  Matrix eigenvectors_2;
  double residual_1 = 0.0;  // max |Oψ_n − λ_n ψ_n|
  double residual_2 = 0.0;  // max |Õφ_n − λ_n φ_n|
};

CorrespondencePair correspond(const HermitianOperator& o, const MaxEntangledState& state);

enum class Side { kOne = 1, kTwo = 2 };

struct MeasurementRecord {
  std::size_t trial = 0;
  Side first = Side::kTwo;
  double outcome_1 = 0.0;
  double outcome_2 = 0.0;
  std::size_t state_id = 0;  // index of the collapsed eigenspace (distinct values, ascending)
};

// Distinct eigenvalues shared by O and Õ.
std::vector<double> distinct_outcomes(const CorrespondencePair& pair);

// P(outcome_1 = a, outcome_2 = b) indexed [a][b] over distinct_outcomes,
// computed by sequential projective measurement in the given order.
Eigen::MatrixXd exact_joint_distribution(const MaxEntangledState& state, const CorrespondencePair& pair, Side first);

// Normalized state after the first measurement yields eigenspace k.
Vector collapse(const MaxEntangledState& state, const CorrespondencePair& pair, Side first, std::size_t k);

// Trial t uses its own stream derive_seed(derive_seed(seed, kMeasurement), t),
// so records do not depend on scheduling.
std::vector<MeasurementRecord> sample_epr(const MaxEntangledState& state, const CorrespondencePair& pair,
                                          std::size_t trials, std::uint64_t seed, Side first = Side::kTwo);

void write_measurement_csv(std::ostream& out, const std::vector<MeasurementRecord>& records,
                           const std::string& operator_name = "");
void write_measurement_csv_header(std::ostream& out, bool with_operator);

}  // namespace pilotwave
