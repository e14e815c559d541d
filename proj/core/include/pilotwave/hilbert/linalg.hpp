#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pilotwave/error.hpp"
#include "pilotwave/rng.hpp"

namespace pilotwave {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

class NotHermitian : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

inline constexpr double kHermitianTol = 1e-12;

// max |a_ij| of a matrix, the residual measure used throughout.
double max_abs(const Matrix& m);

// Dense self-adjoint matrix; construction checks max |M − M†| < tol.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix m, double tol = kHermitianTol);

  static HermitianOperator diagonal(const std::vector<double>& entries);
  static HermitianOperator identity(std::size_t n);

  const Matrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }

 private:
  Matrix m_;
};

// Unit vector in C^N; construction checks the norm to 1e-12.
class FiniteState {
 public:
  explicit FiniteState(Vector amplitudes, double tol = 1e-12);
  const Vector& amplitudes() const noexcept { return c_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(c_.size()); }

 private:
  Vector c_;
};

struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns, orthonormal
};

// Eigenvalues ascending; each eigenvector's first component with modulus
// above 1e-8 is rotated to be real and positive.
Eigensystem eigendecompose(const HermitianOperator& op);

// ‖M − VΛV†‖ as max |entry|.
double reconstruction_residual(const HermitianOperator& op, const Eigensystem& es);

// Applies the phase convention above to every column.
void fix_phases(Matrix& vectors);

// Distinct eigenvalues (merged within tol) and the projector onto each.
struct Spectrum {
  std::vector<double> values;
  std::vector<Matrix> projectors;
};
Spectrum spectral_projectors(const HermitianOperator& op, double tol = 1e-9);

Matrix kron(const Matrix& a, const Matrix& b);
// max |AB − BA|.
double commutator_norm(const Matrix& a, const Matrix& b);

// Standard normal deviate by Box-Muller on the portable uniform stream.
double normal(Rng& rng);
// Seeded random Hermitian matrix with i.i.d. Gaussian entries.
HermitianOperator random_hermitian(std::size_t n, Rng& rng);
// Haar-random unitary (QR of a complex Ginibre matrix, phases fixed).
Matrix random_unitary(std::size_t n, Rng& rng);

}  // namespace pilotwave
