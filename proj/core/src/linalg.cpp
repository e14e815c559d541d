#include "pilotwave/hilbert/linalg.hpp"

#include <cmath>
#include <numbers>

namespace pilotwave {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

HermitianOperator::HermitianOperator(Matrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) throw InvalidArgument("operator must be a non-empty square matrix");
  if (!m_.allFinite()) throw InvalidArgument("operator has non-finite entries");
  const double r = max_abs(m_ - m_.adjoint());
  if (!(r < tol)) throw NotHermitian("operator is not Hermitian: max |M - M^H| = " + std::to_string(r));
}

HermitianOperator HermitianOperator::diagonal(const std::vector<double>& entries) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(entries.size()), static_cast<Eigen::Index>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = entries[i];
  return HermitianOperator(std::move(m));
}

HermitianOperator HermitianOperator::identity(std::size_t n) {
  return HermitianOperator(Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
}

FiniteState::FiniteState(Vector amplitudes, double tol) : c_(std::move(amplitudes)) {
  if (c_.size() == 0) throw InvalidArgument("state must have dimension >= 1");
  if (!(std::abs(c_.norm() - 1.0) < tol)) throw InvalidArgument("state is not normalized");
}

void fix_phases(Matrix& v) {
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    for (Eigen::Index i = 0; i < v.rows(); ++i) {
      const std::complex<double> c = v(i, j);
      if (std::abs(c) > 1e-8) {
        v.col(j) *= std::conj(c) / std::abs(c);
        v(i, j) = std::abs(v(i, j));  // exactly real
        break;
      }
    }
  }
}

Eigensystem eigendecompose(const HermitianOperator& op) {
  // Symmetrize so round-off in the input does not leak into the solver.
  const Matrix m = 0.5 * (op.matrix() + op.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) throw NumericalError("eigendecomposition did not converge");
  Eigensystem es{solver.eigenvalues(), solver.eigenvectors()};
  fix_phases(es.vectors);
  return es;
}

double reconstruction_residual(const HermitianOperator& op, const Eigensystem& es) {
  const Matrix r = es.vectors * es.values.cast<std::complex<double>>().asDiagonal() * es.vectors.adjoint();
  return max_abs(op.matrix() - r);
}

Spectrum spectral_projectors(const HermitianOperator& op, double tol) {
  const Eigensystem es = eigendecompose(op);
  Spectrum s;
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    const Vector v = es.vectors.col(j);
    if (s.values.empty() || es.values(j) - s.values.back() > tol) {
      s.values.push_back(es.values(j));
      s.projectors.push_back(v * v.adjoint());
    } else {
      s.projectors.back() += v * v.adjoint();
    }
  }
  return s;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double commutator_norm(const Matrix& a, const Matrix& b) { return max_abs(a * b - b * a); }

double normal(Rng& rng) {
  double u = rng.uniform();
  while (u == 0.0) u = rng.uniform();
  const double v = rng.uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

HermitianOperator random_hermitian(std::size_t n, Rng& rng) {
  const auto k = static_cast<Eigen::Index>(n);
  Matrix g(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) g(i, j) = {normal(rng), normal(rng)};
  return HermitianOperator(0.5 * (g + g.adjoint()));
}

Matrix random_unitary(std::size_t n, Rng& rng) {
  const auto k = static_cast<Eigen::Index>(n);
  Matrix g(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) g(i, j) = {normal(rng), normal(rng)};
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < k; ++j) {
    const std::complex<double> d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

}  // namespace pilotwave
