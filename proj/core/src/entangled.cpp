#include "pilotwave/nonlocality/entangled.hpp"

#include <cmath>
#include <ostream>

#include "pilotwave/rng.hpp"
#include "pilotwave/text.hpp"

namespace pilotwave {

namespace {

void check_orthonormal(const Matrix& b, const char* which) {
  if (b.rows() == 0 || b.rows() != b.cols()) throw InvalidArgument(std::string(which) + " must be a square basis matrix");
  const double r = max_abs(b.adjoint() * b - Matrix::Identity(b.rows(), b.cols()));
  if (!(r < 1e-12)) throw InvalidArgument(std::string(which) + " is not orthonormal");
}

// Draws an index from probabilities that sum to one up to round-off.
std::size_t draw(const std::vector<double>& p, Rng& rng) {
  double u = rng.uniform();
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (u < p[k]) return k;
    u -= p[k];
  }
  for (std::size_t k = p.size(); k-- > 0;)
    if (p[k] > 0.0) return k;
  return p.size() - 1;
}

Matrix lift(const Matrix& op, Side side, std::size_t n) {
  const Matrix id = Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  return side == Side::kOne ? kron(op, id) : kron(id, op);
}

}  // namespace

MaxEntangledState::MaxEntangledState(Matrix basis_1, Matrix basis_2) : b1_(std::move(basis_1)), b2_(std::move(basis_2)) {
  check_orthonormal(b1_, "basis_1");
  check_orthonormal(b2_, "basis_2");
  if (b1_.rows() != b2_.rows()) throw InvalidArgument("bases have different dimensions");
  const auto n = b1_.rows();
  const Matrix c = b1_ * b2_.transpose() / std::sqrt(static_cast<double>(n));
  psi_.resize(n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) psi_(i * n + j) = c(i, j);
}

Matrix MaxEntangledState::reduced_density_1() const {
  const Matrix c = coefficient_matrix(psi_, dim());
  return c * c.adjoint();
}

Matrix MaxEntangledState::reduced_density_2() const {
  const Matrix c = coefficient_matrix(psi_, dim());
  return c.transpose() * c.conjugate();
}

MaxEntangledState make_max_entangled(const Matrix& basis_1, const Matrix& basis_2) {
  return MaxEntangledState(basis_1, basis_2);
}

MaxEntangledState singlet() {
  Matrix b1 = Matrix::Zero(2, 2), b2 = Matrix::Zero(2, 2);
  b1(0, 0) = 1.0;   // ψ₁ = |↑⟩
  b1(1, 1) = -1.0;  // ψ₂ = −|↓⟩
  b2(1, 0) = 1.0;   // φ₁ = |↓⟩
  b2(0, 1) = 1.0;   // φ₂ = |↑⟩
  return MaxEntangledState(b1, b2);
}

Matrix coefficient_matrix(const Vector& psi, std::size_t n) {
  const auto k = static_cast<Eigen::Index>(n);
  if (psi.size() != k * k) throw InvalidArgument("vector is not in an N x N product space");
  Matrix c(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) c(i, j) = psi(i * k + j);
  return c;
}

CorrespondencePair correspond(const HermitianOperator& o, const MaxEntangledState& state) {
  if (o.dim() != state.dim()) throw InvalidArgument("operator does not act on factor 1");
  const Matrix& u1 = state.basis_1();
  const Matrix& u2 = state.basis_2();
  Matrix t = u2 * (u1.adjoint() * o.matrix() * u1).conjugate() * u2.adjoint();
  t = 0.5 * (t + t.adjoint());
  const Eigensystem es = eigendecompose(o);
  CorrespondencePair p{o, HermitianOperator(t), es.values, es.vectors, Matrix(), 0.0, 0.0};
  p.eigenvectors_2 = u2 * (u1.adjoint() * es.vectors).conjugate();
  const Matrix lambda = es.values.cast<std::complex<double>>().asDiagonal();
  p.residual_1 = max_abs(o.matrix() * p.eigenvectors_1 - p.eigenvectors_1 * lambda);
  p.residual_2 = max_abs(t * p.eigenvectors_2 - p.eigenvectors_2 * lambda);
  if (!(p.residual_1 < 1e-10 && p.residual_2 < 1e-10))
    throw NumericalError("correspondence eigen-relations fail: residuals " + format_double(p.residual_1) + ", " +
                         format_double(p.residual_2));
  return p;
}

std::vector<double> distinct_outcomes(const CorrespondencePair& pair) {
  return spectral_projectors(pair.o).values;
}

namespace {

// Sequential-measurement tables: probability of each first outcome, the
// collapsed states, and the conditional second-outcome probabilities.
struct Tables {
  std::vector<double> values;
  std::vector<double> first;
  std::vector<Vector> collapsed;
  std::vector<std::vector<double>> second;
};

Tables tables(const MaxEntangledState& state, const CorrespondencePair& pair, Side first) {
  const std::size_t n = state.dim();
  const Spectrum s1 = spectral_projectors(pair.o);
  const Spectrum s2 = spectral_projectors(pair.o_tilde);
  if (s1.values.size() != s2.values.size()) throw NumericalError("O and its correspondent have different spectra");
  for (std::size_t k = 0; k < s1.values.size(); ++k)
    if (!(std::abs(s1.values[k] - s2.values[k]) < 1e-9)) throw NumericalError("O and its correspondent have different spectra");
  const Spectrum& a = first == Side::kOne ? s1 : s2;
  const Spectrum& b = first == Side::kOne ? s2 : s1;
  const Side second = first == Side::kOne ? Side::kTwo : Side::kOne;
  Tables t;
  t.values = s1.values;
  const Vector& psi = state.amplitudes();
  for (std::size_t k = 0; k < a.values.size(); ++k) {
    Vector v = lift(a.projectors[k], first, n) * psi;
    const double pk = v.squaredNorm();
    t.first.push_back(pk);
    if (pk > 0.0) v /= std::sqrt(pk);
    std::vector<double> cond;
    for (std::size_t l = 0; l < b.values.size(); ++l) cond.push_back((lift(b.projectors[l], second, n) * v).squaredNorm());
    t.collapsed.push_back(std::move(v));
    t.second.push_back(std::move(cond));
  }
  return t;
}

}  // namespace

Eigen::MatrixXd exact_joint_distribution(const MaxEntangledState& state, const CorrespondencePair& pair, Side first) {
  const Tables t = tables(state, pair, first);
  const auto m = static_cast<Eigen::Index>(t.values.size());
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index k = 0; k < m; ++k)
    for (Eigen::Index l = 0; l < m; ++l) {
      const double p = t.first[static_cast<std::size_t>(k)] * t.second[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
      if (first == Side::kOne) j(k, l) = p;
      else j(l, k) = p;
    }
  return j;
}

Vector collapse(const MaxEntangledState& state, const CorrespondencePair& pair, Side first, std::size_t k) {
  Tables t = tables(state, pair, first);
  if (k >= t.collapsed.size()) throw InvalidArgument("eigenspace index out of range");
  if (!(t.first[k] > 0.0)) throw InvalidArgument("outcome has zero probability");
  return t.collapsed[k];
}

std::vector<MeasurementRecord> sample_epr(const MaxEntangledState& state, const CorrespondencePair& pair,
                                          std::size_t trials, std::uint64_t seed, Side first) {
  if (pair.o.dim() != state.dim()) throw InvalidArgument("operator does not act on factor 1");
  const Tables t = tables(state, pair, first);
  const std::uint64_t base = derive_seed(seed, streams::kMeasurement);
  std::vector<MeasurementRecord> out;
  out.reserve(trials);
  for (std::size_t i = 0; i < trials; ++i) {
    Rng rng(derive_seed(base, i));
    const std::size_t k = draw(t.first, rng);
    const std::size_t l = draw(t.second[k], rng);
    MeasurementRecord r;
    r.trial = i;
    r.first = first;
    r.state_id = k;
    r.outcome_1 = first == Side::kOne ? t.values[k] : t.values[l];
    r.outcome_2 = first == Side::kOne ? t.values[l] : t.values[k];
    out.push_back(r);
  }
  return out;
}

void write_measurement_csv_header(std::ostream& out, bool with_operator) {
  if (with_operator) out << "operator,";
  out << "trial,first_side,outcome_1,outcome_2,state_id\n";
}

void write_measurement_csv(std::ostream& out, const std::vector<MeasurementRecord>& records,
                           const std::string& operator_name) {
  for (const auto& r : records) {
    if (!operator_name.empty()) out << operator_name << ',';
    out << r.trial << ',' << static_cast<int>(r.first) << ',' << format_double(r.outcome_1) << ','
        << format_double(r.outcome_2) << ',' << r.state_id << '\n';
  }
}

}  // namespace pilotwave
