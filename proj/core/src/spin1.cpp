#include "pilotwave/hilbert/spin1.hpp"

#include <cmath>

namespace pilotwave {

const Spin1Generators& spin1_generators() {
  static const Spin1Generators g = [] {
    using C = std::complex<double>;
    const double s = 1.0 / std::sqrt(2.0);
    const C i{0.0, 1.0};
    Spin1Generators out;
    out.x = Matrix::Zero(3, 3);
    out.y = Matrix::Zero(3, 3);
    out.z = Matrix::Zero(3, 3);
    out.x(0, 1) = out.x(1, 0) = out.x(1, 2) = out.x(2, 1) = s;
    out.y(0, 1) = -i * s;
    out.y(1, 0) = i * s;
    out.y(1, 2) = -i * s;
    out.y(2, 1) = i * s;
    out.z(0, 0) = 1.0;
    out.z(2, 2) = -1.0;
    return out;
  }();
  return g;
}

HermitianOperator spin1_component(const Eigen::Vector3d& n) {
  if (!(std::abs(n.norm() - 1.0) < 1e-10)) throw InvalidArgument("spin direction must be a unit vector");
  const auto& g = spin1_generators();
  return HermitianOperator(n.x() * g.x + n.y() * g.y + n.z() * g.z);
}

void validate_frame(const Frame& f, double tol) {
  for (int a = 0; a < 3; ++a) {
    if (!f[a].allFinite()) throw InvalidArgument("frame has non-finite components");
    for (int b = a; b < 3; ++b) {
      const double want = a == b ? 1.0 : 0.0;
      if (!(std::abs(f[a].dot(f[b]) - want) < tol)) throw InvalidArgument("frame is not orthonormal");
    }
  }
}

std::array<HermitianOperator, 3> spin1_squares(const Frame& f) {
  validate_frame(f);
  auto square = [](const Eigen::Vector3d& n) {
    const Matrix s = spin1_component(n).matrix();
    Matrix s2 = s * s;
    s2 = 0.5 * (s2 + s2.adjoint());  // exact Hermiticity against round-off
    return HermitianOperator(s2);
  };
  return {square(f[0]), square(f[1]), square(f[2])};
}

Frame random_frame(Rng& rng) {
  auto gaussian = [&] { return Eigen::Vector3d(normal(rng), normal(rng), normal(rng)); };
  Eigen::Vector3d u = gaussian();
  while (u.norm() < 1e-8) u = gaussian();
  u.normalize();
  Eigen::Vector3d v = gaussian();
  v -= u.dot(v) * u;
  while (v.norm() < 1e-8) {
    v = gaussian();
    v -= u.dot(v) * u;
  }
  v.normalize();
  return {u, v, u.cross(v)};
}

}  // namespace pilotwave
