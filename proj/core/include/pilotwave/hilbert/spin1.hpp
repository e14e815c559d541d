#pragma once

#include <array>

#include <Eigen/Dense>

#include "pilotwave/hilbert/linalg.hpp"

namespace pilotwave {

using Frame = std::array<Eigen::Vector3d, 3>;

// Spin-1 generators in the S_z eigenbasis ordered m = +1, 0, −1.
struct Spin1Generators {
  Matrix x, y, z;
};
const Spin1Generators& spin1_generators();

// n·S for a unit vector n.
HermitianOperator spin1_component(const Eigen::Vector3d& n);

// Throws InvalidArgument unless the three vectors are orthonormal to 1e-10.
void validate_frame(const Frame& frame, double tol = 1e-10);

// (S_u², S_v², S_w²) for an orthonormal frame (u, v, w).
std::array<HermitianOperator, 3> spin1_squares(const Frame& frame);

// Haar-random right-handed orthonormal frame.
Frame random_frame(Rng& rng);

}  // namespace pilotwave
