#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "pilotwave/numerics/grid.hpp"
#include "pilotwave/error.hpp"
#include "pilotwave/numerics/wavefunction.hpp"

namespace pilotwave {

// Nodes with Ψ†Ψ at or below this fraction of the grid maximum are masked.
inline constexpr double kNodeFloorFraction = 1e-12;

// Guidance velocity v = Im(Ψ†∇Ψ)/(Ψ†Ψ) sampled on the grid. Masked nodes
// carry zero and are flagged.
struct VelocityField {
  Grid grid = Grid::line({0.0, 1.0, 8});
  double time = 0.0;
  double node_floor = 0.0;
  std::array<std::vector<double>, 2> values;
  std::vector<std::uint8_t> masked;

  std::size_t masked_count() const noexcept;
  // max |v| over unmasked nodes.
  double max_speed() const noexcept;
};

// Throws DegenerateField when every node is masked.
VelocityField velocity_field(const WaveFunction& psi, double floor_fraction = kNodeFloorFraction);

class DegenerateField : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct VelocitySample {
  Point v{0.0, 0.0};
  // The nearest node is masked: the point is inside the nodal region. Cells
  // with only some masked corners interpolate from the unmasked ones.
  bool masked = false;
  bool outside = false;  // the point is outside the node span of the grid
};

// Off-grid velocity: 4-point cubic Lagrange interpolation in 1D (falling back
// to linear next to edges and masked stencil points), bilinear in 2D.
VelocitySample interpolate(const VelocityField& field, const Point& x);

}  // namespace pilotwave
