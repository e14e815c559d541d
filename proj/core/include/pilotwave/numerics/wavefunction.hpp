#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "pilotwave/numerics/grid.hpp"

namespace pilotwave {

using Complex = std::complex<double>;

// Complex amplitude field on a grid, scalar (1 component) or spinor
// (2 components). Amplitudes are stored component-major: all nodes of
// component 0, then all nodes of component 1.
class WaveFunction {
 public:
  WaveFunction(Grid grid, std::size_t components, std::vector<Complex> amplitudes,
               double time = 0.0);
  // Zero field.
  WaveFunction(Grid grid, std::size_t components, double time = 0.0);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t components() const noexcept { return components_; }
  double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }

  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
  std::span<Complex> amplitudes() noexcept { return amplitudes_; }
  std::span<const Complex> component(std::size_t c) const;
  std::span<Complex> component(std::size_t c);

  // Ψ†Ψ per node.
  std::vector<double> density() const;
  // |Ψ_c|² per node for one component.
  std::vector<double> component_density(std::size_t c) const;

  // L² norm, sqrt(Σ Ψ†Ψ · cell volume).
  double norm() const;
  // Rescales to unit norm; throws NumericalError for a zero field.
  void normalize();
  bool finite() const noexcept;

  // Elementwise complex conjugate (time reversal for real potentials).
  WaveFunction conjugated() const;

 private:
  Grid grid_;
  std::size_t components_;
  std::vector<Complex> amplitudes_;
  double time_;
};

}  // namespace pilotwave
