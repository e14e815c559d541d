#pragma once

#include <cstddef>
#include <memory>
#include <numbers>
#include <span>
#include <vector>

#include "pilotwave/numerics/grid.hpp"
#include "pilotwave/numerics/wavefunction.hpp"

namespace pilotwave {

// Angular wavenumbers 2π·m/L of one axis in FFT order (m = 0, 1, ..., -1).
std::vector<double> angular_wavenumbers(const Axis& axis);

// Largest |k| representable on the axis.
inline double nyquist_wavenumber(const Axis& axis) { return std::numbers::pi / axis.spacing(); }

// In-place complex DFT over a whole grid (FFTW backend). Transforms are
// reentrant: one instance may be used from several threads at once.
class FourierTransform {
 public:
  explicit FourierTransform(const Grid& grid);
  ~FourierTransform();
  FourierTransform(FourierTransform&&) noexcept;
  FourierTransform& operator=(FourierTransform&&) noexcept;
  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;

  const Grid& grid() const noexcept;
  // Unnormalized forward transform.
  void forward(std::span<Complex> data) const;
  // Inverse transform including the 1/N factor.
  void inverse(std::span<Complex> data) const;
  // |k|² per node in transform order.
  const std::vector<double>& k_squared() const noexcept;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Spectral derivatives of real fields via r2c/c2r transforms. A field that
// is identically zero maps to an identically zero derivative, so a purely
// real wave function has an exactly real gradient.
class RealSpectralDerivative {
 public:
  explicit RealSpectralDerivative(const Grid& grid);
  ~RealSpectralDerivative();
  RealSpectralDerivative(RealSpectralDerivative&&) noexcept;
  RealSpectralDerivative& operator=(RealSpectralDerivative&&) noexcept;
  RealSpectralDerivative(const RealSpectralDerivative&) = delete;
  RealSpectralDerivative& operator=(const RealSpectralDerivative&) = delete;

  // Writes ∂f/∂x_a for every axis a < dims into out[a]. The Nyquist mode is
  // dropped from odd derivatives.
  void gradient(std::span<const double> f, std::span<std::vector<double>> out) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Spectral gradient of every component: result[a] has the same layout as
// psi.amplitudes() and holds ∂Ψ/∂x_a.
struct Gradient {
  std::size_t dims = 1;
  std::array<std::vector<Complex>, 2> axis;
};

Gradient gradient(const WaveFunction& psi);

}  // namespace pilotwave
