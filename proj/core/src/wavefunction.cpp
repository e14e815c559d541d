#include "pilotwave/numerics/wavefunction.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "pilotwave/error.hpp"

namespace pilotwave {

WaveFunction::WaveFunction(Grid grid, std::size_t components, std::vector<Complex> amplitudes,
                           double time)
    : grid_(std::move(grid)),
      components_(components),
      amplitudes_(std::move(amplitudes)),
      time_(time) {
  if (components_ != 1 && components_ != 2) {
    throw InvalidArgument("wave function must have 1 or 2 components");
  }
  if (amplitudes_.size() != components_ * grid_.size()) {
    throw InvalidArgument("amplitude count " + std::to_string(amplitudes_.size()) +
                          " does not match grid (" +
                          std::to_string(components_ * grid_.size()) + ")");
  }
}

WaveFunction::WaveFunction(Grid grid, std::size_t components, double time)
    : WaveFunction(grid, components, std::vector<Complex>(components * grid.size()), time) {}

std::span<const Complex> WaveFunction::component(std::size_t c) const {
  if (c >= components_) throw InvalidArgument("component index out of range");
  return std::span<const Complex>(amplitudes_).subspan(c * grid_.size(), grid_.size());
}

std::span<Complex> WaveFunction::component(std::size_t c) {
  if (c >= components_) throw InvalidArgument("component index out of range");
  return std::span<Complex>(amplitudes_).subspan(c * grid_.size(), grid_.size());
}

std::vector<double> WaveFunction::density() const {
  const std::size_t n = grid_.size();
  std::vector<double> rho(n, 0.0);
  for (std::size_t c = 0; c < components_; ++c) {
    const Complex* a = amplitudes_.data() + c * n;
    for (std::size_t i = 0; i < n; ++i) rho[i] += std::norm(a[i]);
  }
  return rho;
}

std::vector<double> WaveFunction::component_density(std::size_t c) const {
  auto comp = component(c);
  std::vector<double> rho(comp.size());
  for (std::size_t i = 0; i < comp.size(); ++i) rho[i] = std::norm(comp[i]);
  return rho;
}

double WaveFunction::norm() const {
  double sum = 0.0;
  for (const Complex& a : amplitudes_) sum += std::norm(a);
  return std::sqrt(sum * grid_.cell_volume());
}

void WaveFunction::normalize() {
  const double n = norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw NumericalError("cannot normalize a zero or non-finite field");
  const double scale = 1.0 / n;
  for (Complex& a : amplitudes_) a *= scale;
}

bool WaveFunction::finite() const noexcept {
  for (const Complex& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) return false;
  }
  return true;
}

WaveFunction WaveFunction::conjugated() const {
  WaveFunction out = *this;
  for (Complex& a : out.amplitudes_) a = std::conj(a);
  return out;
}

}  // namespace pilotwave
