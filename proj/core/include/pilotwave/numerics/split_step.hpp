#pragma once

#include <cstddef>

#include "pilotwave/numerics/fourier.hpp"
#include "pilotwave/numerics/potential.hpp"
#include "pilotwave/numerics/wavefunction.hpp"

namespace pilotwave {

struct SolverOptions {
  // cos² absorbing ramp over the outer `mask_fraction` of every axis. Off by
  // default; absorbed probability is tracked, never silently renormalized.
  bool absorbing_mask = false;
  double mask_fraction = 0.1;
};

// Throws StabilityViolation unless dt > 0, dt·max|V| < 0.5 and
// dt·k_max²/2 < π with k_max² the sum of squared Nyquist wavenumbers.
void check_stability(const Grid& grid, const Potential& potential, double dt);

// Strang-split (kinetic-potential-kinetic) spectral propagator in natural
// units ħ = m = 1. Consecutive kinetic half steps are fused, so a call to
// advance() costs two FFTs per step and component.
class SplitStepSolver {
 public:
  SplitStepSolver(const Grid& grid, std::size_t components, Potential potential, double dt,
                  SolverOptions options = {});

  // Advances psi by `steps` steps of size dt starting at psi.time(). Throws
  // NonFiniteField (with the step index) if a NaN or Inf appears.
  void advance(WaveFunction& psi, std::size_t steps);

  double dt() const noexcept { return dt_; }
  const Potential& potential() const noexcept { return potential_; }
  // Total probability removed by the absorbing mask so far.
  double absorbed() const noexcept { return absorbed_; }

 private:
  void kinetic(WaveFunction& psi, bool half) const;
  void potential_phase(WaveFunction& psi, double t);
  void absorb(WaveFunction& psi);

  Grid grid_;
  std::size_t components_;
  Potential potential_;
  double dt_;
  SolverOptions options_;
  FourierTransform fft_;
  std::vector<Complex> half_kinetic_;
  std::vector<Complex> full_kinetic_;
  // exp(-i V dt) per component while the potential is switched on.
  std::vector<std::vector<Complex>> phase_;
  std::vector<double> mask_;
  double absorbed_ = 0.0;
};

// Evolves `steps` steps of size dt. The returned field's time is advanced by
// dt·steps and its norm equals the input norm within 1e-9 (NumericalError
// otherwise).
WaveFunction evolve(WaveFunction psi, const Potential& potential, double dt, std::size_t steps);

// ⟨H⟩ / ⟨Ψ|Ψ⟩ with the kinetic term evaluated spectrally, at time psi.time().
double energy(const WaveFunction& psi, const Potential& potential);

}  // namespace pilotwave
