#include "pilotwave/numerics/split_step.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include "pilotwave/error.hpp"

namespace pilotwave {

void check_stability(const Grid& grid, const Potential& potential, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw StabilityViolation("time step must be positive");
  const double vmax = potential.max_abs(grid);
  if (!(dt * vmax < 0.5)) {
    std::ostringstream os;
    os << "dt*max|V| = " << dt * vmax << " violates the bound 0.5";
    throw StabilityViolation(os.str());
  }
  double kmax2 = 0.0;
  for (std::size_t a = 0; a < grid.dims(); ++a) {
    const double k = nyquist_wavenumber(grid.axis(a));
    kmax2 += k * k;
  }
  if (!(dt * kmax2 / 2.0 < std::numbers::pi)) {
    std::ostringstream os;
    os << "dt*k_max^2/2 = " << dt * kmax2 / 2.0 << " violates the bound pi";
    throw StabilityViolation(os.str());
  }
}

SplitStepSolver::SplitStepSolver(const Grid& grid, std::size_t components, Potential potential,
                                 double dt, SolverOptions options)
    : grid_(grid),
      components_(components),
      potential_(std::move(potential)),
      dt_(dt),
      options_(options),
      fft_(grid) {
  potential_.check_compatible(grid_, components_);
  check_stability(grid_, potential_, dt_);

  const auto& k2 = fft_.k_squared();
  half_kinetic_.resize(k2.size());
  full_kinetic_.resize(k2.size());
  for (std::size_t i = 0; i < k2.size(); ++i) {
    half_kinetic_[i] = std::exp(Complex(0.0, -0.25 * k2[i] * dt_));
    full_kinetic_[i] = std::exp(Complex(0.0, -0.5 * k2[i] * dt_));
  }

  // Every supported potential is either static or switches between one
  // profile and zero, so a single phase table suffices.
  const double t_on = 0.0;
  phase_.resize(components_);
  std::vector<double> v(grid_.size());
  for (std::size_t c = 0; c < components_; ++c) {
    potential_.evaluate(grid_, t_on, c, v);
    phase_[c].resize(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) phase_[c][i] = std::exp(Complex(0.0, -v[i] * dt_));
  }

  if (options_.absorbing_mask) {
    if (!(options_.mask_fraction > 0.0 && options_.mask_fraction < 0.5)) {
      throw InvalidArgument("mask_fraction must lie in (0, 0.5)");
    }
    mask_.assign(grid_.size(), 1.0);
    for (std::size_t node = 0; node < grid_.size(); ++node) {
      const Point p = grid_.position(node);
      for (std::size_t a = 0; a < grid_.dims(); ++a) {
        const Axis& ax = grid_.axis(a);
        const double ramp = options_.mask_fraction * ax.length();
        const double edge = std::min(p[a] - ax.lo, ax.hi - p[a]);
        if (edge < ramp) {
          const double c = std::cos(0.5 * std::numbers::pi * (1.0 - edge / ramp));
          mask_[node] *= c * c;
        }
      }
    }
  }
}

void SplitStepSolver::kinetic(WaveFunction& psi, bool half) const {
  const auto& factor = half ? half_kinetic_ : full_kinetic_;
  for (std::size_t c = 0; c < components_; ++c) {
    auto comp = psi.component(c);
    fft_.forward(comp);
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= factor[i];
    fft_.inverse(comp);
  }
}

void SplitStepSolver::potential_phase(WaveFunction& psi, double t) {
  if (potential_.free_at(t)) return;
  for (std::size_t c = 0; c < components_; ++c) {
    auto comp = psi.component(c);
    const auto& ph = phase_[c];
    for (std::size_t i = 0; i < comp.size(); ++i) comp[i] *= ph[i];
  }
}

void SplitStepSolver::absorb(WaveFunction& psi) {
  double removed = 0.0;
  for (std::size_t c = 0; c < components_; ++c) {
    auto comp = psi.component(c);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const double before = std::norm(comp[i]);
      comp[i] *= mask_[i];
      removed += before - std::norm(comp[i]);
    }
  }
  absorbed_ += removed * grid_.cell_volume();
}

void SplitStepSolver::advance(WaveFunction& psi, std::size_t steps) {
  if (psi.grid() != grid_ || psi.components() != components_) {
    throw InvalidArgument("wave function does not match the solver grid");
  }
  if (steps == 0) return;
  const double t0 = psi.time();
  kinetic(psi, true);
  for (std::size_t s = 0; s < steps; ++s) {
    potential_phase(psi, t0 + (static_cast<double>(s) + 0.5) * dt_);
    kinetic(psi, s + 1 == steps);
    if (options_.absorbing_mask) absorb(psi);
    if (!psi.finite()) throw NonFiniteField(s, "non-finite amplitude during evolution");
  }
  psi.set_time(t0 + static_cast<double>(steps) * dt_);
}

WaveFunction evolve(WaveFunction psi, const Potential& potential, double dt, std::size_t steps) {
  if (steps == 0) return psi;
  const double n0 = psi.norm();
  SplitStepSolver solver(psi.grid(), psi.components(), potential, dt);
  solver.advance(psi, steps);
  const double n1 = psi.norm();
  if (!(std::abs(n1 - n0) <= 1e-9 * n0)) {
    std::ostringstream os;
    os << "norm drifted from " << n0 << " to " << n1;
    throw NumericalError(os.str());
  }
  return psi;
}

double energy(const WaveFunction& psi, const Potential& potential) {
  const Grid& g = psi.grid();
  FourierTransform fft(g);
  const auto& k2 = fft.k_squared();
  double kinetic = 0.0;
  double pot = 0.0;
  double norm2 = 0.0;
  std::vector<double> v(g.size());
  for (std::size_t c = 0; c < psi.components(); ++c) {
    auto comp = psi.component(c);
    std::vector<Complex> spec(comp.begin(), comp.end());
    fft.forward(spec);
    for (std::size_t i = 0; i < spec.size(); ++i) kinetic += 0.5 * k2[i] * std::norm(spec[i]);
    potential.evaluate(g, psi.time(), c, v);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      pot += v[i] * std::norm(comp[i]);
      norm2 += std::norm(comp[i]);
    }
  }
  kinetic /= static_cast<double>(g.size());
  return (kinetic + pot) / norm2;
}

}  // namespace pilotwave
