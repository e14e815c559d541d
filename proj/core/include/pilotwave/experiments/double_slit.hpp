#pragma once

#include <cstdint>

#include "pilotwave/experiments/outcome.hpp"
#include "pilotwave/numerics/grid.hpp"

namespace pilotwave {

enum class SlitSelection { kBoth, kUpper, kLower };

SlitSelection parse_slits(const std::string& name);
const char* to_string(SlitSelection s);

// Two coherent Gaussians just past the slits at y = ±separation/2, moving
// along +x with momentum k. Defaults put three bright fringes on the screen.
struct DoubleSlitConfig {
  double separation = 6.4;
  double width = 0.8;  // transverse σ of each slit packet
  double momentum = 8.0;
  double t_screen = 3.0;
  SlitSelection slits = SlitSelection::kBoth;
  std::size_t ensemble = 10000;
  std::uint64_t seed = 1;

  double longitudinal_width = 1.0;
  Axis x_axis{-8.0, 40.0, 256};
  Axis y_axis{-18.0, 18.0, 128};
  double dt = 5e-3;
  std::size_t steps_per_snapshot = 10;
  double tol = 1e-5;
  // Screen histogram bin width used for counting fringes.
  double bin_width = 1.0;
  std::size_t plot_trajectories = kMaxPlotTrajectories;
  unsigned threads = 0;

  void validate() const;
};

// Labels: slit of origin, +1 upper (y₀ > 0), −1 lower. The summary holds the
// screen histogram, its maxima, the same count for the solver's |Ψ|² at the
// screen, symmetry-line crossings and slit-label agreement.
ExperimentOutcome run_double_slit(const DoubleSlitConfig& cfg);

}  // namespace pilotwave
