#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>

#include "pilotwave/numerics/wavefunction.hpp"

namespace pilotwave {

// exp(-(x-c)²/(4σ²) + i k·(x-c)) per axis; `width` is the standard deviation
// σ of the position density.
struct GaussianPacket {
  Point center{0.0, 0.0};
  Point width{1.0, 1.0};
  Point momentum{0.0, 0.0};
};

// Coherent sum of two equal Gaussians at ±half_separation. In 1D both sit on
// the x axis; in 2D they sit at y = ±half_separation (the two slits) with a
// common longitudinal Gaussian along x. `momentum` is along x in both cases.
struct TwoGaussian {
  double half_separation = 2.0;
  double width = 0.5;
  double momentum = 0.0;
  double longitudinal_width = 1.0;
};

// Hard-wall eigenstate sqrt(2/L) sin(nπ(x-left)/L) inside [left, right], zero
// outside. One-dimensional only.
struct BoxEigenstate {
  double left = 0.0;
  double right = 1.0;
  int level = 1;
};

// (c_up, c_down) ⊗ Gaussian, one-dimensional.
struct SpinorGaussian {
  Complex up{1.0, 0.0};
  Complex down{0.0, 0.0};
  double center = 0.0;
  double width = 1.0;
  double momentum = 0.0;
};

using Initializer = std::variant<GaussianPacket, TwoGaussian, BoxEigenstate, SpinorGaussian>;

// Samples the analytic form on the grid and normalizes it. Throws
// SupportEscapesGrid when fewer than six widths of support fit in the grid
// (or the box does not), NumericalError when the sampled field is zero.
WaveFunction make_wavefunction(const Grid& grid, const Initializer& init);

// Builds an initializer from its name ("gaussian", "two_gaussian",
// "box_eigenstate", "spinor_gaussian") and numeric parameters. Unknown names
// and unknown parameter keys are rejected.
Initializer make_initializer(std::string_view name, const std::map<std::string, double>& params);

}  // namespace pilotwave
