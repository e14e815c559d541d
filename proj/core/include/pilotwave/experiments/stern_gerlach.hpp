#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "pilotwave/error.hpp"
#include "pilotwave/experiments/outcome.hpp"
#include "pilotwave/numerics/potential.hpp"

namespace pilotwave {

class PacketsNotSeparated : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

// One-dimensional spin measurement along z: an impulsive linear-gradient
// pulse of strength λ over [0, τ] followed by free flight.
struct SternGerlachConfig {
  Complex c_up{std::sqrt(0.5), 0.0};
  Complex c_down{std::sqrt(0.5), 0.0};
  double center = 0.0;
  double width = 1.0;
  double coupling = 4.0;
  double window = 1.0;
  double flight = 3.0;
  FieldOrientation orientation = FieldOrientation::kNormal;
  // Single-shot starting points; empty selects an equilibrium ensemble.
  std::vector<double> z0;
  std::size_t ensemble = 10000;
  std::uint64_t seed = 1;

  Axis axis{-32.0, 32.0, 512};
  double dt = 1e-3;
  std::size_t steps_per_snapshot = 20;
  double tol = 1e-6;
  std::size_t plot_trajectories = kMaxPlotTrajectories;
  unsigned threads = 0;

  void validate() const;
  double readout_time() const noexcept { return window + flight; }
};

FieldOrientation parse_orientation(const std::string& name);
const char* to_string(FieldOrientation o);

// Apparatus-relative spin label: deflection sign × orientation sign.
int spin_label(double z0, double z_final, FieldOrientation orientation);

// Labels: +1 "up", −1 "down". Throws PacketsNotSeparated when the two spin
// components at readout are not at least six widths apart.
ExperimentOutcome run_stern_gerlach(const SternGerlachConfig& cfg);

// The same fixed inputs run in both orientations.
struct ContextualityCase {
  double width = 1.0;
  double relative_phase = 0.0;
  double z0 = 0.0;
  int deflection_normal = 0;
  int deflection_reversed = 0;
  int label_normal = 0;
  int label_reversed = 0;
};

struct ContextualityReport {
  std::vector<ContextualityCase> cases;
  std::size_t same_deflection = 0;
  std::size_t negated_label = 0;
  bool pass() const noexcept { return same_deflection == cases.size() && negated_label == cases.size(); }
};

// 10 packet variants (width × relative phase, equal weights) × 10 starting
// points, 100 inputs in all.
ContextualityReport run_contextuality_suite(const SternGerlachConfig& base);
nlohmann::ordered_json to_json(const ContextualityReport& report);

}  // namespace pilotwave
