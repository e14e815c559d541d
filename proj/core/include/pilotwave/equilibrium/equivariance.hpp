#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pilotwave/equilibrium/statistics.hpp"
#include "pilotwave/guidance/trajectory.hpp"
#include "pilotwave/guidance/wave_source.hpp"

namespace pilotwave {

// max(1.63/√n, 2e-2): the 1% KS critical value with a floor that absorbs
// grid and integrator bias.
double equivariance_threshold(std::size_t n);

struct EquivarianceReport {
  std::string experiment;
  double t = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  // 1D: the KS distance. 2D: the larger of the two marginal distances.
  double ks = 0.0;
  std::vector<double> ks_axes;
  double threshold = 0.0;
  bool pass = false;
  std::vector<Histogram> histograms;  // one per axis
  std::size_t members_failed = 0;
  std::size_t members_unreliable = 0;
};

// Compares an empirical configuration against the Ψ†Ψ law of psi. Positions
// listed in `exclude` (failed members) are skipped.
EquivarianceReport compare_to_density(const std::vector<Point>& positions, const WaveFunction& psi,
                                      std::string experiment, std::uint64_t seed,
                                      const std::vector<std::uint8_t>& exclude = {});

struct EquivarianceSettings {
  SnapshotSource::Settings source{};
  IntegratorSettings integrator{};
  std::string experiment = "equivariance";
  unsigned threads = 0;
};

// Samples ρ₀ = |Ψ₀|², transports each sample to time t along the guidance
// flow and compares with |Ψ(·, t)|².
EquivarianceReport equivariance_check(const WaveFunction& psi0, const Potential& potential, double t,
                                      std::size_t n, std::uint64_t seed,
                                      const EquivarianceSettings& settings = {});

// Same, reusing an already evolved source (its final state is the target).
EquivarianceReport equivariance_check(const SnapshotSource& source, std::size_t n, std::uint64_t seed,
                                      const EquivarianceSettings& settings = {});

nlohmann::ordered_json to_json(const EquivarianceReport& report);
// Columns: axis, bin_lo, bin_hi, count, target_density.
void write_histogram_csv(std::ostream& os, const EquivarianceReport& report);

}  // namespace pilotwave
