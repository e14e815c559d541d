#pragma once

#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "pilotwave/guidance/trajectory.hpp"

namespace pilotwave {

// Trajectory CSV: t, x[, y], flag.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::size_t dims);
Trajectory read_trajectory_csv(std::istream& is);

// Ensemble snapshot CSV: id, x0[, y0], x_t[, y_t], flag. The flag is the
// member status (0 ok, 1 near-node unreliable, 2 failed).
void write_ensemble_csv(std::ostream& os, const EnsembleRun& run, std::size_t dims);

struct EnsembleRow {
  std::size_t id = 0;
  Point initial{0.0, 0.0};
  Point final{0.0, 0.0};
  int flag = 0;
};
std::vector<EnsembleRow> read_ensemble_csv(std::istream& is);

// Run stamp written next to trajectory outputs.
nlohmann::ordered_json run_sidecar(std::uint64_t seed, const IntegratorSettings& settings,
                                   const Grid& grid, const nlohmann::ordered_json& solver);

}  // namespace pilotwave
