#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pilotwave/guidance/trajectory.hpp"

namespace pilotwave {

inline constexpr std::size_t kMaxPlotTrajectories = 200;

// Raw per-member results of one experiment plus its summary. Labels and
// values are named per experiment (slit/-, spin/-, -/v_meas); an empty name
// drops the column from the CSV.
struct ExperimentOutcome {
  std::string experiment;
  std::size_t dims = 1;
  std::vector<Point> initial;
  std::vector<Point> final;
  std::string label_name;
  std::vector<int> labels;
  std::string value_name;
  std::vector<double> values;
  std::vector<MemberStatus> status;
  // At most kMaxPlotTrajectories full paths, for plotting.
  std::vector<Trajectory> trajectories;
  nlohmann::ordered_json summary;

  std::size_t size() const noexcept { return initial.size(); }
};

// Columns: id, x0[, y0], x_t[, y_t][, <label_name>][, <value_name>], flag.
void write_outcome_csv(std::ostream& os, const ExperimentOutcome& outcome);

// Writes outcome.csv, summary.json and trajectories/traj_NNN.csv under dir.
void write_outcome_files(const std::filesystem::path& dir, const ExperimentOutcome& outcome);

}  // namespace pilotwave
