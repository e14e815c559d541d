#include "pilotwave/guidance/trajectory_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "pilotwave/numerics/field_io.hpp"
#include "pilotwave/text.hpp"

namespace pilotwave {

namespace {

std::vector<double> parse_row(const std::string& line, std::size_t columns, const char* what) {
  const auto cells = split(line, ',');
  if (cells.size() != columns) throw InvalidArgument(std::string(what) + ": wrong column count");
  std::vector<double> out(columns);
  for (std::size_t i = 0; i < columns; ++i)
    if (!parse_double(cells[i], out[i])) throw InvalidArgument(std::string(what) + ": bad number");
  return out;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::size_t dims) {
  os << (dims == 2 ? "t,x,y,flag\n" : "t,x,flag\n");
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    os << format_double(traj.times[i]) << ',' << format_double(traj.positions[i][0]);
    if (dims == 2) os << ',' << format_double(traj.positions[i][1]);
    os << ',' << static_cast<int>(traj.flags[i]) << '\n';
  }
}

Trajectory read_trajectory_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("trajectory CSV is empty");
  const std::size_t columns = split(line, ',').size();
  if (columns != 3 && columns != 4) throw InvalidArgument("trajectory CSV: unexpected header");
  Trajectory traj;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto v = parse_row(line, columns, "trajectory CSV");
    traj.times.push_back(v[0]);
    traj.positions.push_back({v[1], columns == 4 ? v[2] : 0.0});
    traj.flags.push_back(static_cast<std::uint8_t>(v.back()));
  }
  if (!traj.positions.empty()) traj.provenance.initial = traj.positions.front();
  return traj;
}

void write_ensemble_csv(std::ostream& os, const EnsembleRun& run, std::size_t dims) {
  os << (dims == 2 ? "id,x0,y0,x_t,y_t,flag\n" : "id,x0,x_t,flag\n");
  const Ensemble& e = run.ensemble;
  for (std::size_t i = 0; i < e.size(); ++i) {
    os << i << ',' << format_double(e.initial[i][0]);
    if (dims == 2) os << ',' << format_double(e.initial[i][1]);
    os << ',' << format_double(e.current[i][0]);
    if (dims == 2) os << ',' << format_double(e.current[i][1]);
    os << ',' << static_cast<int>(run.status[i]) << '\n';
  }
}

std::vector<EnsembleRow> read_ensemble_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw InvalidArgument("ensemble CSV is empty");
  const std::size_t columns = split(line, ',').size();
  if (columns != 4 && columns != 6) throw InvalidArgument("ensemble CSV: unexpected header");
  const bool two = columns == 6;
  std::vector<EnsembleRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto v = parse_row(line, columns, "ensemble CSV");
    EnsembleRow r;
    r.id = static_cast<std::size_t>(v[0]);
    r.initial = {v[1], two ? v[2] : 0.0};
    r.final = two ? Point{v[3], v[4]} : Point{v[2], 0.0};
    r.flag = static_cast<int>(v.back());
    rows.push_back(r);
  }
  return rows;
}

nlohmann::ordered_json run_sidecar(std::uint64_t seed, const IntegratorSettings& s,
                                   const Grid& grid, const nlohmann::ordered_json& solver) {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  j["tolerances"] = {{"tol", s.tol},
                     {"dt_min", s.dt_min},
                     {"dt_max", s.dt_max},
                     {"output_interval", s.output_interval},
                     {"max_relative_dv", s.max_relative_dv},
                     {"unreliable_after", s.unreliable_after}};
  j["grid"] = grid_to_json(grid);
  j["solver"] = solver;
  return j;
}

}  // namespace pilotwave
