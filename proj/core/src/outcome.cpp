#include "pilotwave/experiments/outcome.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "pilotwave/guidance/trajectory_io.hpp"
#include "pilotwave/text.hpp"

namespace pilotwave {

void write_outcome_csv(std::ostream& os, const ExperimentOutcome& o) {
  const bool two = o.dims == 2;
  const bool label = !o.label_name.empty();
  const bool value = !o.value_name.empty();
  os << (two ? "id,x0,y0,x_t,y_t" : "id,x0,x_t");
  if (label) os << ',' << o.label_name;
  if (value) os << ',' << o.value_name;
  os << ",flag\n";
  for (std::size_t i = 0; i < o.size(); ++i) {
    os << i << ',' << format_double(o.initial[i][0]);
    if (two) os << ',' << format_double(o.initial[i][1]);
    os << ',' << format_double(o.final[i][0]);
    if (two) os << ',' << format_double(o.final[i][1]);
    if (label) os << ',' << o.labels[i];
    if (value) os << ',' << format_double(o.values[i]);
    os << ',' << static_cast<int>(o.status[i]) << '\n';
  }
}

void write_outcome_files(const std::filesystem::path& dir, const ExperimentOutcome& o) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream csv(dir / "outcome.csv");
    write_outcome_csv(csv, o);
  }
  {
    std::ofstream js(dir / "summary.json");
    js << o.summary.dump(2) << '\n';
  }
  if (o.trajectories.empty()) return;
  const auto tdir = dir / "trajectories";
  std::filesystem::create_directories(tdir);
  for (std::size_t i = 0; i < o.trajectories.size() && i < kMaxPlotTrajectories; ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "traj_%03zu.csv", i);
    std::ofstream csv(tdir / name);
    write_trajectory_csv(csv, o.trajectories[i], o.dims);
  }
}

}  // namespace pilotwave
