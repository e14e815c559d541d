#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pilotwave/error.hpp"
#include "pilotwave/guidance/wave_source.hpp"

namespace pilotwave {

struct IntegratorSettings {
  // Local position error per accepted step, estimated by step doubling.
  double tol = 1e-6;
  double dt_min = 1e-6;
  // 0 selects the source resolution.
  double dt_max = 0.0;
  // Spacing of recorded positions; 0 selects the source resolution.
  double output_interval = 0.0;
  // A step is rejected when |Δv| exceeds this fraction of |v| across it.
  double max_relative_dv = 0.5;
  // More dt_min events than this flag the trajectory as unreliable.
  std::size_t unreliable_after = 100;
};

struct Provenance {
  std::uint64_t seed = 0;
  Point initial{0.0, 0.0};
  std::string experiment;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Point> positions;
  // Per row: 1 if a step was forced through at dt_min since the previous row.
  std::vector<std::uint8_t> flags;
  Provenance provenance;

  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::size_t dt_min_events = 0;
  bool near_node_unreliable = false;

  const Point& final_position() const { return positions.back(); }
};

class LeftGrid : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// Integrates dX/dt = v(X, t) from t_start to t_final with adaptive RK4.
// With record_path = false only the end points are kept.
Trajectory integrate_trajectory(const WaveSource& source, const Point& x0, double t_final,
                                const IntegratorSettings& settings = {}, Provenance provenance = {},
                                bool record_path = true, double t_start = 0.0);

struct Ensemble {
  std::vector<Point> initial;
  std::vector<Point> current;
  double time = 0.0;

  static Ensemble from_positions(std::vector<Point> positions, double time = 0.0);
  std::size_t size() const noexcept { return initial.size(); }
};

enum class MemberStatus : std::uint8_t { kOk = 0, kUnreliable = 1, kFailed = 2 };

struct MemberFailure {
  std::size_t index = 0;
  std::string reason;
};

struct EnsembleOptions {
  std::uint64_t seed = 0;
  std::string experiment;
  // Full paths are kept for the first `record_paths` members.
  std::size_t record_paths = 0;
  // 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;
  double max_failure_fraction = 0.01;
};

struct EnsembleRun {
  Ensemble ensemble;
  std::vector<MemberStatus> status;
  std::vector<Trajectory> paths;
  std::vector<MemberFailure> failures;
  std::size_t unreliable = 0;
  std::size_t dt_min_events = 0;
};

class EnsembleFailure : public NumericalError {
 public:
  EnsembleFailure(const std::string& what, std::vector<MemberFailure> failures)
      : NumericalError(what), failures_(std::move(failures)) {}
  const std::vector<MemberFailure>& failures() const noexcept { return failures_; }

 private:
  std::vector<MemberFailure> failures_;
};

// Integrates every member from ens.time to t_final. Failed members keep their
// last valid position and are reported; more than max_failure_fraction of
// failures throws EnsembleFailure. Output order matches input order.
EnsembleRun evolve_ensemble(const Ensemble& ens, const WaveSource& source, double t_final,
                            const IntegratorSettings& settings = {},
                            const EnsembleOptions& options = {});

}  // namespace pilotwave
