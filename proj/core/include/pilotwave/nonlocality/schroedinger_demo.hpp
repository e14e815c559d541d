#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pilotwave/nonlocality/entangled.hpp"

namespace pilotwave {

inline constexpr const char* kLocalityRefuted = "locality refuted under stated premises";

struct DemoStep {
  std::string step;
  std::string kind;  // "premise" or "result"
  std::string statement;
  nlohmann::ordered_json evidence;
  bool pass = false;
};

struct DemoRecords {
  std::string operator_name;
  std::vector<MeasurementRecord> records;
};

struct DemoReport {
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::vector<DemoStep> steps;
  std::vector<DemoRecords> records;
  std::string conclusion;
  bool pass() const noexcept;
};

// Raised when a step fails; carries the report up to and including it.
class DemoAborted : public std::runtime_error {
 public:
  DemoAborted(std::string step, DemoReport partial)
      : std::runtime_error("schroedinger demo aborted at step " + step), step_(std::move(step)), report_(std::move(partial)) {}
  const std::string& step() const noexcept { return step_; }
  const DemoReport& report() const noexcept { return report_; }

 private:
  std::string step_;
  DemoReport report_;
};

// Builds a seeded random maximally entangled state of dimension N (a
// multiple of 4, at least 4), lifts the Mermin family to factor 1 as
// M ⊗ I_{N/4}, checks sampled perfect correlation for each correspondent,
// then composes the value-map premise with the Mermin contradiction.
DemoReport schroedinger_theorem_demo(std::size_t n, std::uint64_t seed, std::size_t trials = 1000);

nlohmann::ordered_json to_json(const DemoReport& r);
void write_demo_records_csv(std::ostream& out, const DemoReport& r);

}  // namespace pilotwave
