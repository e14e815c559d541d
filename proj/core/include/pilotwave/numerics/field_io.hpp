#pragma once

#include <filesystem>
#include <iosfwd>

#include <nlohmann/json.hpp>

#include "pilotwave/numerics/wavefunction.hpp"

namespace pilotwave {

// Snapshot text format. CSV columns: x[, y], re_c0, im_c0[, re_c1, im_c1];
// the JSON header carries the grid spec, time, component count and norm.
// Values are written in shortest round-trip form, so a write/read cycle is
// exact.
nlohmann::ordered_json grid_to_json(const Grid& grid);
Grid grid_from_json(const nlohmann::json& j);

nlohmann::ordered_json field_header(const WaveFunction& psi);
void write_field_csv(std::ostream& os, const WaveFunction& psi);
WaveFunction read_field(std::istream& csv, const nlohmann::json& header);

// Writes <stem>.csv and <stem>.json.
void save_field(const std::filesystem::path& stem, const WaveFunction& psi);
WaveFunction load_field(const std::filesystem::path& stem);

}  // namespace pilotwave
