#include "pilotwave/numerics/field_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "pilotwave/error.hpp"
#include "pilotwave/text.hpp"

namespace pilotwave {

nlohmann::ordered_json grid_to_json(const Grid& grid) {
  nlohmann::ordered_json j;
  j["dims"] = grid.dims();
  auto axes = nlohmann::ordered_json::array();
  for (std::size_t a = 0; a < grid.dims(); ++a) {
    const Axis& ax = grid.axis(a);
    axes.push_back({{"lo", ax.lo}, {"hi", ax.hi}, {"points", ax.points}});
  }
  j["axes"] = axes;
  return j;
}

Grid grid_from_json(const nlohmann::json& j) {
  try {
    const auto dims = j.at("dims").get<std::size_t>();
    const auto& axes = j.at("axes");
    auto axis = [&](std::size_t a) {
      return Axis{axes.at(a).at("lo").get<double>(), axes.at(a).at("hi").get<double>(),
                  axes.at(a).at("points").get<std::size_t>()};
    };
    if (dims == 1) return Grid::line(axis(0));
    if (dims == 2) return Grid::plane(axis(0), axis(1));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed grid spec: ") + e.what());
  }
  throw InvalidArgument("grid dims must be 1 or 2");
}

nlohmann::ordered_json field_header(const WaveFunction& psi) {
  nlohmann::ordered_json j;
  j["grid"] = grid_to_json(psi.grid());
  j["components"] = psi.components();
  j["time"] = psi.time();
  j["norm"] = psi.norm();
  return j;
}

void write_field_csv(std::ostream& os, const WaveFunction& psi) {
  const Grid& g = psi.grid();
  os << "x";
  if (g.dims() == 2) os << ",y";
  for (std::size_t c = 0; c < psi.components(); ++c) os << ",re_c" << c << ",im_c" << c;
  os << '\n';
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point p = g.position(i);
    os << format_double(p[0]);
    if (g.dims() == 2) os << ',' << format_double(p[1]);
    for (std::size_t c = 0; c < psi.components(); ++c) {
      const Complex a = psi.component(c)[i];
      os << ',' << format_double(a.real()) << ',' << format_double(a.imag());
    }
    os << '\n';
  }
}

WaveFunction read_field(std::istream& csv, const nlohmann::json& header) {
  const Grid grid = grid_from_json(header.at("grid"));
  const auto components = header.at("components").get<std::size_t>();
  WaveFunction psi(grid, components, header.at("time").get<double>());

  const std::size_t coords = grid.dims();
  const std::size_t columns = coords + 2 * components;
  std::string line;
  if (!std::getline(csv, line)) throw InvalidArgument("field CSV is empty");
  if (split(line, ',').size() != columns) throw InvalidArgument("field CSV header has wrong column count");

  std::size_t node = 0;
  while (std::getline(csv, line)) {
    if (line.empty()) continue;
    if (node >= grid.size()) throw InvalidArgument("field CSV has more rows than grid nodes");
    const auto cells = split(line, ',');
    if (cells.size() != columns) {
      throw InvalidArgument("field CSV row " + std::to_string(node + 2) + " has wrong column count");
    }
    double v[6];
    for (std::size_t k = 0; k < columns; ++k) {
      if (!parse_double(cells[k], v[k])) {
        throw InvalidArgument("field CSV row " + std::to_string(node + 2) + ": bad number");
      }
    }
    for (std::size_t c = 0; c < components; ++c) {
      psi.component(c)[node] = Complex(v[coords + 2 * c], v[coords + 2 * c + 1]);
    }
    ++node;
  }
  if (node != grid.size()) throw InvalidArgument("field CSV has fewer rows than grid nodes");
  return psi;
}

void save_field(const std::filesystem::path& stem, const WaveFunction& psi) {
  std::ofstream csv(stem.string() + ".csv");
  std::ofstream js(stem.string() + ".json");
  if (!csv || !js) throw InvalidArgument("cannot write field files at " + stem.string());
  write_field_csv(csv, psi);
  js << field_header(psi).dump(2) << '\n';
}

WaveFunction load_field(const std::filesystem::path& stem) {
  std::ifstream csv(stem.string() + ".csv");
  std::ifstream js(stem.string() + ".json");
  if (!csv || !js) throw InvalidArgument("cannot read field files at " + stem.string());
  nlohmann::json header;
  try {
    js >> header;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed field header: ") + e.what());
  }
  return read_field(csv, header);
}

}  // namespace pilotwave
