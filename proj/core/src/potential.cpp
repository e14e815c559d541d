#include "pilotwave/numerics/potential.hpp"

#include <algorithm>
#include <cmath>

#include "pilotwave/error.hpp"

namespace pilotwave {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

bool Potential::time_dependent() const noexcept {
  return std::holds_alternative<SternGerlachPotential>(kind_);
}

bool Potential::free_at(double t) const noexcept {
  return std::visit(overloaded{
                        [](const FreePotential&) { return true; },
                        [t](const SternGerlachPotential& sg) { return !(t >= 0.0 && t <= sg.window); },
                        [](const auto&) { return false; },
                    },
                    kind_);
}

std::size_t Potential::components() const noexcept {
  return std::visit(overloaded{
                        [](const SternGerlachPotential&) -> std::size_t { return 2; },
                        [](const TabulatedPotential& tab) -> std::size_t {
                          return tab.values.size() == 2 ? 2 : 1;
                        },
                        [](const auto&) -> std::size_t { return 1; },
                    },
                    kind_);
}

void Potential::check_compatible(const Grid& grid, std::size_t components) const {
  std::visit(overloaded{
                 [](const FreePotential&) {},
                 [](const HarmonicPotential& h) {
                   if (!std::isfinite(h.omega)) throw InvalidArgument("harmonic omega not finite");
                 },
                 [&](const BoxPotential& b) {
                   if (grid.dims() != 1) throw InvalidArgument("box potential is one-dimensional");
                   if (!(b.right > b.left)) throw InvalidArgument("box potential: right <= left");
                 },
                 [&](const SternGerlachPotential& sg) {
                   if (grid.dims() != 1) throw InvalidArgument("Stern-Gerlach potential is one-dimensional");
                   if (components != 2) throw InvalidArgument("Stern-Gerlach potential needs a spinor field");
                   if (!(sg.window >= 0.0)) throw InvalidArgument("Stern-Gerlach window must be >= 0");
                 },
                 [&](const TabulatedPotential& tab) {
                   if (tab.values.empty() || tab.values.size() > 2) {
                     throw InvalidArgument("tabulated potential needs 1 or 2 tables");
                   }
                   if (tab.values.size() == 2 && components != 2) {
                     throw InvalidArgument("per-component potential needs a spinor field");
                   }
                   for (const auto& v : tab.values) {
                     if (v.size() != grid.size()) {
                       throw InvalidArgument("tabulated potential size does not match grid");
                     }
                     for (double x : v) {
                       if (!std::isfinite(x)) throw InvalidArgument("tabulated potential not finite");
                     }
                   }
                 },
             },
             kind_);
}

void Potential::evaluate(const Grid& grid, double t, std::size_t component,
                         std::span<double> out) const {
  if (out.size() != grid.size()) throw InvalidArgument("potential output size mismatch");
  std::visit(overloaded{
                 [&](const FreePotential&) { std::fill(out.begin(), out.end(), 0.0); },
                 [&](const HarmonicPotential& h) {
                   const double k = 0.5 * h.omega * h.omega;
                   for (std::size_t i = 0; i < out.size(); ++i) {
                     const Point p = grid.position(i);
                     out[i] = k * (p[0] * p[0] + p[1] * p[1]);
                   }
                 },
                 [&](const BoxPotential& b) {
                   for (std::size_t i = 0; i < out.size(); ++i) {
                     const double x = grid.position(i)[0];
                     out[i] = (x >= b.left && x <= b.right) ? 0.0 : b.height;
                   }
                 },
                 [&](const SternGerlachPotential& sg) {
                   if (!(t >= 0.0 && t <= sg.window)) {
                     std::fill(out.begin(), out.end(), 0.0);
                     return;
                   }
                   const double s = static_cast<double>(static_cast<int>(sg.orientation));
                   const double sz = component == 0 ? 1.0 : -1.0;
                   for (std::size_t i = 0; i < out.size(); ++i) {
                     out[i] = -s * sg.coupling * grid.position(i)[0] * sz;
                   }
                 },
                 [&](const TabulatedPotential& tab) {
                   const auto& v = tab.values.size() == 2 ? tab.values.at(component) : tab.values.at(0);
                   std::copy(v.begin(), v.end(), out.begin());
                 },
             },
             kind_);
}

std::vector<double> Potential::evaluate(const Grid& grid, double t, std::size_t component) const {
  std::vector<double> out(grid.size());
  evaluate(grid, t, component, out);
  return out;
}

double Potential::max_abs(const Grid& grid) const {
  // The SG coupling is evaluated inside its window, where it is largest.
  const double t = 0.0;
  double m = 0.0;
  std::vector<double> buf(grid.size());
  for (std::size_t c = 0; c < components(); ++c) {
    evaluate(grid, t, c, buf);
    for (double v : buf) m = std::max(m, std::abs(v));
  }
  return m;
}

}  // namespace pilotwave
