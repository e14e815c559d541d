#include "pilotwave/numerics/initializers.hpp"

#include <cmath>
#include <numbers>
#include <set>

#include "pilotwave/error.hpp"

namespace pilotwave {
namespace {

constexpr double kSupportWidths = 6.0;

Complex gaussian(double x, double c, double sigma, double k) {
  const double u = x - c;
  return std::exp(Complex(-u * u / (4.0 * sigma * sigma), k * u));
}

void require_support(const Axis& axis, double lo, double hi, const char* what) {
  if (lo < axis.lo || hi > axis.hi) {
    throw SupportEscapesGrid(std::string(what) + ": support [" + std::to_string(lo) + ", " +
                             std::to_string(hi) + "] escapes grid axis [" +
                             std::to_string(axis.lo) + ", " + std::to_string(axis.hi) + "]");
  }
}

void require_positive(double v, const char* what) {
  if (!(v > 0.0)) throw InvalidArgument(std::string(what) + " must be positive");
}

WaveFunction build(const Grid& grid, const GaussianPacket& g) {
  for (std::size_t a = 0; a < grid.dims(); ++a) {
    require_positive(g.width[a], "gaussian width");
    require_support(grid.axis(a), g.center[a] - kSupportWidths * g.width[a],
                    g.center[a] + kSupportWidths * g.width[a], "gaussian");
  }
  WaveFunction psi(grid, 1);
  auto amp = psi.component(0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Point p = grid.position(i);
    Complex v = gaussian(p[0], g.center[0], g.width[0], g.momentum[0]);
    if (grid.dims() == 2) v *= gaussian(p[1], g.center[1], g.width[1], g.momentum[1]);
    amp[i] = v;
  }
  return psi;
}

WaveFunction build(const Grid& grid, const TwoGaussian& g) {
  require_positive(g.width, "two_gaussian width");
  require_positive(g.half_separation, "two_gaussian half_separation");
  const double reach = g.half_separation + kSupportWidths * g.width;
  WaveFunction psi(grid, 1);
  auto amp = psi.component(0);
  if (grid.dims() == 1) {
    require_support(grid.axis(0), -reach, reach, "two_gaussian");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double x = grid.position(i)[0];
      amp[i] = (gaussian(x, g.half_separation, g.width, 0.0) +
                gaussian(x, -g.half_separation, g.width, 0.0)) *
               std::exp(Complex(0.0, g.momentum * x));
    }
  } else {
    require_positive(g.longitudinal_width, "two_gaussian longitudinal_width");
    require_support(grid.axis(0), -kSupportWidths * g.longitudinal_width,
                    kSupportWidths * g.longitudinal_width, "two_gaussian");
    require_support(grid.axis(1), -reach, reach, "two_gaussian");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const Point p = grid.position(i);
      amp[i] = gaussian(p[0], 0.0, g.longitudinal_width, g.momentum) *
               (gaussian(p[1], g.half_separation, g.width, 0.0) +
                gaussian(p[1], -g.half_separation, g.width, 0.0));
    }
  }
  return psi;
}

WaveFunction build(const Grid& grid, const BoxEigenstate& b) {
  if (grid.dims() != 1) throw InvalidArgument("box_eigenstate is one-dimensional");
  if (!(b.right > b.left)) throw InvalidArgument("box_eigenstate: right wall must exceed left wall");
  if (b.level < 1) throw InvalidArgument("box_eigenstate: level must be >= 1");
  require_support(grid.axis(0), b.left, b.right, "box_eigenstate");
  const double length = b.right - b.left;
  const double amplitude = std::sqrt(2.0 / length);
  WaveFunction psi(grid, 1);
  auto amp = psi.component(0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid.position(i)[0];
    if (x > b.left && x < b.right) {
      amp[i] = amplitude * std::sin(b.level * std::numbers::pi * (x - b.left) / length);
    }
  }
  return psi;
}

WaveFunction build(const Grid& grid, const SpinorGaussian& s) {
  if (grid.dims() != 1) throw InvalidArgument("spinor_gaussian is one-dimensional");
  require_positive(s.width, "spinor_gaussian width");
  if (std::norm(s.up) + std::norm(s.down) == 0.0) {
    throw InvalidArgument("spinor_gaussian: spinor weights are both zero");
  }
  require_support(grid.axis(0), s.center - kSupportWidths * s.width,
                  s.center + kSupportWidths * s.width, "spinor_gaussian");
  WaveFunction psi(grid, 2);
  auto up = psi.component(0);
  auto down = psi.component(1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex g = gaussian(grid.position(i)[0], s.center, s.width, s.momentum);
    up[i] = s.up * g;
    down[i] = s.down * g;
  }
  return psi;
}

double take(std::map<std::string, double>& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  const double v = it->second;
  params.erase(it);
  return v;
}

}  // namespace

WaveFunction make_wavefunction(const Grid& grid, const Initializer& init) {
  WaveFunction psi = std::visit([&](const auto& i) { return build(grid, i); }, init);
  if (!(psi.norm() > 0.0)) throw NumericalError("initializer produced a zero field on this grid");
  psi.normalize();
  return psi;
}

Initializer make_initializer(std::string_view name, const std::map<std::string, double>& given) {
  auto params = given;
  Initializer init;
  if (name == "gaussian") {
    GaussianPacket g;
    g.center = {take(params, "center", 0.0), take(params, "center_y", 0.0)};
    const double w = take(params, "width", 1.0);
    g.width = {w, take(params, "width_y", w)};
    g.momentum = {take(params, "momentum", 0.0), take(params, "momentum_y", 0.0)};
    init = g;
  } else if (name == "two_gaussian") {
    TwoGaussian g;
    g.half_separation = take(params, "half_separation", g.half_separation);
    g.width = take(params, "width", g.width);
    g.momentum = take(params, "momentum", g.momentum);
    g.longitudinal_width = take(params, "longitudinal_width", g.longitudinal_width);
    init = g;
  } else if (name == "box_eigenstate") {
    BoxEigenstate b;
    b.left = take(params, "left", b.left);
    b.right = take(params, "right", b.right);
    b.level = static_cast<int>(take(params, "level", 1.0));
    init = b;
  } else if (name == "spinor_gaussian") {
    SpinorGaussian s;
    s.up = {take(params, "up_re", 1.0), take(params, "up_im", 0.0)};
    s.down = {take(params, "down_re", 0.0), take(params, "down_im", 0.0)};
    s.center = take(params, "center", s.center);
    s.width = take(params, "width", s.width);
    s.momentum = take(params, "momentum", s.momentum);
    init = s;
  } else {
    throw InvalidArgument("unknown initializer '" + std::string(name) + "'");
  }
  if (!params.empty()) {
    throw InvalidArgument("unknown parameter '" + params.begin()->first + "' for initializer '" +
                          std::string(name) + "'");
  }
  return init;
}

}  // namespace pilotwave
