#include "pilotwave/guidance/velocity.hpp"

#include <algorithm>
#include <cmath>

#include "pilotwave/numerics/fourier.hpp"

namespace pilotwave {

std::size_t VelocityField::masked_count() const noexcept {
  return static_cast<std::size_t>(std::count(masked.begin(), masked.end(), std::uint8_t{1}));
}

double VelocityField::max_speed() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < masked.size(); ++i) {
    if (masked[i]) continue;
    double s2 = 0.0;
    for (std::size_t a = 0; a < grid.dims(); ++a) s2 += values[a][i] * values[a][i];
    m = std::max(m, std::sqrt(s2));
  }
  return m;
}

VelocityField velocity_field(const WaveFunction& psi, double floor_fraction) {
  const Grid& g = psi.grid();
  const std::size_t n = g.size();
  const Gradient grad = gradient(psi);
  const std::vector<double> rho = psi.density();

  VelocityField field;
  field.grid = g;
  field.time = psi.time();
  field.node_floor = floor_fraction * *std::max_element(rho.begin(), rho.end());
  field.masked.assign(n, 0);
  for (std::size_t a = 0; a < g.dims(); ++a) field.values[a].assign(n, 0.0);

  std::size_t live = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(rho[i] > field.node_floor)) {
      field.masked[i] = 1;
      continue;
    }
    ++live;
    for (std::size_t a = 0; a < g.dims(); ++a) {
      double current = 0.0;
      for (std::size_t c = 0; c < psi.components(); ++c) {
        const Complex amp = psi.component(c)[i];
        const Complex d = grad.axis[a][c * n + i];
        current += amp.real() * d.imag() - amp.imag() * d.real();  // Im(conj(Ψ)∂Ψ)
      }
      field.values[a][i] = current / rho[i];
    }
  }
  if (live == 0) throw DegenerateField("every node of the velocity field is masked");
  return field;
}

namespace {

// Fractional cell position along one axis; false if x is outside the span.
bool locate(const Axis& ax, double x, std::size_t& i, double& u) {
  if (!(x >= ax.lo && x <= ax.last())) return false;
  const double s = (x - ax.lo) / ax.spacing();
  auto fi = static_cast<std::size_t>(s);
  if (fi >= ax.points - 1) fi = ax.points - 2;
  i = fi;
  u = s - static_cast<double>(fi);
  return true;
}

}  // namespace

VelocitySample interpolate(const VelocityField& f, const Point& x) {
  VelocitySample out;
  const Grid& g = f.grid;
  if (g.dims() == 1) {
    std::size_t i;
    double u;
    if (!locate(g.axis(0), x[0], i, u)) {
      out.outside = true;
      return out;
    }
    const auto& v = f.values[0];
    const auto& m = f.masked;
    if (m[i] || m[i + 1]) {
      out.masked = u < 0.5 ? m[i] : m[i + 1];
      out.v[0] = m[i] ? (m[i + 1] ? 0.0 : v[i + 1]) : v[i];
      return out;
    }
    const std::size_t n = g.points(0);
    if (i == 0 || i + 2 >= n || m[i - 1] || m[i + 2]) {
      out.v[0] = (1.0 - u) * v[i] + u * v[i + 1];
      return out;
    }
    const double wm = -u * (u - 1.0) * (u - 2.0) / 6.0;
    const double w0 = (u + 1.0) * (u - 1.0) * (u - 2.0) / 2.0;
    const double w1 = -(u + 1.0) * u * (u - 2.0) / 2.0;
    const double w2 = (u + 1.0) * u * (u - 1.0) / 6.0;
    out.v[0] = wm * v[i - 1] + w0 * v[i] + w1 * v[i + 1] + w2 * v[i + 2];
    return out;
  }

  std::size_t i, j;
  double u, w;
  if (!locate(g.axis(0), x[0], i, u) || !locate(g.axis(1), x[1], j, w)) {
    out.outside = true;
    return out;
  }
  const std::size_t c[4] = {g.index(i, j), g.index(i + 1, j), g.index(i, j + 1), g.index(i + 1, j + 1)};
  const double wt[4] = {(1 - u) * (1 - w), u * (1 - w), (1 - u) * w, u * w};
  std::size_t live = 0;
  bool partial = false;
  Point fallback{0.0, 0.0};
  const int nearest = (u < 0.5 ? 0 : 1) + (w < 0.5 ? 0 : 2);
  out.masked = f.masked[c[nearest]] != 0;
  for (int k = 0; k < 4; ++k) {
    if (f.masked[c[k]]) {
      partial = true;
      continue;
    }
    ++live;
    for (std::size_t a = 0; a < 2; ++a) {
      out.v[a] += wt[k] * f.values[a][c[k]];
      fallback[a] += f.values[a][c[k]];
    }
  }
  if (partial) {
    for (std::size_t a = 0; a < 2; ++a) out.v[a] = live ? fallback[a] / static_cast<double>(live) : 0.0;
  }
  return out;
}

}  // namespace pilotwave
