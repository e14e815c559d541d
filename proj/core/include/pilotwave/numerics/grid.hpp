#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace pilotwave {

// A point in the (at most two-dimensional) configuration space. In 1D only
// the first coordinate is meaningful and the second is kept at zero.
using Point = std::array<double, 2>;

// One periodic axis: `points` nodes at lo + i * spacing, i = 0 .. points-1.
struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  std::size_t points = 0;

  double length() const noexcept { return hi - lo; }
  double spacing() const noexcept { return (hi - lo) / static_cast<double>(points); }
  double node(std::size_t i) const noexcept { return lo + static_cast<double>(i) * spacing(); }
  // Last node; the interval (last(), hi) wraps around to lo.
  double last() const noexcept { return node(points - 1); }

  friend bool operator==(const Axis&, const Axis&) = default;
};

// Uniform periodic grid in one or two dimensions. Node storage is row-major
// with the first axis slowest: index = ix * ny + iy.
class Grid {
 public:
  static Grid line(Axis x);
  static Grid plane(Axis x, Axis y);

  std::size_t dims() const noexcept { return dims_; }
  const Axis& axis(std::size_t a) const { return axes_.at(a); }
  std::size_t size() const noexcept { return size_; }
  std::size_t points(std::size_t a) const { return axes_.at(a).points; }
  double cell_volume() const noexcept;

  std::size_t index(std::size_t ix, std::size_t iy = 0) const noexcept {
    return dims_ == 1 ? ix : ix * axes_[1].points + iy;
  }
  Point position(std::size_t node) const noexcept;

  // Inside the closed box spanned by the first and last nodes of every axis.
  bool contains(const Point& p) const noexcept;

  // Node coordinates along one axis.
  std::vector<double> coordinates(std::size_t a) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  Grid(std::size_t dims, std::array<Axis, 2> axes);

  std::size_t dims_ = 1;
  std::array<Axis, 2> axes_{};
  std::size_t size_ = 0;
};

}  // namespace pilotwave
