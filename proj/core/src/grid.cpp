#include "pilotwave/numerics/grid.hpp"

#include <string>

#include "pilotwave/error.hpp"

namespace pilotwave {
namespace {

void validate(const Axis& a, const char* name) {
  if (!(a.hi > a.lo)) {
    throw InvalidArgument(std::string("grid axis ") + name + ": hi must exceed lo");
  }
  if (a.points < 8) {
    throw InvalidArgument(std::string("grid axis ") + name + ": at least 8 points required");
  }
  if (!(a.spacing() > 0.0)) {
    throw InvalidArgument(std::string("grid axis ") + name + ": spacing underflows");
  }
}

}  // namespace

Grid::Grid(std::size_t dims, std::array<Axis, 2> axes) : dims_(dims), axes_(axes) {
  validate(axes_[0], "x");
  size_ = axes_[0].points;
  if (dims_ == 2) {
    validate(axes_[1], "y");
    size_ *= axes_[1].points;
  }
}

Grid Grid::line(Axis x) { return Grid(1, {x, Axis{}}); }

Grid Grid::plane(Axis x, Axis y) { return Grid(2, {x, y}); }

double Grid::cell_volume() const noexcept {
  return dims_ == 1 ? axes_[0].spacing() : axes_[0].spacing() * axes_[1].spacing();
}

Point Grid::position(std::size_t node) const noexcept {
  if (dims_ == 1) return {axes_[0].node(node), 0.0};
  const std::size_t ny = axes_[1].points;
  return {axes_[0].node(node / ny), axes_[1].node(node % ny)};
}

bool Grid::contains(const Point& p) const noexcept {
  for (std::size_t a = 0; a < dims_; ++a) {
    if (!(p[a] >= axes_[a].lo && p[a] <= axes_[a].last())) return false;
  }
  return true;
}

std::vector<double> Grid::coordinates(std::size_t a) const {
  const Axis& ax = axis(a);
  std::vector<double> out(ax.points);
  for (std::size_t i = 0; i < ax.points; ++i) out[i] = ax.node(i);
  return out;
}

}  // namespace pilotwave
