#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pilotwave/numerics/wavefunction.hpp"
#include "pilotwave/rng.hpp"

namespace pilotwave {

// Draws from the grid-discretized density Ψ†Ψ: a node is chosen with
// probability proportional to its weight (inverse CDF in 1D, alias table in
// 2D), then the point is jittered uniformly within the node's cell and
// clamped to the node span of the grid.
class BornSampler {
 public:
  BornSampler(const WaveFunction& psi, std::uint64_t seed);

  Point draw();
  std::vector<Point> draw(std::size_t n);
  // Node index of the most recent draw.
  std::size_t last_node() const noexcept { return last_node_; }

 private:
  std::size_t pick_node();

  Grid grid_;
  Rng rng_;
  std::vector<double> cumulative_;  // 1D
  std::vector<double> alias_prob_;  // 2D
  std::vector<std::size_t> alias_;
  std::size_t last_node_ = 0;
};

// n i.i.d. draws; (Ψ, n, seed) fixes the result exactly.
std::vector<Point> sample_born(const WaveFunction& psi, std::size_t n, std::uint64_t seed);

}  // namespace pilotwave
