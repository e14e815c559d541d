#include "pilotwave/equilibrium/born_sampler.hpp"

#include <algorithm>
#include <cmath>

#include "pilotwave/error.hpp"

namespace pilotwave {

BornSampler::BornSampler(const WaveFunction& psi, std::uint64_t seed)
    : grid_(psi.grid()), rng_(seed, streams::kBornSampling) {
  const std::vector<double> w = psi.density();
  double total = 0.0;
  for (double x : w) total += x;
  if (!(total > 0.0) || !std::isfinite(total)) throw InvalidArgument("Born sampler: zero-density field");

  if (grid_.dims() == 1) {
    cumulative_.resize(w.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) cumulative_[i] = (acc += w[i] / total);
    cumulative_.back() = 1.0;
    return;
  }

  // Vose's alias method.
  const std::size_t n = w.size();
  alias_prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  std::vector<std::size_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = w[i] / total * static_cast<double>(n);
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back(), l = large.back();
    small.pop_back();
    large.pop_back();
    alias_prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    (scaled[l] < 1.0 ? small : large).push_back(l);
  }
  for (std::size_t i : large) alias_prob_[i] = 1.0;
  for (std::size_t i : small) alias_prob_[i] = 1.0;  // round-off leftovers
}

std::size_t BornSampler::pick_node() {
  if (grid_.dims() == 1) {
    const double u = rng_.uniform();
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()), cumulative_.size() - 1);
  }
  const std::size_t i = rng_.below(alias_prob_.size());
  return rng_.uniform() < alias_prob_[i] ? i : alias_[i];
}

Point BornSampler::draw() {
  last_node_ = pick_node();
  Point p = grid_.position(last_node_);
  for (std::size_t a = 0; a < grid_.dims(); ++a) {
    const Axis& ax = grid_.axis(a);
    p[a] += (rng_.uniform() - 0.5) * ax.spacing();
    p[a] = std::clamp(p[a], ax.lo, ax.last());
  }
  return p;
}

std::vector<Point> BornSampler::draw(std::size_t n) {
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(draw());
  return out;
}

std::vector<Point> sample_born(const WaveFunction& psi, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidArgument("sample_born: n must be >= 1");
  BornSampler sampler(psi, seed);
  return sampler.draw(n);
}

}  // namespace pilotwave
