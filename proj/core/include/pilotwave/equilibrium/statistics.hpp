#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "pilotwave/numerics/grid.hpp"
#include "pilotwave/numerics/wavefunction.hpp"

namespace pilotwave {

// One-sample Kolmogorov-Smirnov distance sup|F_n − F|. `samples` need not be
// sorted.
double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf);

// Critical value of the one-sample KS test at the 1% level, large-n form.
inline double ks_critical_1pct(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

// CDF of the piecewise-constant density that spreads each node's weight
// uniformly over its cell [x_i − dx/2, x_i + dx/2]. This is the exact law of
// the Born sampler's jittered draws.
class GridCdf {
 public:
  GridCdf(const Axis& axis, std::span<const double> weights);

  double operator()(double x) const;
  double lower() const noexcept { return first_edge_; }
  double upper() const noexcept { return first_edge_ + dx_ * static_cast<double>(cumulative_.size() - 1); }
  const Axis& axis() const noexcept { return axis_; }

 private:
  Axis axis_;
  double first_edge_;
  double dx_;
  std::vector<double> cumulative_;  // cumulative_[i] = mass left of edge i
};

// Node weights of Ψ†Ψ summed over the other axis (2D) or as is (1D).
std::vector<double> marginal_weights(const WaveFunction& psi, std::size_t axis);

struct Histogram {
  std::vector<double> edges;
  std::vector<std::size_t> counts;
  // Target probability density averaged over each bin.
  std::vector<double> target_density;
};

inline constexpr std::size_t kHistogramBins = 200;

// Bins `samples` on [lo, hi); out-of-range samples are not counted.
Histogram make_histogram(std::span<const double> samples, double lo, double hi,
                         std::size_t bins = kHistogramBins, const GridCdf* target = nullptr);

// Interval holding the nodes whose weight exceeds `fraction` of the largest.
std::pair<double, double> support_interval(const Axis& axis, std::span<const double> weights,
                                           double fraction = 1e-8);

// Local maxima of a histogram that rise above `min_height` × global maximum
// and whose prominence (height above the higher of the two neighbouring
// minima) exceeds `min_prominence` × global maximum. Returns bin indices.
std::vector<std::size_t> find_maxima(std::span<const double> values, double min_height = 0.05,
                                     double min_prominence = 0.05);

// Pearson χ² statistic of observed counts against expected probabilities;
// categories with expectation below `min_expected` are pooled.
struct ChiSquare {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};
ChiSquare chi_square(std::span<const std::size_t> observed, std::span<const double> probabilities,
                     double min_expected = 5.0);

// Upper tail of the χ² distribution.
double chi_square_sf(double statistic, std::size_t dof);

double mean(std::span<const double> v);
double stddev(std::span<const double> v);

}  // namespace pilotwave
