#include "pilotwave/equilibrium/statistics.hpp"

#include <algorithm>
#include <numeric>

#include <unsupported/Eigen/SpecialFunctions>

#include "pilotwave/error.hpp"

namespace pilotwave {

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InvalidArgument("ks_statistic: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
  }
  return d;
}

GridCdf::GridCdf(const Axis& axis, std::span<const double> weights)
    : axis_(axis), first_edge_(axis.lo - 0.5 * axis.spacing()), dx_(axis.spacing()) {
  if (weights.size() != axis.points) throw InvalidArgument("GridCdf: weight count != axis points");
  cumulative_.resize(weights.size() + 1, 0.0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] >= 0.0)) throw InvalidArgument("GridCdf: negative weight");
    cumulative_[i + 1] = cumulative_[i] + weights[i];
  }
  const double total = cumulative_.back();
  if (!(total > 0.0)) throw InvalidArgument("GridCdf: zero total weight");
  for (double& c : cumulative_) c /= total;
}

double GridCdf::operator()(double x) const {
  const double s = (x - first_edge_) / dx_;
  if (s <= 0.0) return 0.0;
  const double cells = static_cast<double>(cumulative_.size() - 1);
  if (s >= cells) return 1.0;
  const auto i = static_cast<std::size_t>(s);
  const double u = s - static_cast<double>(i);
  return cumulative_[i] + u * (cumulative_[i + 1] - cumulative_[i]);
}

std::vector<double> marginal_weights(const WaveFunction& psi, std::size_t axis) {
  const Grid& g = psi.grid();
  if (axis >= g.dims()) throw InvalidArgument("marginal_weights: axis out of range");
  const std::vector<double> rho = psi.density();
  if (g.dims() == 1) return rho;
  const std::size_t nx = g.points(0), ny = g.points(1);
  std::vector<double> out(axis == 0 ? nx : ny, 0.0);
  for (std::size_t i = 0; i < nx; ++i)
    for (std::size_t j = 0; j < ny; ++j) out[axis == 0 ? i : j] += rho[g.index(i, j)];
  return out;
}

Histogram make_histogram(std::span<const double> samples, double lo, double hi, std::size_t bins,
                         const GridCdf* target) {
  if (!(hi > lo) || bins == 0) throw InvalidArgument("make_histogram: empty range");
  Histogram h;
  h.edges.resize(bins + 1);
  const double w = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b <= bins; ++b) h.edges[b] = lo + static_cast<double>(b) * w;
  h.counts.assign(bins, 0);
  for (double x : samples) {
    if (!(x >= lo && x < hi)) continue;
    auto b = static_cast<std::size_t>((x - lo) / w);
    h.counts[std::min(b, bins - 1)]++;
  }
  if (target) {
    h.target_density.resize(bins);
    for (std::size_t b = 0; b < bins; ++b)
      h.target_density[b] = ((*target)(h.edges[b + 1]) - (*target)(h.edges[b])) / w;
  }
  return h;
}

std::pair<double, double> support_interval(const Axis& axis, std::span<const double> weights,
                                           double fraction) {
  const double peak = *std::max_element(weights.begin(), weights.end());
  std::size_t first = weights.size(), last = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > fraction * peak) {
      first = std::min(first, i);
      last = i;
    }
  }
  if (first > last) throw InvalidArgument("support_interval: zero weights");
  const double half = 0.5 * axis.spacing();
  return {axis.node(first) - half, axis.node(last) + half};
}

std::vector<std::size_t> find_maxima(std::span<const double> v, double min_height,
                                     double min_prominence) {
  std::vector<std::size_t> peaks;
  if (v.size() < 3) return peaks;
  const double top = *std::max_element(v.begin(), v.end());
  if (!(top > 0.0)) return peaks;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    // Plateaus count once, at their left end.
    std::size_t j = i;
    while (j + 1 < n && v[j + 1] == v[i]) ++j;
    const bool left_ok = i == 0 || v[i - 1] < v[i];
    const bool right_ok = j == n - 1 || v[j + 1] < v[i];
    if (left_ok && right_ok && v[i] >= min_height * top) {
      // Walk out to the nearest higher value on each side.
      // Prominence: height above the higher of the lowest points reached
      // on either side before meeting a higher value or the edge.
      double left_min = v[i], right_min = v[i];
      for (std::size_t k = i; k > 0 && v[k - 1] <= v[i];) left_min = std::min(left_min, v[--k]);
      for (std::size_t k = j; k + 1 < n && v[k + 1] <= v[i];) right_min = std::min(right_min, v[++k]);
      const double base = std::max(left_min, right_min);
      if (v[i] - base >= min_prominence * top) peaks.push_back(i);
    }
    i = j;
  }
  return peaks;
}

double chi_square_sf(double statistic, std::size_t dof) {
  if (dof == 0) return 1.0;
  if (statistic <= 0.0) return 1.0;
  Eigen::ArrayXd a = Eigen::ArrayXd::Constant(1, 0.5 * static_cast<double>(dof));
  Eigen::ArrayXd x = Eigen::ArrayXd::Constant(1, 0.5 * statistic);
  return Eigen::igammac(a, x)(0);
}

ChiSquare chi_square(std::span<const std::size_t> observed, std::span<const double> probabilities,
                     double min_expected) {
  if (observed.size() != probabilities.size()) throw InvalidArgument("chi_square: size mismatch");
  const double n = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::size_t{0}));
  const double ptotal = std::accumulate(probabilities.begin(), probabilities.end(), 0.0);
  if (!(n > 0.0) || !(ptotal > 0.0)) throw InvalidArgument("chi_square: empty input");
  std::vector<std::pair<double, double>> cells;  // pooled (observed, expected)
  double pool_obs = 0.0, pool_exp = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    pool_obs += static_cast<double>(observed[i]);
    pool_exp += n * probabilities[i] / ptotal;
    if (pool_exp >= min_expected) {
      cells.emplace_back(pool_obs, pool_exp);
      pool_obs = pool_exp = 0.0;
    }
  }
  if (pool_exp > 0.0 || pool_obs > 0.0) {
    if (cells.empty()) cells.emplace_back(0.0, 0.0);
    cells.back().first += pool_obs;
    cells.back().second += pool_exp;
  }
  ChiSquare out;
  for (const auto& [o, e] : cells) out.statistic += (o - e) * (o - e) / e;
  const std::size_t categories = cells.size();
  out.dof = categories > 1 ? categories - 1 : 0;
  out.p_value = chi_square_sf(out.statistic, out.dof);
  return out;
}

double mean(std::span<const double> v) {
  if (v.empty()) throw InvalidArgument("mean of empty sample");
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(std::span<const double> v) {
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace pilotwave
