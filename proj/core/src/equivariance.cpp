#include "pilotwave/equilibrium/equivariance.hpp"

#include <algorithm>
#include <ostream>

#include "pilotwave/equilibrium/born_sampler.hpp"
#include "pilotwave/text.hpp"

namespace pilotwave {

double equivariance_threshold(std::size_t n) { return std::max(ks_critical_1pct(n), 2e-2); }

EquivarianceReport compare_to_density(const std::vector<Point>& positions, const WaveFunction& psi,
                                      std::string experiment, std::uint64_t seed,
                                      const std::vector<std::uint8_t>& exclude) {
  const Grid& g = psi.grid();
  EquivarianceReport r;
  r.experiment = std::move(experiment);
  r.t = psi.time();
  r.n = positions.size();
  r.seed = seed;
  r.threshold = equivariance_threshold(r.n);

  for (std::size_t a = 0; a < g.dims(); ++a) {
    std::vector<double> xs;
    xs.reserve(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i)
      if (exclude.empty() || !exclude[i]) xs.push_back(positions[i][a]);
    const std::vector<double> w = marginal_weights(psi, a);
    const GridCdf cdf(g.axis(a), w);
    r.ks_axes.push_back(ks_statistic(xs, [&](double x) { return cdf(x); }));
    const auto [lo, hi] = support_interval(g.axis(a), w);
    r.histograms.push_back(make_histogram(xs, lo, hi, kHistogramBins, &cdf));
  }
  r.ks = *std::max_element(r.ks_axes.begin(), r.ks_axes.end());
  r.pass = r.ks < r.threshold;
  return r;
}

EquivarianceReport equivariance_check(const SnapshotSource& source, std::size_t n, std::uint64_t seed,
                                      const EquivarianceSettings& settings) {
  if (n < 1000) throw InvalidArgument("equivariance_check: n must be >= 1000");
  const Ensemble ens = Ensemble::from_positions(sample_born(source.initial(), n, seed),
                                                source.initial().time());
  EnsembleOptions opts;
  opts.seed = seed;
  opts.experiment = settings.experiment;
  opts.threads = settings.threads;
  const EnsembleRun run = evolve_ensemble(ens, source, source.t_end(), settings.integrator, opts);

  std::vector<std::uint8_t> failed(n, 0);
  for (const auto& f : run.failures) failed[f.index] = 1;
  EquivarianceReport r =
      compare_to_density(run.ensemble.current, source.final_state(), settings.experiment, seed, failed);
  r.members_failed = run.failures.size();
  r.members_unreliable = run.unreliable;
  return r;
}

EquivarianceReport equivariance_check(const WaveFunction& psi0, const Potential& potential, double t,
                                      std::size_t n, std::uint64_t seed,
                                      const EquivarianceSettings& settings) {
  if (n < 1000) throw InvalidArgument("equivariance_check: n must be >= 1000");
  const SnapshotSource source(psi0, potential, t, settings.source);
  return equivariance_check(source, n, seed, settings);
}

namespace {

nlohmann::ordered_json histogram_json(const Histogram& h) {
  return {{"edges", h.edges}, {"counts", h.counts}, {"target_density", h.target_density}};
}

}  // namespace

nlohmann::ordered_json to_json(const EquivarianceReport& r) {
  nlohmann::ordered_json j;
  j["experiment"] = r.experiment;
  j["t"] = r.t;
  j["n"] = r.n;
  j["seed"] = r.seed;
  j["ks"] = r.ks;
  j["threshold"] = r.threshold;
  j["pass"] = r.pass;
  j["histogram"] = histogram_json(r.histograms.at(0));
  if (r.histograms.size() > 1) {
    j["ks_axes"] = r.ks_axes;
    j["histogram_y"] = histogram_json(r.histograms.at(1));
  }
  j["members_failed"] = r.members_failed;
  j["members_unreliable"] = r.members_unreliable;
  return j;
}

void write_histogram_csv(std::ostream& os, const EquivarianceReport& r) {
  os << "axis,bin_lo,bin_hi,count,target_density\n";
  for (std::size_t a = 0; a < r.histograms.size(); ++a) {
    const Histogram& h = r.histograms[a];
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      os << (a == 0 ? 'x' : 'y') << ',' << format_double(h.edges[b]) << ','
         << format_double(h.edges[b + 1]) << ',' << h.counts[b] << ','
         << format_double(h.target_density.empty() ? 0.0 : h.target_density[b]) << '\n';
    }
  }
}

}  // namespace pilotwave
