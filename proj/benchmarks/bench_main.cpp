#include <benchmark/benchmark.h>

#include "pilotwave/guidance/trajectory.hpp"
#include "pilotwave/guidance/velocity.hpp"
#include "pilotwave/hilbert/kochen_specker.hpp"
#include "pilotwave/hilbert/mermin.hpp"
#include "pilotwave/numerics/initializers.hpp"
#include "pilotwave/numerics/split_step.hpp"

using namespace pilotwave;

namespace {

WaveFunction gaussian_1d(std::size_t points) {
  return make_wavefunction(Grid::line({-20.0, 20.0, points}), GaussianPacket{});
}

void BM_SplitStep1D(benchmark::State& state) {
  const auto n = static_cast<double>(state.range(0));
  const auto psi = gaussian_1d(static_cast<std::size_t>(state.range(0)));
  // Keeps dt k_max^2 / 2 under the stability bound as the grid refines.
  const double dt = 1e-3 * (512.0 / n) * (512.0 / n);
  for (auto _ : state) benchmark::DoNotOptimize(evolve(psi, HarmonicPotential{1.0}, dt, 100));
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_SplitStep1D)->Arg(512)->Arg(4096);

void BM_SplitStep2D(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto psi = make_wavefunction(Grid::plane({-20.0, 20.0, n}, {-20.0, 20.0, n}), TwoGaussian{});
  for (auto _ : state) benchmark::DoNotOptimize(evolve(psi, FreePotential{}, 1e-3, 10));
  state.SetItemsProcessed(state.iterations() * 10);
}
BENCHMARK(BM_SplitStep2D)->Arg(128)->Arg(256);

void BM_VelocityField(benchmark::State& state) {
  const auto psi = gaussian_1d(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(velocity_field(psi));
}
BENCHMARK(BM_VelocityField)->Arg(512)->Arg(4096);

void BM_Trajectory(benchmark::State& state) {
  const SnapshotSource src(gaussian_1d(512), FreePotential{}, 2.0, {1e-3, 10, {}});
  for (auto _ : state) benchmark::DoNotOptimize(integrate_trajectory(src, {0.7, 0.0}, 2.0, {}, {}, false));
}
BENCHMARK(BM_Trajectory);

void BM_KsSearchPeres33(benchmark::State& state) {
  const auto hg = peres33();
  for (auto _ : state) benchmark::DoNotOptimize(ks_search(hg));
}
BENCHMARK(BM_KsSearchPeres33);

void BM_MerminSquare(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mermin_square_check());
}
BENCHMARK(BM_MerminSquare);

}  // namespace
BENCHMARK_MAIN();
