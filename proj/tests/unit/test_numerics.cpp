#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "pilotwave/error.hpp"
#include "pilotwave/numerics/field_io.hpp"
#include "pilotwave/numerics/fourier.hpp"
#include "pilotwave/numerics/initializers.hpp"
#include "pilotwave/numerics/split_step.hpp"

using namespace pilotwave;

namespace {

Grid line(double lo, double hi, std::size_t n) { return Grid::line({lo, hi, n}); }

double density_mean(const WaveFunction& psi) {
  const auto rho = psi.density();
  double m = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) m += psi.grid().position(i)[0] * rho[i];
  return m * psi.grid().cell_volume();
}

double density_std(const WaveFunction& psi) {
  const auto rho = psi.density();
  const double m = density_mean(psi);
  double v = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double d = psi.grid().position(i)[0] - m;
    v += d * d * rho[i];
  }
  return std::sqrt(v * psi.grid().cell_volume());
}

WaveFunction gaussian(const Grid& g, double c, double s, double k = 0.0) {
  return make_wavefunction(g, GaussianPacket{{c, 0.0}, {s, s}, {k, 0.0}});
}

}  // namespace

TEST(Grid, RejectsDegenerateAxes) {
  EXPECT_THROW(line(1.0, 1.0, 64), InvalidArgument);
  EXPECT_THROW(line(0.0, 1.0, 4), InvalidArgument);
  const Grid g = line(-1.0, 1.0, 8);
  EXPECT_DOUBLE_EQ(g.axis(0).spacing(), 0.25);
  EXPECT_TRUE(g.contains({g.axis(0).last(), 0.0}));
  EXPECT_FALSE(g.contains({0.9, 0.0}));
}

TEST(Grid, PlaneIndexingIsRowMajor) {
  const Grid g = Grid::plane({0.0, 8.0, 8}, {0.0, 16.0, 16});
  EXPECT_EQ(g.index(2, 3), 2u * 16u + 3u);
  const Point p = g.position(g.index(2, 3));
  EXPECT_DOUBLE_EQ(p[0], 2.0);
  EXPECT_DOUBLE_EQ(p[1], 3.0);
}

TEST(Initializers, GaussianIsNormalizedAndCentred) {
  const WaveFunction psi = gaussian(line(-10, 10, 512), 0.0, 1.0);
  EXPECT_NEAR(psi.norm(), 1.0, 1e-12);
  EXPECT_NEAR(density_mean(psi), 0.0, 1e-12);
}

TEST(Initializers, BoxEigenstateIsRealSine) {
  const Grid g = line(-0.5, 1.5, 256);
  const WaveFunction psi = make_wavefunction(g, BoxEigenstate{0.0, 1.0, 1});
  const auto amp = psi.component(0);
  double ratio = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.position(i)[0];
    EXPECT_EQ(amp[i].imag(), 0.0);
    if (x > 0.1 && x < 0.9) {
      const double r = amp[i].real() / std::sin(oracle::pi * x);
      if (ratio == 0.0) ratio = r;
      EXPECT_NEAR(r, ratio, 1e-12);
    }
    if (x <= 0.0 || x >= 1.0) EXPECT_EQ(amp[i], Complex(0.0));
  }
}

TEST(Initializers, TwoGaussianHasTwoMaxima) {
  const Grid g = line(-8, 8, 512);
  const WaveFunction psi = make_wavefunction(g, TwoGaussian{2.0, 0.5, 0.0, 1.0});
  const auto rho = psi.density();
  int maxima = 0;
  for (std::size_t i = 1; i + 1 < rho.size(); ++i)
    if (rho[i] > rho[i - 1] && rho[i] > rho[i + 1]) ++maxima;
  EXPECT_EQ(maxima, 2);
}

TEST(Initializers, SupportAndNameErrors) {
  EXPECT_THROW(gaussian(line(-5, 5, 256), 0.0, 1.0), SupportEscapesGrid);
  EXPECT_THROW(make_initializer("lorentzian", {}), InvalidArgument);
  EXPECT_THROW(make_initializer("gaussian", {{"colour", 1.0}}), InvalidArgument);
}

TEST(Evolve, FreeGaussianSpreadsAnalytically) {
  WaveFunction psi = gaussian(line(-10, 10, 512), 0.0, 1.0);
  const WaveFunction out = evolve(psi, FreePotential{}, 5e-4, 2000);
  EXPECT_NEAR(out.time(), 1.0, 1e-12);
  EXPECT_NEAR(density_std(out), oracle::free_width(1.0, 1.0), 1e-3);
  EXPECT_NEAR(density_std(out), std::sqrt(1.25), 1e-3);
  EXPECT_LT(std::abs(out.norm() - 1.0), 1e-9);
}

TEST(Evolve, FreePacketMatchesClosedFormAmplitude) {
  const Grid g = line(-20, 20, 1024);
  const WaveFunction out = evolve(gaussian(g, 0.0, 1.0, 1.5), FreePotential{}, 5e-4, 4000);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Complex ref = oracle::free_packet(g.position(i)[0], 1.0, 1.5, 2.0);
    worst = std::max(worst, std::abs(out.component(0)[i] - ref));
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(Evolve, ZeroStepsIsIdentity) {
  const WaveFunction psi = gaussian(line(-10, 10, 256), 1.0, 1.0, 2.0);
  const WaveFunction out = evolve(psi, HarmonicPotential{1.0}, 1e-2, 0);
  ASSERT_EQ(out.amplitudes().size(), psi.amplitudes().size());
  EXPECT_TRUE(std::equal(out.amplitudes().begin(), out.amplitudes().end(), psi.amplitudes().begin()));
  EXPECT_EQ(out.time(), psi.time());
}

TEST(Evolve, HarmonicGroundStateIsStationary) {
  const double omega = 1.0;
  const Grid g = line(-10, 10, 256);
  const WaveFunction psi0 = gaussian(g, 0.0, 1.0 / std::sqrt(2.0 * omega));
  const auto rho0 = psi0.density();
  WaveFunction psi = psi0;
  double worst_modulus = 0.0, worst_density = 0.0;
  for (int chunk = 0; chunk < 10; ++chunk) {
    psi = evolve(psi, HarmonicPotential{omega}, 1e-4, 10000);
    const auto rho = psi.density();
    for (std::size_t i = 0; i < g.size(); ++i) {
      worst_modulus = std::max(worst_modulus, std::abs(std::abs(psi.component(0)[i]) - std::abs(psi0.component(0)[i])));
      worst_density = std::max(worst_density, std::abs(rho[i] - rho0[i]));
    }
  }
  EXPECT_NEAR(psi.time(), 10.0, 1e-9);
  EXPECT_LT(worst_density, 1e-6);
  EXPECT_LT(worst_modulus, 1e-8);
}

TEST(Evolve, EnergyDriftIsSmall) {
  const Grid g = line(-12, 12, 256);
  const WaveFunction psi0 = gaussian(g, 1.5, 0.8, 0.5);
  const HarmonicPotential v{1.0};
  const double e0 = energy(psi0, v);
  const WaveFunction out = evolve(psi0, v, 1e-3, 5000);
  EXPECT_LT(std::abs(energy(out, v) - e0) / std::abs(e0), 1e-6);
}

TEST(Evolve, TimeReversalRecoversDensity) {
  const Grid g = line(-12, 12, 256);
  for (const Potential& v : {Potential(FreePotential{}), Potential(HarmonicPotential{0.7})}) {
    const WaveFunction psi0 = gaussian(g, -1.0, 0.9, 1.2);
    const WaveFunction fwd = evolve(psi0, v, 2e-3, 500);
    const WaveFunction back = evolve(fwd.conjugated(), v, 2e-3, 500);
    const auto r0 = psi0.density(), r1 = back.density();
    double worst = 0.0;
    for (std::size_t i = 0; i < r0.size(); ++i) worst = std::max(worst, std::abs(r0[i] - r1[i]));
    EXPECT_LT(worst, 1e-6);
  }
}

TEST(Evolve, StabilityPreconditions) {
  const WaveFunction psi = gaussian(line(-10, 10, 256), 0.0, 1.0);
  EXPECT_THROW(evolve(psi, FreePotential{}, 0.0, 1), StabilityViolation);
  EXPECT_THROW(evolve(psi, BoxPotential{-5.0, 5.0, 1e6}, 1e-3, 1), StabilityViolation);
  // k_max = π/dx ≈ 40 on this grid, so dt = 0.01 puts dt·k²/2 at ~8.
  EXPECT_THROW(evolve(psi, FreePotential{}, 1e-2, 1), StabilityViolation);
}

TEST(Evolve, NonFiniteFieldReportsStep) {
  WaveFunction psi = gaussian(line(-10, 10, 128), 0.0, 1.0);
  psi.component(0)[40] = Complex(std::nan(""), 0.0);
  try {
    SplitStepSolver solver(psi.grid(), 1, FreePotential{}, 1e-3);
    solver.advance(psi, 5);
    FAIL() << "expected NonFiniteField";
  } catch (const NonFiniteField& e) {
    EXPECT_EQ(e.step(), 0u);
  }
  std::vector<std::vector<double>> table(1, std::vector<double>(128, 0.0));
  table[0][3] = std::nan("");
  EXPECT_THROW(evolve(gaussian(line(-10, 10, 128), 0.0, 1.0), TabulatedPotential{table}, 1e-3, 5),
               InvalidArgument);
}

TEST(Gradient, ConstantHasZeroGradient) {
  const Grid g = line(-5, 5, 64);
  std::vector<Complex> amps(g.size(), Complex(0.3, -0.2));
  const Gradient d = gradient(WaveFunction(g, 1, amps));
  for (const Complex& z : d.axis[0]) EXPECT_LT(std::abs(z), 1e-12);
}

TEST(Gradient, WindowedPlaneWave) {
  const Grid g = line(-50, 50, 2048);
  std::vector<Complex> amps(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.position(i)[0];
    const double w = 0.5 * (std::tanh((x + 30.0) / 2.0) - std::tanh((x - 30.0) / 2.0));
    amps[i] = w * std::exp(Complex(0.0, 2.0 * x));
  }
  const WaveFunction psi(g, 1, amps);
  const Gradient d = gradient(psi);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g.position(i)[0]) > 10.0) continue;
    EXPECT_LT(std::abs(d.axis[0][i] - Complex(0.0, 2.0) * amps[i]), 1e-6);
  }
}

TEST(Gradient, AgreesWithFiniteDifferencesAtSecondOrder) {
  std::vector<double> errors;
  for (std::size_t n : {250u, 500u, 1000u, 2000u}) {
    const Grid g = line(-10, 10, n);
    const WaveFunction psi = gaussian(g, 0.0, 1.0, 0.0);
    const Gradient d = gradient(psi);
    const auto a = psi.component(0);
    const double dx = g.axis(0).spacing();
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const Complex fd = (a[i + 1] - a[i - 1]) / (2.0 * dx);
      worst = std::max(worst, std::abs(fd - d.axis[0][i]));
    }
    errors.push_back(worst);
    if (n == 500) {
      EXPECT_DOUBLE_EQ(dx, 0.04);
      EXPECT_LT(worst, 5e-4);
    }
  }
  for (std::size_t r = 1; r < errors.size(); ++r)
    EXPECT_GE(std::log2(errors[r - 1] / errors[r]), 1.9) << "refinement " << r;
}

TEST(Gradient, TwoDimensionalAxesAreIndependent) {
  const Grid g = Grid::plane({-12, 12, 96}, {-12, 12, 96});
  const WaveFunction psi = make_wavefunction(g, GaussianPacket{{0.5, -0.5}, {1.0, 1.2}, {1.0, -2.0}});
  const Gradient d = gradient(psi);
  const auto a = psi.component(0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Point p = g.position(i);
    const Complex ex = a[i] * Complex(-(p[0] - 0.5) / 2.0, 1.0);
    const Complex ey = a[i] * Complex(-(p[1] + 0.5) / (2.0 * 1.44), -2.0);
    EXPECT_LT(std::abs(d.axis[0][i] - ex), 1e-8);
    EXPECT_LT(std::abs(d.axis[1][i] - ey), 1e-8);
  }
}

TEST(FieldIo, CsvRoundTripIsExact) {
  const Grid g = Grid::plane({-4, 4, 16}, {-2, 6, 8});
  WaveFunction psi = make_wavefunction(g, GaussianPacket{{0.1, 2.0}, {0.6, 0.6}, {1.0, 0.5}});
  psi.set_time(0.375);
  std::stringstream csv;
  write_field_csv(csv, psi);
  const auto header = nlohmann::json::parse(field_header(psi).dump());
  const WaveFunction back = read_field(csv, header);
  EXPECT_EQ(back.grid(), g);
  EXPECT_EQ(back.time(), 0.375);
  ASSERT_EQ(back.amplitudes().size(), psi.amplitudes().size());
  for (std::size_t i = 0; i < psi.amplitudes().size(); ++i) EXPECT_EQ(back.amplitudes()[i], psi.amplitudes()[i]);
}

TEST(FieldIo, SpinorColumns) {
  const Grid g = line(-10, 10, 64);
  const WaveFunction psi = make_wavefunction(g, SpinorGaussian{{0.6, 0.0}, {0.0, 0.8}, 0.0, 1.0, 0.0});
  std::stringstream csv;
  write_field_csv(csv, psi);
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "x,re_c0,im_c0,re_c1,im_c1");
}
