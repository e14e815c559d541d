#include "pilotwave/numerics/fourier.hpp"

#include <fftw3.h>

#include <mutex>
#include <numbers>

#include "pilotwave/error.hpp"

namespace pilotwave {
namespace {

// FFTW's planner is not thread-safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

std::vector<double> angular_wavenumbers(const Axis& axis) {
  const std::size_t n = axis.points;
  const double dk = 2.0 * std::numbers::pi / axis.length();
  std::vector<double> k(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto m = static_cast<double>(i <= n / 2 ? static_cast<long>(i)
                                                  : static_cast<long>(i) - static_cast<long>(n));
    k[i] = m * dk;
  }
  return k;
}

// ---------------------------------------------------------------------------

struct FourierTransform::Impl {
  Grid grid;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::vector<double> k2;

  explicit Impl(const Grid& g) : grid(g) {
    const int n0 = static_cast<int>(g.points(0));
    const int n1 = g.dims() == 2 ? static_cast<int>(g.points(1)) : 1;
    {
      std::lock_guard lock(planner_mutex());
      fftw_complex* scratch = fftw_alloc_complex(g.size());
      const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
      if (g.dims() == 1) {
        fwd = fftw_plan_dft_1d(n0, scratch, scratch, FFTW_FORWARD, flags);
        bwd = fftw_plan_dft_1d(n0, scratch, scratch, FFTW_BACKWARD, flags);
      } else {
        fwd = fftw_plan_dft_2d(n0, n1, scratch, scratch, FFTW_FORWARD, flags);
        bwd = fftw_plan_dft_2d(n0, n1, scratch, scratch, FFTW_BACKWARD, flags);
      }
      fftw_free(scratch);
    }
    if (fwd == nullptr || bwd == nullptr) throw NumericalError("FFTW planning failed");

    const auto kx = angular_wavenumbers(g.axis(0));
    k2.resize(g.size());
    if (g.dims() == 1) {
      for (std::size_t i = 0; i < kx.size(); ++i) k2[i] = kx[i] * kx[i];
    } else {
      const auto ky = angular_wavenumbers(g.axis(1));
      for (std::size_t i = 0; i < kx.size(); ++i) {
        for (std::size_t j = 0; j < ky.size(); ++j) k2[g.index(i, j)] = kx[i] * kx[i] + ky[j] * ky[j];
      }
    }
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

FourierTransform::FourierTransform(const Grid& grid) : impl_(std::make_unique<Impl>(grid)) {}
FourierTransform::~FourierTransform() = default;
FourierTransform::FourierTransform(FourierTransform&&) noexcept = default;
FourierTransform& FourierTransform::operator=(FourierTransform&&) noexcept = default;

const Grid& FourierTransform::grid() const noexcept { return impl_->grid; }

void FourierTransform::forward(std::span<Complex> data) const {
  if (data.size() != impl_->grid.size()) throw InvalidArgument("FFT size mismatch");
  fftw_execute_dft(impl_->fwd, as_fftw(data.data()), as_fftw(data.data()));
}

void FourierTransform::inverse(std::span<Complex> data) const {
  if (data.size() != impl_->grid.size()) throw InvalidArgument("FFT size mismatch");
  fftw_execute_dft(impl_->bwd, as_fftw(data.data()), as_fftw(data.data()));
  const double scale = 1.0 / static_cast<double>(data.size());
  for (Complex& c : data) c *= scale;
}

const std::vector<double>& FourierTransform::k_squared() const noexcept { return impl_->k2; }

// ---------------------------------------------------------------------------

struct RealSpectralDerivative::Impl {
  Grid grid;
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
  std::size_t half = 0;  // length of the last (halved) spectral dimension
  std::size_t spectral_size = 0;
  std::array<std::vector<double>, 2> k;  // wavenumber per spectral index, Nyquist zeroed

  explicit Impl(const Grid& g) : grid(g) {
    const int n0 = static_cast<int>(g.points(0));
    const bool two = g.dims() == 2;
    const std::size_t last = two ? g.points(1) : g.points(0);
    half = last / 2 + 1;
    spectral_size = two ? g.points(0) * half : half;
    {
      std::lock_guard lock(planner_mutex());
      double* rs = fftw_alloc_real(g.size());
      fftw_complex* cs = fftw_alloc_complex(spectral_size);
      const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
      if (!two) {
        r2c = fftw_plan_dft_r2c_1d(n0, rs, cs, flags);
        c2r = fftw_plan_dft_c2r_1d(n0, cs, rs, flags);
      } else {
        const int n1 = static_cast<int>(g.points(1));
        r2c = fftw_plan_dft_r2c_2d(n0, n1, rs, cs, flags);
        c2r = fftw_plan_dft_c2r_2d(n0, n1, cs, rs, flags);
      }
      fftw_free(rs);
      fftw_free(cs);
    }
    if (r2c == nullptr || c2r == nullptr) throw NumericalError("FFTW planning failed");

    for (std::size_t a = 0; a < g.dims(); ++a) {
      auto kk = angular_wavenumbers(g.axis(a));
      if (g.points(a) % 2 == 0) kk[g.points(a) / 2] = 0.0;
      k[a] = std::move(kk);
    }
  }

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (r2c) fftw_destroy_plan(r2c);
    if (c2r) fftw_destroy_plan(c2r);
  }
};

RealSpectralDerivative::RealSpectralDerivative(const Grid& grid)
    : impl_(std::make_unique<Impl>(grid)) {}
RealSpectralDerivative::~RealSpectralDerivative() = default;
RealSpectralDerivative::RealSpectralDerivative(RealSpectralDerivative&&) noexcept = default;
RealSpectralDerivative& RealSpectralDerivative::operator=(RealSpectralDerivative&&) noexcept = default;

void RealSpectralDerivative::gradient(std::span<const double> f,
                                      std::span<std::vector<double>> out) const {
  const Grid& g = impl_->grid;
  if (f.size() != g.size() || out.size() < g.dims()) throw InvalidArgument("gradient size mismatch");

  std::vector<double> in(f.begin(), f.end());
  std::vector<Complex> spec(impl_->spectral_size);
  fftw_execute_dft_r2c(impl_->r2c, in.data(), as_fftw(spec.data()));

  const double scale = 1.0 / static_cast<double>(g.size());
  std::vector<Complex> work(impl_->spectral_size);
  for (std::size_t a = 0; a < g.dims(); ++a) {
    const auto& k = impl_->k[a];
    if (g.dims() == 1) {
      for (std::size_t j = 0; j < impl_->half; ++j) work[j] = spec[j] * Complex(0.0, k[j] * scale);
    } else {
      const std::size_t h = impl_->half;
      for (std::size_t i = 0; i < g.points(0); ++i) {
        for (std::size_t j = 0; j < h; ++j) {
          const double kk = a == 0 ? k[i] : k[j];
          work[i * h + j] = spec[i * h + j] * Complex(0.0, kk * scale);
        }
      }
    }
    out[a].resize(g.size());
    fftw_execute_dft_c2r(impl_->c2r, as_fftw(work.data()), out[a].data());
  }
}

// ---------------------------------------------------------------------------

Gradient gradient(const WaveFunction& psi) {
  if (!psi.finite()) throw InvalidArgument("gradient of a non-finite field");
  const Grid& g = psi.grid();
  const std::size_t n = g.size();
  RealSpectralDerivative deriv(g);

  Gradient out;
  out.dims = g.dims();
  for (std::size_t a = 0; a < g.dims(); ++a) out.axis[a].resize(psi.components() * n);

  std::vector<double> re(n), im(n);
  std::array<std::vector<double>, 2> dre, dim;
  for (std::size_t c = 0; c < psi.components(); ++c) {
    auto comp = psi.component(c);
    for (std::size_t i = 0; i < n; ++i) {
      re[i] = comp[i].real();
      im[i] = comp[i].imag();
    }
    deriv.gradient(re, dre);
    deriv.gradient(im, dim);
    for (std::size_t a = 0; a < g.dims(); ++a) {
      Complex* dst = out.axis[a].data() + c * n;
      for (std::size_t i = 0; i < n; ++i) dst[i] = Complex(dre[a][i], dim[a][i]);
    }
  }
  return out;
}

}  // namespace pilotwave
