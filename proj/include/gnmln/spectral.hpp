#pragma once
// Fourier-multiplier machinery: fractional Laplacian, seminorms, quadrature
// norms, band-limited resampling, dealiased residuals, random smooth fields.

#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "gnmln/grid.hpp"

namespace gnmln {

using cplx = std::complex<double>;

// Forward/backward c2c transforms with FFTW (FFTW_ESTIMATE: plan choice is
// deterministic). One workspace per grid; not thread-safe across concurrent
// calls on the same instance.
class Fft {
  public:
    explicit Fft(const SpectralGrid& g);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    // unnormalized forward DFT of real samples
    std::vector<cplx> forward(const std::vector<double>& u) const;
    // real part of inverse DFT, normalized by 1/size
    std::vector<double> inverse(const std::vector<cplx>& uh) const;

    const SpectralGrid& grid() const { return grid_; }

  private:
    SpectralGrid grid_;
    void* plan_fwd_;
    void* plan_bwd_;
    mutable std::vector<cplx> buf_;
};

// Shared per-grid workspace handle (constructs lazily, reuses plans).
class Workspace {
  public:
    explicit Workspace(const SpectralGrid& g) : fft_(std::make_shared<Fft>(g)) {}
    const Fft& fft() const { return *fft_; }

  private:
    std::shared_ptr<Fft> fft_;
};

Field apply_fractional_laplacian(const Field& u, double order);

// Plancherel seminorm^2: sum |k|^{2s} |u_hat|^2 * h^dim / size.
double seminorm_sq(const Field& u, double order);

double lp_norm_p(const Field& u, double p);
double mass(const Field& u);

// Band-limited evaluation of x -> u(zoom*x) on the same box.
Field resample(const Field& u, int zoom);

// Zero all modes with any |k_j| above 2/3 Nyquist (residual dealiasing).
std::vector<cplx> dealias_truncate(const SpectralGrid& g, std::vector<cplx> uh);

// max |u| on the outermost shell (index n/2 on any axis) / max |u|.
double boundary_decay(const Field& u);

// Gaussian-random Fourier coefficients, variance envelope exp(-|k|^2/k0^2)
// with k0 = Nyquist/4; deterministic in seed.
Field random_smooth_field(const SpectralGrid& g, std::uint64_t seed);

// FNV-1a 64-bit over raw little-endian bytes of the samples.
std::uint64_t content_hash(const std::vector<double>& values);

// Variants reusing a caller-provided workspace (hot paths in solvers).
Field apply_fractional_laplacian(const Fft& fft, const Field& u, double order);
double seminorm_sq(const Fft& fft, const Field& u, double order);
double mass(const Fft& fft, const Field& u);

}  // namespace gnmln
