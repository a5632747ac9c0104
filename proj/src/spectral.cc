#include "gnmln/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace gnmln {

std::vector<double> k_squared(const SpectralGrid& g) {
    std::vector<double> k2(g.size());
    const int n = g.n_per_axis;
    std::vector<double> k1(n);
    for (int m = 0; m < n; ++m) k1[m] = g.freq(m);
    if (g.dim == 1) {
        for (int i = 0; i < n; ++i) k2[i] = k1[i] * k1[i];
    } else if (g.dim == 2) {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j, ++idx)
                k2[idx] = k1[i] * k1[i] + k1[j] * k1[j];
    } else {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l, ++idx)
                    k2[idx] = k1[i] * k1[i] + k1[j] * k1[j] + k1[l] * k1[l];
    }
    return k2;
}

Field gaussian_field(const SpectralGrid& g, double amplitude, double width) {
    Field u(g);
    const int n = g.n_per_axis;
    std::vector<double> x1(n);
    for (int i = 0; i < n; ++i) x1[i] = g.coord(i);
    const double w2 = 2.0 * width * width;
    if (g.dim == 1) {
        for (int i = 0; i < n; ++i) u[i] = amplitude * std::exp(-x1[i] * x1[i] / w2);
    } else if (g.dim == 2) {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j, ++idx)
                u[idx] = amplitude * std::exp(-(x1[i] * x1[i] + x1[j] * x1[j]) / w2);
    } else {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l, ++idx)
                    u[idx] = amplitude *
                             std::exp(-(x1[i] * x1[i] + x1[j] * x1[j] + x1[l] * x1[l]) / w2);
    }
    return u;
}

Fft::Fft(const SpectralGrid& g) : grid_(g), buf_(g.size()) {
    int dims[3] = {g.n_per_axis, g.n_per_axis, g.n_per_axis};
    auto* io = reinterpret_cast<fftw_complex*>(buf_.data());
    plan_fwd_ = fftw_plan_dft(g.dim, dims, io, io, FFTW_FORWARD, FFTW_ESTIMATE);
    plan_bwd_ = fftw_plan_dft(g.dim, dims, io, io, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft::~Fft() {
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
}

std::vector<cplx> Fft::forward(const std::vector<double>& u) const {
    for (std::size_t i = 0; i < u.size(); ++i) buf_[i] = cplx(u[i], 0.0);
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_),
                     reinterpret_cast<fftw_complex*>(buf_.data()),
                     reinterpret_cast<fftw_complex*>(buf_.data()));
    return buf_;
}

std::vector<double> Fft::inverse(const std::vector<cplx>& uh) const {
    std::copy(uh.begin(), uh.end(), buf_.begin());
    fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_),
                     reinterpret_cast<fftw_complex*>(buf_.data()),
                     reinterpret_cast<fftw_complex*>(buf_.data()));
    std::vector<double> out(uh.size());
    const double inv = 1.0 / static_cast<double>(uh.size());
    for (std::size_t i = 0; i < uh.size(); ++i) out[i] = buf_[i].real() * inv;
    return out;
}

static void check_finite(const Field& u) {
    for (double v : u.values)
        if (!std::isfinite(v)) throw validation_error("field contains non-finite values");
}

Field apply_fractional_laplacian(const Fft& fft, const Field& u, double order) {
    if (!(order > 0.0 && order <= 1.0))
        throw validation_error("fractional order must lie in (0,1]");
    check_finite(u);
    auto uh = fft.forward(u.values);
    const auto k2 = k_squared(u.grid);
    for (std::size_t i = 0; i < uh.size(); ++i)
        uh[i] *= (k2[i] == 0.0) ? 0.0 : std::pow(k2[i], order);
    Field out(u.grid);
    out.values = fft.inverse(uh);
    return out;
}

Field apply_fractional_laplacian(const Field& u, double order) {
    Fft fft(u.grid);
    return apply_fractional_laplacian(fft, u, order);
}

double seminorm_sq(const Fft& fft, const Field& u, double order) {
    if (!(order > 0.0 && order <= 1.0))
        throw validation_error("fractional order must lie in (0,1]");
    const auto uh = fft.forward(u.values);
    const auto k2 = k_squared(u.grid);
    const double scale = u.grid.weight() / static_cast<double>(u.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < uh.size(); ++i)
        if (k2[i] != 0.0) acc += std::pow(k2[i], order) * std::norm(uh[i]);
    return acc * scale;
}

double seminorm_sq(const Field& u, double order) {
    Fft fft(u.grid);
    return seminorm_sq(fft, u, order);
}

double lp_norm_p(const Field& u, double p) {
    if (!(p >= 1.0)) throw validation_error("p must be >= 1");
    double acc = 0.0;
    for (double v : u.values) acc += std::pow(std::abs(v), p);
    return acc * u.grid.weight();
}

double mass(const Fft&, const Field& u) { return mass(u); }

double mass(const Field& u) {
    double acc = 0.0;
    for (double v : u.values) acc += v * v;
    return acc * u.grid.weight();
}

Field resample(const Field& u, int zoom) {
    if (zoom < 1) throw validation_error("zoom must be >= 1");
    if (zoom == 1) return u;
    if (u.grid.n_per_axis % zoom != 0)
        throw validation_error("zoom must divide n_per_axis");
    // u(zoom*x): mode k maps to mode zoom*k; modes with |zoom*k| beyond the
    // band are dropped (input should be band-limited to 1/zoom Nyquist).
    Fft fft(u.grid);
    auto uh = fft.forward(u.values);
    const int n = u.grid.n_per_axis;
    std::vector<cplx> vh(uh.size(), cplx(0.0, 0.0));
    auto wrap = [n](int m) { return (m % n + n) % n; };
    auto signed_of = [n](int m) { return (m <= n / 2 - 1) ? m : m - n; };
    if (u.grid.dim == 1) {
        for (int i = 0; i < n; ++i) {
            const int mi = signed_of(i) * zoom;
            if (mi < -n / 2 || mi > n / 2 - 1) continue;
            vh[wrap(mi)] = uh[i];
        }
    } else if (u.grid.dim == 2) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const int mi = signed_of(i) * zoom, mj = signed_of(j) * zoom;
                if (mi < -n / 2 || mi > n / 2 - 1 || mj < -n / 2 || mj > n / 2 - 1)
                    continue;
                vh[static_cast<std::size_t>(wrap(mi)) * n + wrap(mj)] =
                    uh[static_cast<std::size_t>(i) * n + j];
            }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l) {
                    const int mi = signed_of(i) * zoom, mj = signed_of(j) * zoom,
                              ml = signed_of(l) * zoom;
                    if (mi < -n / 2 || mi > n / 2 - 1 || mj < -n / 2 ||
                        mj > n / 2 - 1 || ml < -n / 2 || ml > n / 2 - 1)
                        continue;
                    vh[(static_cast<std::size_t>(wrap(mi)) * n + wrap(mj)) * n +
                       wrap(ml)] =
                        uh[(static_cast<std::size_t>(i) * n + j) * n + l];
                }
    }
    Field out(u.grid);
    out.values = fft.inverse(vh);
    return out;
}

std::vector<cplx> dealias_truncate(const SpectralGrid& g, std::vector<cplx> uh) {
    const int n = g.n_per_axis;
    const int cut = n / 3;  // keep |m| <= n/3 (2/3 rule)
    auto keep = [cut, n](int idx) {
        const int m = (idx <= n / 2 - 1) ? idx : idx - n;
        return std::abs(m) <= cut;
    };
    if (g.dim == 1) {
        for (int i = 0; i < n; ++i)
            if (!keep(i)) uh[i] = 0.0;
    } else if (g.dim == 2) {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j, ++idx)
                if (!keep(i) || !keep(j)) uh[idx] = 0.0;
    } else {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l, ++idx)
                    if (!keep(i) || !keep(j) || !keep(l)) uh[idx] = 0.0;
    }
    return uh;
}

double boundary_decay(const Field& u) {
    const int n = u.grid.n_per_axis;
    const int shell = n / 2;  // index of the -L face
    double umax = 0.0, smax = 0.0;
    auto consider = [&](std::size_t idx, bool on_shell) {
        const double a = std::abs(u[idx]);
        umax = std::max(umax, a);
        if (on_shell) smax = std::max(smax, a);
    };
    if (u.grid.dim == 1) {
        for (int i = 0; i < n; ++i) consider(i, i == shell);
    } else if (u.grid.dim == 2) {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j, ++idx)
                consider(idx, i == shell || j == shell);
    } else {
        std::size_t idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < n; ++l, ++idx)
                    consider(idx, i == shell || j == shell || l == shell);
    }
    return umax > 0.0 ? smax / umax : 0.0;
}

Field random_smooth_field(const SpectralGrid& g, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    // Hand-rolled Box-Muller: stream independent of library internals.
    auto unit = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    };
    auto normal_pair = [&](double& a, double& b) {
        const double u1 = unit(), u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        a = r * std::cos(6.283185307179586 * u2);
        b = r * std::sin(6.283185307179586 * u2);
    };
    const auto k2 = k_squared(g);
    const double nyq = 3.14159265358979323846 / g.spacing();
    const double k0sq = (nyq / 4.0) * (nyq / 4.0);
    std::vector<cplx> uh(g.size());
    for (std::size_t i = 0; i < uh.size(); ++i) {
        double a, b;
        normal_pair(a, b);
        const double env = std::exp(-k2[i] / k0sq);
        uh[i] = cplx(a * env, b * env);
    }
    Fft fft(g);
    Field out(g);
    out.values = fft.inverse(uh);
    // normalize to O(1) amplitude for well-scaled downstream arithmetic
    double m = 0.0;
    for (double v : out.values) m = std::max(m, std::abs(v));
    if (m > 0.0)
        for (double& v : out.values) v /= m;
    return out;
}

std::uint64_t content_hash(const std::vector<double>& values) {
    std::uint64_t h = 14695981039346656037ull;
    for (double v : values) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(v));
        __builtin_memcpy(&bits, &v, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffull;
            h *= 1099511628211ull;
        }
    }
    return h;
}

}  // namespace gnmln
