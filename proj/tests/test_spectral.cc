#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gnmln/spectral.hpp"

using namespace gnmln;

namespace {
const double kInvSqrt2 = 0.7071067811865475244;  // width making exp(-x^2)
}

TEST_CASE("grid construction and validation") {
    CHECK_THROWS_AS(make_grid(0, 64, 8.0), validation_error);
    CHECK_THROWS_AS(make_grid(4, 64, 8.0), validation_error);
    CHECK_THROWS_AS(make_grid(1, 100, 8.0), validation_error);
    CHECK_THROWS_AS(make_grid(1, 4, 8.0), validation_error);
    CHECK_THROWS_AS(make_grid(1, 64, 0.0), validation_error);
    const SpectralGrid g = make_grid(2, 64, 8.0);
    CHECK(g.size() == 64u * 64u);
    CHECK(g.spacing() == doctest::Approx(0.25));
    CHECK(g.freq(0) == 0.0);
    CHECK(g.freq(1) == doctest::Approx(M_PI / 8.0));
    CHECK(g.freq(63) == doctest::Approx(-M_PI / 8.0));
    CHECK(g.coord(0) == 0.0);
    CHECK(g.coord(63) == doctest::Approx(-0.25));
}

TEST_CASE("Gaussian D^{1/2} seminorm converges to the continuum value") {
    // || exp(-x^2) ||^2_{D^{1/2,2}} = 1 on the line. The |k| symbol has a
    // kink at 0, so the periodized sum carries an O(dk^2) error; halving dk
    // must reduce it fourfold.
    const double e1 =
        seminorm_sq(gaussian_field(make_grid(1, 512, 32.0), 1.0, kInvSqrt2), 0.5) - 1.0;
    const double e2 =
        seminorm_sq(gaussian_field(make_grid(1, 1024, 64.0), 1.0, kInvSqrt2), 0.5) - 1.0;
    CHECK(std::abs(e1) < 1e-3);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(5e-3));
}

TEST_CASE("3D Gaussian mass matches the continuum value") {
    const SpectralGrid g = make_grid(3, 64, 12.0);
    const Field u = gaussian_field(g, 1.0, kInvSqrt2);
    CHECK(mass(u) == doctest::Approx(std::pow(M_PI / 2.0, 1.5)).epsilon(1e-10));
}

TEST_CASE("fractional Laplacian: Fourier mode eigenfunction, zero mode") {
    const SpectralGrid g = make_grid(1, 256, 16.0);
    const double k = g.freq(5);
    Field u(g);
    for (int i = 0; i < g.n_per_axis; ++i) u[i] = std::cos(k * g.coord(i));
    for (double s : {0.3, 0.5, 1.0}) {
        const Field v = apply_fractional_laplacian(u, s);
        const double lam = std::pow(k * k, s);
        for (int i = 0; i < g.n_per_axis; i += 37)
            CHECK(v[i] == doctest::Approx(lam * u[i]).epsilon(1e-10));
    }
    // 0^{2s} = 0: constants are annihilated
    Field c(g, 3.0);
    const Field vc = apply_fractional_laplacian(c, 0.5);
    for (int i = 0; i < g.n_per_axis; i += 37) CHECK(std::abs(vc[i]) < 1e-12);
    CHECK_THROWS_AS(apply_fractional_laplacian(u, 1.5), validation_error);
    CHECK_THROWS_AS(apply_fractional_laplacian(u, 0.0), validation_error);
}

TEST_CASE("fractional Laplacian is self-adjoint") {
    const SpectralGrid g = make_grid(1, 256, 16.0);
    const Field a = random_smooth_field(g, 11);
    const Field b = random_smooth_field(g, 22);
    const Field La = apply_fractional_laplacian(a, 0.6);
    const Field Lb = apply_fractional_laplacian(b, 0.6);
    double lab = 0.0, alb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        lab += La[i] * b[i];
        alb += a[i] * Lb[i];
    }
    CHECK(lab == doctest::Approx(alb).epsilon(1e-11));
}

TEST_CASE("Parseval: quadrature mass equals spectral mass") {
    const SpectralGrid g = make_grid(2, 64, 8.0);
    const Field u = random_smooth_field(g, 33);
    Fft fft(g);
    const auto uh = fft.forward(u.values);
    double acc = 0.0;
    for (const auto& z : uh) acc += std::norm(z);
    acc *= g.weight() / static_cast<double>(g.size());
    CHECK(acc == doctest::Approx(mass(u)).epsilon(1e-12));
}

TEST_CASE("seminorm interpolation with single-mode equality") {
    const SpectralGrid g = make_grid(1, 256, 16.0);
    const double s1 = 0.4, s2 = 0.9;
    // generic field: strict inequality
    const Field u = random_smooth_field(g, 44);
    const double lhs = seminorm_sq(u, s1);
    const double rhs = std::pow(mass(u), 1.0 - s1 / s2) *
                       std::pow(seminorm_sq(u, s2), s1 / s2);
    CHECK(lhs <= rhs * (1.0 + 1e-12));
    // single mode: equality
    Field m(g);
    const double k = g.freq(7);
    for (int i = 0; i < g.n_per_axis; ++i) m[i] = std::sin(k * g.coord(i));
    const double lhs1 = seminorm_sq(m, s1);
    const double rhs1 = std::pow(mass(m), 1.0 - s1 / s2) *
                        std::pow(seminorm_sq(m, s2), s1 / s2);
    CHECK(lhs1 == doctest::Approx(rhs1).epsilon(1e-12));
}

TEST_CASE("resample evaluates u(zoom x) for band-limited input") {
    const SpectralGrid g = make_grid(1, 256, 16.0);
    const double k = g.freq(5);
    Field u(g);
    for (int i = 0; i < g.n_per_axis; ++i) u[i] = std::cos(k * g.coord(i));
    const Field v = resample(u, 2);
    for (int i = 0; i < g.n_per_axis; i += 13)
        CHECK(v[i] == doctest::Approx(std::cos(2.0 * k * g.coord(i))).epsilon(1e-10));
    CHECK_THROWS_AS(resample(u, 0), validation_error);
    CHECK_THROWS_AS(resample(u, 3), validation_error);  // must divide n
}

TEST_CASE("dealias truncation zeroes the upper third of modes") {
    const SpectralGrid g = make_grid(1, 128, 8.0);
    Fft fft(g);
    Field u(g);
    const double klo = g.freq(3), khi = g.freq(50);  // 50 > 128/3
    for (int i = 0; i < g.n_per_axis; ++i)
        u[i] = std::cos(klo * g.coord(i)) + std::cos(khi * g.coord(i));
    auto uh = dealias_truncate(g, fft.forward(u.values));
    CHECK(std::abs(uh[3]) > 1.0);
    CHECK(std::abs(uh[50]) < 1e-10);
    CHECK(std::abs(uh[128 - 50]) < 1e-10);
}

TEST_CASE("boundary decay: localized vs constant fields") {
    const SpectralGrid g = make_grid(1, 256, 16.0);
    CHECK(boundary_decay(gaussian_field(g, 1.0, 1.0)) < 1e-20);
    CHECK(boundary_decay(Field(g, 2.5)) == doctest::Approx(1.0));
}

TEST_CASE("random smooth fields: deterministic in seed, unit amplitude") {
    const SpectralGrid g = make_grid(1, 256, 16.0);
    const Field a = random_smooth_field(g, 123);
    const Field b = random_smooth_field(g, 123);
    const Field c = random_smooth_field(g, 124);
    CHECK(content_hash(a.values) == content_hash(b.values));
    CHECK(content_hash(a.values) != content_hash(c.values));
    double m = 0.0;
    for (double v : a.values) m = std::max(m, std::abs(v));
    CHECK(m == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("content hash: pinned value and bit sensitivity") {
    CHECK(content_hash({1.0, 2.0, 3.0}) == 0xe2d5ae79fc4e9a70ull);
    CHECK(content_hash({1.0, 2.0, std::nextafter(3.0, 4.0)}) != 0xe2d5ae79fc4e9a70ull);
}
