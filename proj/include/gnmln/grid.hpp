#pragma once
// Periodic box [-L, L)^dim sampled on n^dim points with uniform quadrature
// weight h^dim; frequency lattice k_j = pi*m/L, m in [-n/2, n/2).

#include <cstddef>
#include <vector>

#include "gnmln/params.hpp"

namespace gnmln {

struct SpectralGrid {
    int dim = 1;
    int n_per_axis = 512;
    double half_length = 32.0;

    double spacing() const { return 2.0 * half_length / n_per_axis; }
    std::size_t size() const {
        std::size_t s = 1;
        for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n_per_axis);
        return s;
    }
    double weight() const {
        double w = 1.0;
        for (int d = 0; d < dim; ++d) w *= spacing();
        return w;
    }
    // frequency of index m along one axis (FFT ordering)
    double freq(int m) const {
        const int n = n_per_axis;
        const int mm = (m <= n / 2 - 1) ? m : m - n;
        return 3.14159265358979323846 * mm / half_length;
    }
    // physical coordinate of index i along one axis (FFT ordering: 0..L, -L..0)
    double coord(int i) const {
        const int n = n_per_axis;
        const int ii = (i <= n / 2 - 1) ? i : i - n;
        return ii * spacing();
    }
    bool operator==(const SpectralGrid& o) const {
        return dim == o.dim && n_per_axis == o.n_per_axis &&
               half_length == o.half_length;
    }
};

inline SpectralGrid make_grid(int dim, int n, double half_length) {
    if (dim < 1 || dim > 3) throw validation_error("dim must be 1, 2 or 3");
    if (n < 8 || (n & (n - 1)) != 0)
        throw validation_error("n_per_axis must be a power of two >= 8");
    if (!(half_length > 0.0)) throw validation_error("half_length must be positive");
    return SpectralGrid{dim, n, half_length};
}

// |k|^2 over the full lattice, row-major to match field storage.
std::vector<double> k_squared(const SpectralGrid& g);

struct Field {
    SpectralGrid grid;
    std::vector<double> values;

    Field() = default;
    Field(const SpectralGrid& g, double fill = 0.0)
        : grid(g), values(g.size(), fill) {}
    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
};

// Canonical radial Gaussian A*exp(-|x|^2/(2 w^2)) on g.
Field gaussian_field(const SpectralGrid& g, double amplitude, double width);

}  // namespace gnmln
