#include "gnmln/functionals.hpp"

#include <cmath>

namespace gnmln {

Norms compute_norms(const Fft& fft, const Field& u, const ProblemParams& pp) {
    Norms n;
    const auto uh = fft.forward(u.values);
    const auto k2 = k_squared(u.grid);
    const double scale = u.grid.weight() / static_cast<double>(u.size());
    double kl = 0.0, kh = 0.0, m = 0.0;
    for (std::size_t i = 0; i < uh.size(); ++i) {
        const double a = std::norm(uh[i]);
        m += a;
        if (k2[i] != 0.0) {
            kl += std::pow(k2[i], pp.s_low) * a;
            kh += std::pow(k2[i], pp.s_high) * a;
        }
    }
    n.kinetic_low = kl * scale;
    n.kinetic_high = kh * scale;
    n.mass = m * scale;
    double pot = 0.0;
    for (double v : u.values) pot += std::pow(std::abs(v), pp.p);
    n.potential = pot * u.grid.weight();
    return n;
}

Norms compute_norms(const Field& u, const ProblemParams& pp) {
    Fft fft(u.grid);
    return compute_norms(fft, u, pp);
}

double energy_from(const Norms& n, const ProblemParams& pp) {
    return 0.5 * n.kinetic_high + 0.5 * n.kinetic_low - n.potential / pp.p;
}

double weinstein_from(const Norms& n, const ProblemParams& pp) {
    if (n.mass <= 0.0 || n.potential <= 0.0)
        throw validation_error("Weinstein functional undefined for the zero field");
    const GnExponents e = gn_exponents(pp);
    return std::pow(n.kinetic_low, e.exp_low / 2.0) *
           std::pow(n.kinetic_high, e.exp_high / 2.0) *
           std::pow(n.mass, e.exp_mass / 2.0) / n.potential;
}

FunctionalReport functional_report(const Norms& n, const ProblemParams& pp) {
    FunctionalReport r;
    r.energy = energy_from(n, pp);
    r.kinetic_high = n.kinetic_high;
    r.kinetic_low = n.kinetic_low;
    r.potential = n.potential;
    r.mass = n.mass;
    r.weinstein = (n.mass > 0.0 && n.potential > 0.0) ? weinstein_from(n, pp) : 0.0;
    return r;
}

FunctionalReport functional_report(const Field& u, const ProblemParams& pp) {
    return functional_report(compute_norms(u, pp), pp);
}

double energy(const Field& u, const ProblemParams& pp) {
    return energy_from(compute_norms(u, pp), pp);
}

Field energy_gradient(const Field& u, const ProblemParams& pp) {
    validate(pp);
    Fft fft(u.grid);
    auto uh = fft.forward(u.values);
    const auto k2 = k_squared(u.grid);
    for (std::size_t i = 0; i < uh.size(); ++i) {
        const double sym = (k2[i] == 0.0)
                               ? 0.0
                               : std::pow(k2[i], pp.s_high) + std::pow(k2[i], pp.s_low);
        uh[i] *= sym;
    }
    Field out(u.grid);
    out.values = fft.inverse(uh);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double v = u[i];
        out[i] -= (v == 0.0) ? 0.0 : std::pow(std::abs(v), pp.p - 2.0) * v;
    }
    return out;
}

double weinstein(const Field& u, const ProblemParams& pp) {
    return weinstein_from(compute_norms(u, pp), pp);
}

Field dilation_scaling(const Field& u, double t) {
    if (!(t > 0.0)) throw validation_error("t must be positive");
    Field out = u;
    out.grid.half_length = u.grid.half_length / t;
    const double amp = std::pow(t, u.grid.dim / 2.0);
    for (double& v : out.values) v *= amp;
    return out;
}

double h_function(const Norms& n, double t, const ProblemParams& pp) {
    if (!(t > 0.0)) throw validation_error("t must be positive");
    const double N = pp.dim, q = N * (pp.p - 2.0) / 2.0;
    const double Jt = 0.5 * std::pow(t, 2.0 * pp.s_high) * n.kinetic_high +
                      0.5 * std::pow(t, 2.0 * pp.s_low) * n.kinetic_low -
                      std::pow(t, q) * n.potential / pp.p;
    return Jt / std::pow(t, 2.0 * pp.s_low);
}

double h_function(const Field& u, double t, const ProblemParams& pp) {
    return h_function(compute_norms(u, pp), t, pp);
}

double t_star(const Norms& n, const ProblemParams& pp) {
    validate(pp);
    if (!(n.kinetic_high > 0.0 && n.potential > 0.0))
        throw validation_error("t_star needs nonzero kinetic and potential terms");
    const double N = pp.dim, p = pp.p, sig = pp.s_high - pp.s_low;
    const double num = (N * (p - 2.0) - 4.0 * pp.s_low) / (2.0 * p * sig);
    const double expo = 2.0 / (4.0 * pp.s_high - N * (p - 2.0));
    return std::pow(num * n.potential / n.kinetic_high, expo);
}

double t_star(const Field& u, const ProblemParams& pp) {
    return t_star(compute_norms(u, pp), pp);
}

Field mass_scaling(const Field& u, double c, double c_prime, const ProblemParams& pp) {
    const MassScalingExponents ms = mass_scaling_exponents(pp);
    if (!(c > 0.0 && c_prime > 0.0))
        throw validation_error("masses must be positive");
    const double r = c_prime / c;
    Field out = u;
    out.grid.half_length = u.grid.half_length * std::pow(r, -ms.b);
    const double amp = std::pow(r, ms.a);
    for (double& v : out.values) v *= amp;
    return out;
}

double mass_scaling_seminorm_factor(double c, double c_prime, double order,
                                    const ProblemParams& pp) {
    const MassScalingExponents ms = mass_scaling_exponents(pp);
    const double r = c_prime / c;
    return std::pow(r, 2.0 * ms.a + 2.0 * ms.b * order - ms.b * pp.dim);
}

ThresholdCheck threshold_check_from(const Norms& n, const ProblemParams& pp) {
    const GnExponents e = gn_exponents(pp);
    const double K = threshold_coefficient(pp);
    const double lhs = std::pow(n.kinetic_high, e.exp_high / 2.0) *
                       std::pow(n.kinetic_low, e.exp_low / 2.0);
    const double rhs = K * n.potential;
    ThresholdCheck t;
    t.margin = (lhs - rhs) / rhs;
    t.holds_strict = lhs < rhs;
    return t;
}

ThresholdCheck threshold_inequality_holds(const Field& u, const ProblemParams& pp) {
    const Norms n = compute_norms(u, pp);
    if (n.potential <= 0.0)
        throw validation_error("threshold inequality undefined for the zero field");
    return threshold_check_from(n, pp);
}

}  // namespace gnmln
