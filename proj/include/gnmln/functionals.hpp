#pragma once
// Energy, Weinstein functional, fiber map, scaling transforms.

#include "gnmln/params.hpp"
#include "gnmln/spectral.hpp"

namespace gnmln {

struct Norms {
    double kinetic_low = 0.0;   // ||u||^2_{D^{s_low,2}}
    double kinetic_high = 0.0;  // ||u||^2_{D^{s_high,2}}
    double mass = 0.0;          // ||u||^2_{L^2}
    double potential = 0.0;     // ||u||^p_{L^p}
};

Norms compute_norms(const Fft& fft, const Field& u, const ProblemParams& pp);
Norms compute_norms(const Field& u, const ProblemParams& pp);

struct FunctionalReport {
    double energy = 0.0;
    double kinetic_high = 0.0;
    double kinetic_low = 0.0;
    double potential = 0.0;
    double mass = 0.0;
    double weinstein = 0.0;
};

double energy_from(const Norms& n, const ProblemParams& pp);
double weinstein_from(const Norms& n, const ProblemParams& pp);
FunctionalReport functional_report(const Norms& n, const ProblemParams& pp);
FunctionalReport functional_report(const Field& u, const ProblemParams& pp);

double energy(const Field& u, const ProblemParams& pp);

// L2-gradient of J: (-Delta)^{s_high} u + (-Delta)^{s_low} u - |u|^{p-2} u.
Field energy_gradient(const Field& u, const ProblemParams& pp);

// W_p(u); throws on u = 0.
double weinstein(const Field& u, const ProblemParams& pp);

// u_t(x) = t^{N/2} u(t x), realized exactly by box rescale:
// samples t^{N/2} u on half_length L / t.
Field dilation_scaling(const Field& u, double t);

// h_u(t) = J(u_t)/t^{2 s_low}, evaluated from norms (closed form in t).
double h_function(const Norms& n, double t, const ProblemParams& pp);
double h_function(const Field& u, double t, const ProblemParams& pp);

// Unique critical point of h_u: closed form
// t_u = [ (N(p-2)-4 s_low)/(2 p sigma) * P/K_high ]^{2/(4 s_high - N(p-2))}.
double t_star(const Norms& n, const ProblemParams& pp);
double t_star(const Field& u, const ProblemParams& pp);

// u_bar(x) = r^a u(r^b x), r = c'/c (s_high = 1 only).
// Realized exactly by box rescale: samples r^a * u on half_length L * r^{-b}.
Field mass_scaling(const Field& u, double c, double c_prime, const ProblemParams& pp);

// Closed-form seminorm transform factor (c'/c)^{2a + 2bs - bN} for order s.
double mass_scaling_seminorm_factor(double c, double c_prime, double order,
                                    const ProblemParams& pp);

struct ThresholdCheck {
    bool holds_strict;  // LHS < K * potential
    double margin;      // (LHS - K*P) / (K*P), signed
};

// LHS = K_high^{exp_high/2} * K_low^{exp_low/2} vs K * ||u||_p^p.
ThresholdCheck threshold_inequality_holds(const Field& u, const ProblemParams& pp);
ThresholdCheck threshold_check_from(const Norms& n, const ProblemParams& pp);

}  // namespace gnmln
