#pragma once
// Identity and inequality certification for computed ground states.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gnmln/solvers.hpp"

namespace gnmln {

// Residual ladder: each check's tolerance reflects how the corresponding
// error source propagates (equation fixed point -> algebraic identities ->
// truncation-dominated identities -> route agreement).
struct Thresholds {
    double equation = 1e-10;
    double nehari = 1e-8;
    double pohozaev = 1e-6;
    double virial = 1e-6;
    double seminorm = 1e-4;
    double c0_agreement = 1e-3;
    double threshold_margin = 1e-4;
    double gn_sample_slack = 1e-6;
    double inequality_slack = 1e-10;
};

double nehari_residual(const GroundState& g, const ProblemParams& pp);
double pohozaev_residual(const GroundState& g, const ProblemParams& pp);
double virial_residual(const GroundState& g, const ProblemParams& pp);
// |J(Q)| / (kinetic sum): the zero-energy identity of the critical state.
double energy_residual(const GroundState& g, const ProblemParams& pp);

struct SeminormIdentityReport {
    std::array<double, 2> residuals{};  // {high, low}: K_s vs (exp/p) * potential
    double beta = 0.0, beta_target = 0.0;
    double gamma = 0.0, gamma_target = 0.0;
};

SeminormIdentityReport seminorm_identities(const GroundState& g,
                                           const ProblemParams& pp);

struct Certificate {
    ProblemParams params;
    double c0_routeA = 0.0;
    double c0_routeW = 0.0;
    double c0_formula = 0.0;
    double C_best = 0.0;
    double beta = 0.0, beta_target = 0.0;
    double gamma = 0.0, gamma_target = 0.0;
    double nehari_residual = 0.0;
    double pohozaev_residual = 0.0;
    double energy_residual = 0.0;
    std::array<double, 2> seminorm_identity_residuals{};
    double threshold_margin_at_c0 = 0.0;
    int gn_sample_violations = 0;
    int gn_sample_count = 0;
    double omega = 0.0;
    Thresholds thresholds;
    std::string status = "FAIL";          // sticky: any sub-check failure
    std::vector<std::string> failures;    // named failing sub-checks
};

// Identities are measured on the equation-exact route-A state; the rescaled
// route-W state satisfies them by construction and would certify nothing.
Certificate optimality_certificate(const CriticalMassResult& r,
                                   const ProblemParams& pp, int n_samples,
                                   std::uint64_t seed);

std::string certificate_to_json(const Certificate& c);
// Flat row in the sweep schema column order (no trailing newline).
std::string certificate_csv_row(const Certificate& c);
extern const char* kCsvHeader;  // "# schema=1" + column list

struct BatteryReport {
    FlowResult flow_low, flow_c0, flow_high;  // 0.8 c0, c0, 1.2 c0
    bool high_negative = false;   // m_{1.2 c0} < 0 strictly
    bool c0_small = false;        // |m_{c0}| <= 1e-6 * kinetic scale
    bool low_no_negative = false; // no negative energy found at 0.8 c0
    bool low_cprime_ok = false;   // (c') margin >= -slack along the 0.8 c0 flow
    bool pass = false;
};

// Flows at {0.8, 1.0, 1.2} c0; the c = c0 flow starts from Q (J(Q) ~ 0),
// the others from the canonical Gaussian on Q's grid.
BatteryReport theorem14_battery(const ProblemParams& pp, double c0,
                                const Field& Q, const SolverOptions& opts);

struct InequalitySuiteReport {
    int samples = 0;
    int interpolation_violations = 0;  // seminorm interpolation inequality
    int holder_violations = 0;         // Lp Hoelder chain between the two
                                       // mass-critical exponents
    double max_interpolation_excess = 0.0;  // max (lhs-rhs)/rhs, signed
    double max_holder_excess = 0.0;
    double single_mode_equality_error = 0.0;
    double best_const_mixed = 0.0;   // max 1/W_p over samples (informational)
    double best_const_high = 0.0;    // single-operator GN ratio (informational)
    bool pass = false;
};

InequalitySuiteReport sampled_inequality_suite(const ProblemParams& pp,
                                               const SpectralGrid& g,
                                               int n_samples, std::uint64_t seed);

}  // namespace gnmln
