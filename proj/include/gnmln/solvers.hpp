#pragma once
// Ground-state computation: Petviashvili iteration at fixed omega, Weinstein
// descent (route W), omega-bisection on J (route A), mass-constrained flow.

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gnmln/functionals.hpp"

namespace gnmln {

struct SolverOptions {
    int max_iters = 500;
    double residual_tol = 1e-10;      // relative dealiased spectral residual
    double stabilization_gamma = 0.0; // 0 => default (p-1)/(p-2)
    double damping = 0.5;             // descent step cap
    unsigned long long seed = 0;
    double box_flag_threshold = 1e-2; // boundary-decay "box too small" flag
    // Weinstein descent termination
    double descent_w_tol = 1e-12;     // relative W decrease over stall window
    int descent_w_window = 20;
    int descent_patience = 30;        // iters without a new grad-norm minimum
    int descent_max_iters = 2000;
    // mass-constrained flow
    double flow_grad_tol = 1e-12;
    int flow_max_iters = 5000;
    double flow_delocalization_threshold = 5e-2;
};

struct solver_error : std::runtime_error {
    int exit_code;
    explicit solver_error(const std::string& msg, int code)
        : std::runtime_error(msg), exit_code(code) {}
};

struct non_convergence_error : solver_error {
    std::vector<double> residual_history;
    non_convergence_error(const std::string& msg, std::vector<double> hist)
        : solver_error(msg, 2), residual_history(std::move(hist)) {}
};

struct bracket_failure_error : solver_error {
    // (omega, J/kinetic, boundary_decay) at each sampled point
    std::vector<std::array<double, 3>> samples;
    bracket_failure_error(const std::string& msg,
                          std::vector<std::array<double, 3>> s)
        : solver_error(msg, 3), samples(std::move(s)) {}
};

struct GroundState {
    Field field;
    double omega = 0.0;
    FunctionalReport report;
    double residual = 0.0;        // relative dealiased equation residual
    double boundary_decay = 0.0;  // outer-shell max / global max
    int iterations = 0;
    bool box_flag = false;        // boundary_decay above threshold
};

// Canonical initial guess: radial Gaussian with amplitude balancing the
// Nehari ratio to ~1 at the given omega.
Field canonical_init(const SpectralGrid& g, const ProblemParams& pp, double omega);

GroundState petviashvili_solve(const ProblemParams& pp, double omega,
                               const Field& init, const SolverOptions& opts);

struct DescentResult {
    Field w;                  // normalized minimizer: K_high = mass = 1
    double W_min = 0.0;
    double grad_norm = 0.0;   // projected-gradient quadratic form at w
    int iterations = 0;
    std::string termination;  // "w_plateau" | "stationary" | "linesearch" | "maxiter"
    double min_lp_norm = 0.0; // min ||w_k||_{L^p} along accepted iterates
};

DescentResult weinstein_descent(const ProblemParams& pp, const Field& init,
                                const SolverOptions& opts);

// Q(x) = lambda w(mu x) realized exactly by box rescale; omega from the
// Euler-Lagrange multiplier. Residual and report evaluated on the result.
GroundState rescale_to_solution(const DescentResult& d, const ProblemParams& pp,
                                const SolverOptions& opts);

struct CriticalMassResult {
    double omega_star = 0.0;
    GroundState ground;     // route A state (equation-exact)
    GroundState ground_w;   // route W state (dilation-stationary)
    DescentResult descent;
    double c0_routeA = 0.0;
    double c0_routeW = 0.0;
    double c0_formula = 0.0;
    double C_best = 0.0;    // 1 / W_min
    double W_min = 0.0;
};

// Route A alone: bisection of g(omega) = J(Q_omega)/kinetic over a geometric
// bracket; sign changes with unresolved endpoints (boundary decay > 0.1) are
// rejected. Throws bracket_failure_error with all samples if none remains.
std::pair<double, GroundState> route_a_search(const ProblemParams& pp,
                                              const SpectralGrid& g,
                                              const SolverOptions& opts);

CriticalMassResult critical_mass_search(const ProblemParams& pp,
                                        const SpectralGrid& g,
                                        const SolverOptions& opts);

struct FlowResult {
    Field u;
    double m_c = 0.0;
    int iterations = 0;
    std::string status;            // "stationary" | "delocalized" | "maxiter" | "stall"
    double min_threshold_margin = 0.0;  // min over iterates of the (c') margin
    double kinetic_scale = 0.0;         // kinetic sum at termination
};

FlowResult mass_constrained_flow(const ProblemParams& pp, double c,
                                 const Field& init, const SolverOptions& opts);

}  // namespace gnmln
