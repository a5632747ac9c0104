#include "gnmln/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace gnmln {

namespace {

double rel(double lhs, double scale) { return std::abs(lhs) / scale; }

std::uint64_t sample_seed(std::uint64_t seed, int i) {
    return seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(i + 1);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

double nehari_residual(const GroundState& g, const ProblemParams&) {
    const FunctionalReport& r = g.report;
    const double lhs =
        r.kinetic_high + r.kinetic_low + g.omega * r.mass - r.potential;
    const double den =
        r.kinetic_high + r.kinetic_low + g.omega * r.mass + r.potential;
    if (!(den > 0.0)) throw validation_error("Nehari residual undefined for zero field");
    return rel(lhs, den);
}

double pohozaev_residual(const GroundState& g, const ProblemParams& pp) {
    const FunctionalReport& r = g.report;
    const double N = pp.dim;
    const double a = (N - 2.0 * pp.s_high) / 2.0, b = (N - 2.0 * pp.s_low) / 2.0;
    const double lhs = a * r.kinetic_high + b * r.kinetic_low +
                       0.5 * N * g.omega * r.mass - N / pp.p * r.potential;
    const double den = std::abs(a * r.kinetic_high) + std::abs(b * r.kinetic_low) +
                       0.5 * N * g.omega * r.mass + N / pp.p * r.potential;
    if (!(den > 0.0)) throw validation_error("Pohozaev residual undefined for zero field");
    return rel(lhs, den);
}

double virial_residual(const GroundState& g, const ProblemParams& pp) {
    const FunctionalReport& r = g.report;
    const double q = pp.dim * (pp.p - 2.0) / (2.0 * pp.p);
    const double lhs =
        pp.s_high * r.kinetic_high + pp.s_low * r.kinetic_low - q * r.potential;
    const double den =
        pp.s_high * r.kinetic_high + pp.s_low * r.kinetic_low + q * r.potential;
    if (!(den > 0.0)) throw validation_error("virial residual undefined for zero field");
    return rel(lhs, den);
}

double energy_residual(const GroundState& g, const ProblemParams&) {
    const double kin = g.report.kinetic_high + g.report.kinetic_low;
    if (!(kin > 0.0)) throw validation_error("energy residual undefined for zero field");
    return rel(g.report.energy, kin);
}

SeminormIdentityReport seminorm_identities(const GroundState& g,
                                           const ProblemParams& pp) {
    const GnExponents e = gn_exponents(pp);
    const FunctionalReport& r = g.report;
    SeminormIdentityReport out;
    const double th = e.exp_high / pp.p * r.potential;
    const double tl = e.exp_low / pp.p * r.potential;
    out.residuals = {rel(r.kinetic_high - th, th), rel(r.kinetic_low - tl, tl)};
    out.beta = r.kinetic_low / r.kinetic_high;
    out.beta_target = beta_target(pp);
    out.gamma = r.kinetic_low / r.potential;
    out.gamma_target = gamma_target(pp);
    return out;
}

Certificate optimality_certificate(const CriticalMassResult& r,
                                   const ProblemParams& pp, int n_samples,
                                   std::uint64_t seed) {
    validate(pp);
    Certificate c;
    c.params = pp;
    c.c0_routeA = r.c0_routeA;
    c.c0_routeW = r.c0_routeW;
    c.c0_formula = r.c0_formula;
    c.C_best = r.C_best;
    c.omega = r.omega_star;

    const GroundState& g = r.ground;
    const SeminormIdentityReport si = seminorm_identities(g, pp);
    c.beta = si.beta;
    c.beta_target = si.beta_target;
    c.gamma = si.gamma;
    c.gamma_target = si.gamma_target;
    c.seminorm_identity_residuals = si.residuals;
    c.nehari_residual = nehari_residual(g, pp);
    c.pohozaev_residual = pohozaev_residual(g, pp);
    c.energy_residual = energy_residual(g, pp);
    c.threshold_margin_at_c0 = threshold_check_from(
        Norms{g.report.kinetic_low, g.report.kinetic_high, g.report.mass,
              g.report.potential},
        pp).margin;

    const double wq = g.report.weinstein;
    c.gn_sample_count = n_samples;
    const SpectralGrid& grid = g.field.grid;
    for (int i = 0; i < n_samples; ++i) {
        const Field u = random_smooth_field(grid, sample_seed(seed, i));
        if (weinstein(u, pp) < wq * (1.0 - c.thresholds.gn_sample_slack))
            ++c.gn_sample_violations;
    }

    const Thresholds& t = c.thresholds;
    auto check = [&c](bool ok, const char* name) {
        if (!ok) c.failures.emplace_back(name);
    };
    auto agree = [](double a, double b) {
        return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
    };
    check(agree(c.c0_routeA, c.c0_routeW) <= t.c0_agreement, "c0_routeA_vs_routeW");
    check(agree(c.c0_routeA, c.c0_formula) <= t.c0_agreement, "c0_routeA_vs_formula");
    check(agree(c.c0_routeW, c.c0_formula) <= t.c0_agreement, "c0_routeW_vs_formula");
    check(std::abs(c.beta - c.beta_target) <= t.seminorm * c.beta_target, "beta");
    check(std::abs(c.gamma - c.gamma_target) <= t.seminorm * c.gamma_target, "gamma");
    check(c.seminorm_identity_residuals[0] <= t.seminorm, "seminorm_high");
    check(c.seminorm_identity_residuals[1] <= t.seminorm, "seminorm_low");
    check(c.nehari_residual <= t.nehari, "nehari");
    check(c.pohozaev_residual <= t.pohozaev, "pohozaev");
    check(c.energy_residual <= t.nehari, "energy");
    check(std::abs(c.threshold_margin_at_c0) <= t.threshold_margin, "threshold_margin");
    check(c.gn_sample_violations == 0, "gn_samples");
    check(g.residual <= t.equation, "equation_residual");
    c.status = c.failures.empty() ? "PASS" : "FAIL";
    return c;
}

std::string certificate_to_json(const Certificate& c) {
    nlohmann::ordered_json j;
    j["params"] = {{"dim", c.params.dim},
                   {"s_low", c.params.s_low},
                   {"s_high", c.params.s_high},
                   {"p", c.params.p}};
    j["C_best"] = c.C_best;
    j["c0_routeA"] = c.c0_routeA;
    j["c0_routeW"] = c.c0_routeW;
    j["c0_formula"] = c.c0_formula;
    j["beta"] = c.beta;
    j["beta_target"] = c.beta_target;
    j["gamma"] = c.gamma;
    j["gamma_target"] = c.gamma_target;
    j["nehari_residual"] = c.nehari_residual;
    j["pohozaev_residual"] = c.pohozaev_residual;
    j["energy_residual"] = c.energy_residual;
    j["seminorm_identity_residuals"] = {c.seminorm_identity_residuals[0],
                                        c.seminorm_identity_residuals[1]};
    j["threshold_margin_at_c0"] = c.threshold_margin_at_c0;
    j["gn_sample_violations"] = c.gn_sample_violations;
    j["gn_sample_count"] = c.gn_sample_count;
    j["omega"] = c.omega;
    j["thresholds"] = {{"equation", c.thresholds.equation},
                       {"nehari", c.thresholds.nehari},
                       {"pohozaev", c.thresholds.pohozaev},
                       {"virial", c.thresholds.virial},
                       {"seminorm", c.thresholds.seminorm},
                       {"c0_agreement", c.thresholds.c0_agreement},
                       {"threshold_margin", c.thresholds.threshold_margin},
                       {"gn_sample_slack", c.thresholds.gn_sample_slack},
                       {"inequality_slack", c.thresholds.inequality_slack}};
    j["failures"] = c.failures;
    j["status"] = c.status;
    return j.dump(2);
}

const char* kCsvHeader =
    "# schema=1\n"
    "N,s_low,s_high,p,C_best,c0_routeA,c0_routeW,c0_formula,beta,beta_target,"
    "gamma,gamma_target,nehari,pohozaev,energy,threshold_margin,violations,"
    "omega,status";

std::string certificate_csv_row(const Certificate& c) {
    std::string row = std::to_string(c.params.dim);
    for (double v : {c.params.s_low, c.params.s_high, c.params.p, c.C_best,
                     c.c0_routeA, c.c0_routeW, c.c0_formula, c.beta,
                     c.beta_target, c.gamma, c.gamma_target, c.nehari_residual,
                     c.pohozaev_residual, c.energy_residual,
                     c.threshold_margin_at_c0})
        row += "," + fmt(v);
    row += "," + std::to_string(c.gn_sample_violations);
    row += "," + fmt(c.omega);
    row += "," + c.status;
    return row;
}

BatteryReport theorem14_battery(const ProblemParams& pp, double c0,
                                const Field& Q, const SolverOptions& opts) {
    validate(pp);
    if (!(c0 > 0.0)) throw validation_error("c0 must be positive");
    BatteryReport b;
    const Field init = gaussian_field(Q.grid, 1.0, 1.0);
    b.flow_low = mass_constrained_flow(pp, 0.8 * c0, init, opts);
    b.flow_c0 = mass_constrained_flow(pp, c0, Q, opts);
    b.flow_high = mass_constrained_flow(pp, 1.2 * c0, init, opts);
    const Thresholds t;
    b.high_negative = b.flow_high.m_c < 0.0;
    b.c0_small = std::abs(b.flow_c0.m_c) <= 1e-6 * b.flow_c0.kinetic_scale;
    b.low_no_negative = b.flow_low.m_c >= -1e-8 * b.flow_low.kinetic_scale;
    b.low_cprime_ok = b.flow_low.min_threshold_margin >= -t.inequality_slack;
    b.pass = b.high_negative && b.c0_small && b.low_no_negative && b.low_cprime_ok;
    return b;
}

InequalitySuiteReport sampled_inequality_suite(const ProblemParams& pp,
                                               const SpectralGrid& g,
                                               int n_samples, std::uint64_t seed) {
    validate(pp);
    InequalitySuiteReport rep;
    rep.samples = n_samples;
    const Thresholds t;
    const double N = pp.dim, p = pp.p;
    const double q1 = 2.0 + 4.0 * pp.s_low / N, q2 = 2.0 + 4.0 * pp.s_high / N;
    const double th1 = (q2 - p) / (q2 - q1), th2 = (p - q1) / (q2 - q1);
    const double ah = N * (p - 2.0) / (2.0 * pp.s_high);  // single-operator GN

    Fft fft(g);
    double max_i = -1.0, max_h = -1.0, best21 = 0.0, best22 = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        Field u = random_smooth_field(g, sample_seed(seed, i));
        const Norms n = compute_norms(fft, u, pp);
        // seminorm interpolation: K_low <= M^{1-sl/sh} K_high^{sl/sh}
        const double r = pp.s_low / pp.s_high;
        const double rhs_i = std::pow(n.mass, 1.0 - r) * std::pow(n.kinetic_high, r);
        max_i = std::max(max_i, (n.kinetic_low - rhs_i) / rhs_i);
        if (n.kinetic_low - rhs_i > t.inequality_slack * rhs_i)
            ++rep.interpolation_violations;
        // Hoelder chain through the two mass-critical exponents
        const double rhs_h = std::pow(lp_norm_p(u, q1), th1) *
                             std::pow(lp_norm_p(u, q2), th2);
        max_h = std::max(max_h, (n.potential - rhs_h) / rhs_h);
        if (n.potential - rhs_h > t.inequality_slack * rhs_h)
            ++rep.holder_violations;
        // informational empirical GN constants
        best21 = std::max(best21, 1.0 / weinstein_from(n, pp));
        best22 = std::max(best22,
                          n.potential / (std::pow(n.kinetic_high, ah / 2.0) *
                                         std::pow(n.mass, (p - ah) / 2.0)));
    }
    rep.max_interpolation_excess = max_i;
    rep.max_holder_excess = max_h;
    rep.best_const_mixed = best21;
    rep.best_const_high = best22;

    // single-mode equality case of the interpolation inequality
    {
        Field u(g);
        const int n1 = g.n_per_axis;
        const double k = g.freq(3);
        for (int i0 = 0; i0 < n1; ++i0) {
            const double v = std::cos(k * g.coord(i0));
            if (g.dim == 1) {
                u[i0] = v;
            } else {
                const std::size_t stride = u.size() / n1;
                for (std::size_t j = 0; j < stride; ++j) u[i0 * stride + j] = v;
            }
        }
        const Norms n = compute_norms(fft, u, pp);
        const double r = pp.s_low / pp.s_high;
        const double rhs = std::pow(n.mass, 1.0 - r) * std::pow(n.kinetic_high, r);
        rep.single_mode_equality_error = std::abs(n.kinetic_low - rhs) / rhs;
    }
    rep.pass = rep.interpolation_violations == 0 && rep.holder_violations == 0 &&
               rep.single_mode_equality_error <= t.inequality_slack;
    return rep;
}

}  // namespace gnmln
