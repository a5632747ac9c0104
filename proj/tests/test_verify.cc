#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gnmln/verify.hpp"

using namespace gnmln;

namespace {
const ProblemParams R1{1, 0.5, 1.0, 5.0};
const ProblemParams R2{3, 0.5, 1.0, 3.0};
const SolverOptions kOpts;

// synthetic state whose report satisfies Nehari/Pohozaev/virial exactly:
// norms of the continuum solution structure with J = 0 at omega
GroundState synthetic_state(const ProblemParams& pp, double omega) {
    const GnExponents e = gn_exponents(pp);
    GroundState g;
    g.omega = omega;
    const double P = pp.p;  // arbitrary positive potential
    g.report.potential = P;
    g.report.kinetic_high = e.exp_high / pp.p * P;
    g.report.kinetic_low = e.exp_low / pp.p * P;
    g.report.mass = (1.0 - 2.0 / pp.p) * P / omega;
    g.report.energy = 0.5 * g.report.kinetic_high + 0.5 * g.report.kinetic_low -
                      P / pp.p;
    return g;
}
}  // namespace

TEST_CASE("residuals vanish on an exact state and respond to perturbation") {
    for (const ProblemParams& pp : {R1, R2}) {
        GroundState g = synthetic_state(pp, 1.3);
        CHECK(nehari_residual(g, pp) < 1e-15);
        CHECK(pohozaev_residual(g, pp) < 1e-15);
        CHECK(virial_residual(g, pp) < 1e-15);
        CHECK(energy_residual(g, pp) < 1e-15);
        const SeminormIdentityReport s = seminorm_identities(g, pp);
        CHECK(s.residuals[0] < 1e-15);
        CHECK(s.residuals[1] < 1e-15);
        CHECK(s.beta == doctest::Approx(s.beta_target).epsilon(1e-14));
        CHECK(s.gamma == doctest::Approx(s.gamma_target).epsilon(1e-14));
        // +1% amplitude: u -> 1.01 u scales norms by 1.01^2, potential by 1.01^p
        GroundState gp = g;
        const double a2 = 1.01 * 1.01;
        gp.report.kinetic_high *= a2;
        gp.report.kinetic_low *= a2;
        gp.report.mass *= a2;
        gp.report.potential *= std::pow(1.01, pp.p);
        const double nr = nehari_residual(gp, pp);
        CHECK(nr > 1e-3);
        CHECK(nr < 1e-1);
    }
    GroundState zero;
    zero.omega = 1.0;
    CHECK_THROWS_AS(nehari_residual(zero, R1), validation_error);
    CHECK_THROWS_AS(pohozaev_residual(zero, R1), validation_error);
    CHECK_THROWS_AS(energy_residual(zero, R1), validation_error);
}

TEST_CASE("seminorm identity targets for the 3D reference parameters") {
    const GroundState g = synthetic_state(R2, 0.7);
    const SeminormIdentityReport s = seminorm_identities(g, R2);
    CHECK(s.beta_target == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s.gamma_target == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("optimality certificate: assembly, stickiness, determinism") {
    const SpectralGrid g = make_grid(1, 256, 24.0);
    const CriticalMassResult r = critical_mass_search(R1, g, kOpts);
    const Certificate a = optimality_certificate(r, R1, 100, 42);
    const Certificate b = optimality_certificate(r, R1, 100, 42);
    CHECK(certificate_to_json(a) == certificate_to_json(b));
    CHECK(a.gn_sample_count == 100);
    CHECK(a.gn_sample_violations == 0);
    CHECK((a.status == "PASS" || a.status == "FAIL"));
    CHECK((a.failures.empty() == (a.status == "PASS")));
    CHECK(a.c0_routeA > 0.0);
    CHECK(std::abs(a.c0_routeW - a.c0_formula) <= 1e-10 * a.c0_formula);
    CHECK(a.omega > 0.0);

    const std::string row = certificate_csv_row(a);
    CHECK(row.rfind("1,0.5,1,5,", 0) == 0);
    int commas = 0;
    for (char ch : row) commas += ch == ',';
    CHECK(commas == 18);  // 19 columns
    const std::string json = certificate_to_json(a);
    CHECK(json.find("\"status\"") != std::string::npos);
    CHECK(json.find("\"thresholds\"") != std::string::npos);
}

TEST_CASE("theorem 1.4 battery: strict negativity and (c') along the flow") {
    const SpectralGrid g = make_grid(1, 256, 24.0);
    const CriticalMassResult r = critical_mass_search(R1, g, kOpts);
    const BatteryReport b =
        theorem14_battery(R1, r.c0_routeA, r.ground.field, kOpts);
    CHECK(b.high_negative);
    CHECK(b.flow_high.m_c < 0.0);
    CHECK(b.low_no_negative);
    CHECK(b.low_cprime_ok);
    CHECK_THROWS_AS(theorem14_battery(R1, -1.0, r.ground.field, kOpts),
                    validation_error);
}

TEST_CASE("sampled inequality suite: no violations, single-mode equality") {
    const SpectralGrid g = make_grid(1, 256, 16.0);
    const InequalitySuiteReport rep = sampled_inequality_suite(R1, g, 200, 9);
    CHECK(rep.samples == 200);
    CHECK(rep.interpolation_violations == 0);
    CHECK(rep.holder_violations == 0);
    CHECK(rep.max_interpolation_excess <= 0.0);
    CHECK(rep.max_holder_excess <= 0.0);
    CHECK(rep.single_mode_equality_error < 1e-10);
    CHECK(rep.best_const_mixed > 0.0);
    CHECK(rep.pass);
}
