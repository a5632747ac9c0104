#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gnmln/params.hpp"

using namespace gnmln;

namespace {
const ProblemParams R1{1, 0.5, 1.0, 5.0};
const ProblemParams R2{3, 0.5, 1.0, 3.0};
const ProblemParams R3{1, 0.3, 0.7, 3.5};
}  // namespace

TEST_CASE("exponents: reference configurations") {
    GnExponents e = gn_exponents(R1);
    CHECK(e.exp_low == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.exp_high == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.exp_mass == doctest::Approx(3.0).epsilon(1e-14));
    e = gn_exponents(R2);
    CHECK(e.exp_low == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(e.exp_high == doctest::Approx(1.0).epsilon(1e-14));
    e = gn_exponents(R3);
    CHECK(e.exp_low == doctest::Approx(1.625).epsilon(1e-14));
    CHECK(e.exp_high == doctest::Approx(0.375).epsilon(1e-14));
    CHECK(e.exp_mass == doctest::Approx(1.5).epsilon(1e-14));
}

TEST_CASE("exponents: always sum to 2 inside the window") {
    for (double sl : {0.2, 0.45, 0.8})
        for (double sh : {0.9, 1.0})
            for (int dim : {1, 2, 3}) {
                const double lo = 2.0 + 4.0 * sl / dim, hi = 2.0 + 4.0 * sh / dim;
                const ProblemParams pp{dim, sl, sh, 0.5 * (lo + hi)};
                const GnExponents e = gn_exponents(pp);
                CHECK(e.exp_low + e.exp_high == doctest::Approx(2.0).epsilon(1e-13));
                CHECK(e.exp_low > 0.0);
                CHECK(e.exp_high > 0.0);
            }
}

TEST_CASE("validation: p window and parameter ranges") {
    CHECK_THROWS_AS(validate(ProblemParams{1, 0.5, 1.0, 3.0}), validation_error);
    CHECK_THROWS_AS(validate(ProblemParams{1, 0.5, 1.0, 4.0}), validation_error);
    CHECK_THROWS_AS(validate(ProblemParams{1, 0.5, 1.0, 6.0}), validation_error);
    CHECK_THROWS_AS(validate(ProblemParams{3, 0.5, 1.0, 2.1}), validation_error);
    CHECK_THROWS_AS(validate(ProblemParams{1, 1.0, 1.0, 5.0}), validation_error);
    CHECK_THROWS_AS(validate(ProblemParams{1, 0.7, 0.5, 3.5}), validation_error);
    CHECK_THROWS_AS(validate(ProblemParams{1, 0.0, 1.0, 5.0}), validation_error);
    CHECK_THROWS_AS(validate(ProblemParams{0, 0.5, 1.0, 5.0}), validation_error);
    CHECK_THROWS_AS(validate(ProblemParams{1, 0.5, 1.1, 5.0}), validation_error);
    CHECK_NOTHROW(validate(R1));
    CHECK_NOTHROW(validate(R2));
    CHECK_NOTHROW(validate(R3));
}

TEST_CASE("critical mass: closed form and round trip") {
    CHECK(critical_mass_from_constant(1.0, R2) == doctest::Approx(9.0).epsilon(1e-13));
    for (const ProblemParams& pp : {R1, R2, R3})
        for (double C : {0.2, 1.0, 3.7}) {
            const double c0 = critical_mass_from_constant(C, pp);
            CHECK(constant_from_critical_mass(c0, pp) ==
                  doctest::Approx(C).epsilon(1e-12));
        }
    CHECK_THROWS_AS(critical_mass_from_constant(0.0, R1), validation_error);
    CHECK_THROWS_AS(constant_from_critical_mass(-1.0, R1), validation_error);
}

TEST_CASE("threshold coefficient: value, two forms, c0 relation") {
    CHECK(threshold_coefficient(R2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    for (const ProblemParams& pp : {R1, R2, R3}) {
        CHECK(threshold_coefficient(pp) ==
              doctest::Approx(threshold_coefficient_alt(pp)).epsilon(1e-14));
        // K = C^{-1} c0^{-(p-2)/2} independently of C
        for (double C : {0.5, 2.7}) {
            const double c0 = critical_mass_from_constant(C, pp);
            CHECK(threshold_coefficient(pp) ==
                  doctest::Approx(std::pow(c0, -(pp.p - 2.0) / 2.0) / C)
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("mass scaling exponents") {
    const MassScalingExponents m = mass_scaling_exponents(R2);
    CHECK(m.a == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m.b == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(m.theta == doctest::Approx(3.0).epsilon(1e-14));
    CHECK_THROWS_AS(mass_scaling_exponents(R3), validation_error);
}

TEST_CASE("seminorm ratio targets") {
    CHECK(beta_target(R1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(beta_target(R2) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(beta_target(R3) == doctest::Approx(13.0 / 3.0).epsilon(1e-13));
    CHECK(gamma_target(R1) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(gamma_target(R2) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
}
