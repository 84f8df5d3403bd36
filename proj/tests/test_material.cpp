#include "doctest.h"

#include <cmath>

#include "cscrack/errors.hpp"
#include "cscrack/material.hpp"

using namespace cscrack;

TEST_CASE("classical Rayleigh speed") {
    CHECK(classical_rayleigh_speed(0.3) == doctest::Approx(0.9274127097).epsilon(1e-9));
    CHECK(classical_rayleigh_speed(0.0) == doctest::Approx(0.874).epsilon(0.002));
    CHECK(classical_rayleigh_speed(0.4999) == doctest::Approx(0.955).epsilon(0.002));
    double prev = 0.0;
    for (double nu = 0.0; nu < 0.5; nu += 0.05) {
        const double cr = classical_rayleigh_speed(nu);
        CHECK(cr > prev);
        CHECK(std::abs(rayleigh_function_R(cr, nu)) < 1e-12);
        prev = cr;
    }
}

TEST_CASE("h0 star is the reciprocal Rayleigh speed") {
    CHECK(h0_star(0.3) == doctest::Approx(1.0782686).epsilon(1e-6));
    for (double nu = 0.0; nu < 0.5; nu += 0.1) {
        CHECK(h0_star(nu) * classical_rayleigh_speed(nu) == doctest::Approx(1.0));
        CHECK(h0_star(nu) > 1.046 - 1e-3);
        CHECK(h0_star(nu) < 1.144 + 1e-3);
    }
}

TEST_CASE("sub-Rayleigh boundary") {
    const double cr = classical_rayleigh_speed(0.3);
    CHECK(max_sub_rayleigh_speed(0.3, 0.0) == doctest::Approx(cr));
    CHECK(max_sub_rayleigh_speed(0.3, 0.5) == doctest::Approx(cr));
    CHECK(max_sub_rayleigh_speed(0.3, 2.0) == doctest::Approx(0.5));
    CHECK(max_sub_rayleigh_speed(0.3, h0_star(0.3)) == doctest::Approx(cr));
    CHECK(regime(0.4, 0.3, 2.0) == Regime::SubRayleigh);
    CHECK(regime(0.6, 0.3, 2.0) == Regime::SuperRayleigh);
    CHECK(regime(cr, 0.3, 0.0) == Regime::SuperRayleigh);
}

TEST_CASE("wave-speed factor and validation") {
    CHECK(c_ratio(0.3) == doctest::Approx(std::sqrt(0.4 / 1.4)));
    CHECK(d_factor(0.0, 0.3) == doctest::Approx(1.0));
    CHECK_THROWS_AS(d_factor(2.0, 0.3), DomainError);
    CHECK_THROWS_AS(c_ratio(0.5), DomainError);
    CHECK_THROWS_AS(c_ratio(-0.1), DomainError);
    CHECK_THROWS_AS(validate(MaterialConfig{0.3, -1.0}), DomainError);
    CHECK_THROWS_AS(validate(CrackState{0.95, 1.0, 10.0}, MaterialConfig{0.3, 0.0}), DomainError);
    CHECK_NOTHROW(validate(CrackState{0.5, 1.0, 10.0}, MaterialConfig{0.3, 0.8}));
    CHECK_THROWS_AS(validate(CrackState{0.5, 0.0, 10.0}, MaterialConfig{0.3, 0.8}), DomainError);
}

TEST_CASE("Q has an expanded and a factored form") {
    const double cr = classical_rayleigh_speed(0.3);
    for (int k = 1; k < 20; ++k) {
        const double m = cr * k / 20.0;
        const double q = q_function(m, 0.3);
        CHECK(std::abs(q - q_function_factored(m, 0.3)) <= 1e-12 * std::abs(q));
        CHECK(q > 0.0);
    }
}

TEST_CASE("Q/R tends to 3 - 2 nu") {
    for (double nu : {0.0, 0.3, 0.49}) {
        auto ratio = [nu](double m) { return q_function(m, nu) / rayleigh_function_R(m, nu); };
        // Error is O(m^2): one Richardson step over m = 1e-2, 1e-3.
        const double r2 = ratio(1e-2), r3 = ratio(1e-3);
        const double extrap = r3 + (r3 - r2) / 99.0;
        CHECK(std::abs(extrap - (3.0 - 2.0 * nu)) < 1e-4);
        CHECK(std::abs(ratio(1e-4) - (3.0 - 2.0 * nu)) < 1e-4);
    }
}
