#include "doctest.h"

#include <cmath>
#include <vector>

#include "cscrack/dispersion.hpp"
#include "cscrack/errors.hpp"
#include "cscrack/material.hpp"

using namespace cscrack;

TEST_CASE("shear dispersion branch") {
    // h0 = 1 is dispersion-free.
    for (double xi : {0.01, 1.0, 50.0}) CHECK(shear_phase_velocity(xi, 1.0) == doctest::Approx(1.0));
    CHECK(shear_phase_velocity(1e-6, 0.5) == doctest::Approx(1.0));
    CHECK(shear_phase_velocity(1e6, 2.0) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(shear_phase_velocity(1e5, 0.0) == doctest::Approx(1e5).epsilon(1e-6));
    CHECK(shear_dispersion_kind(2.0) == ShearDispersion::Normal);
    CHECK(shear_dispersion_kind(0.5) == ShearDispersion::Anomalous);
    CHECK(shear_dispersion_kind(1.0) == ShearDispersion::None);
    CHECK_THROWS_AS(shear_omega(0.0, 1.0), DomainError);
}

TEST_CASE("group velocity is the derivative of omega") {
    for (double h0 : {0.0, 0.5, 1.0, 1.3, 2.0})
        for (double xi : {0.05, 0.7, 3.0, 40.0}) {
            const double h = 1e-5 * xi;
            const double fd = (shear_omega(xi + h, h0) - shear_omega(xi - h, h0)) / (2.0 * h);
            CHECK(shear_group_velocity(xi, h0) == doctest::Approx(fd).epsilon(1e-7));
            const double dcdxi = (shear_phase_velocity(xi + h, h0) - shear_phase_velocity(xi - h, h0)) / (2.0 * h);
            // Normal dispersion: c_ph decreases, group below phase.
            if (h0 > 1.0) {
                CHECK(dcdxi < 0.0);
                CHECK(shear_group_velocity(xi, h0) < shear_phase_velocity(xi, h0));
            }
            if (h0 < 1.0) {
                CHECK(dcdxi > 0.0);
                CHECK(shear_group_velocity(xi, h0) > shear_phase_velocity(xi, h0));
            }
        }
}

TEST_CASE("Rayleigh determinant against its closed form") {
    for (double h0 : {0.0, 0.8, 1.5})
        for (double xi : {0.3, 2.0, 10.0}) {
            const double c = 0.9 * rayleigh_speed_cap(xi, 0.3, h0);
            const double w = c * xi;
            const auto a = rayleigh_auxiliaries(c, xi, 0.3, h0);
            const double bs = std::sqrt(a.beta_s2), gs = std::sqrt(a.gamma_s2);
            const double x2 = xi * xi;
            const double oracle = 2.0 * (2.0 * x2 - w * w) * (2.0 * x2 - w * w) *
                                      (gs * a.tau_s * a.tau_s + bs * a.sigma_s * a.sigma_s) -
                                  8.0 * x2 * a.beta_p * bs * gs * a.Delta_s;
            const double got = rayleigh_determinant(c, xi, 0.3, h0);
            // Same sign; the implementation row-scales, so compare after normalizing at a second speed.
            const double c2 = 0.6 * rayleigh_speed_cap(xi, 0.3, h0);
            const auto a2 = rayleigh_auxiliaries(c2, xi, 0.3, h0);
            const double w2 = c2 * xi;
            const double bs2 = std::sqrt(a2.beta_s2), gs2 = std::sqrt(a2.gamma_s2);
            const double oracle2 = 2.0 * (2.0 * x2 - w2 * w2) * (2.0 * x2 - w2 * w2) *
                                       (gs2 * a2.tau_s * a2.tau_s + bs2 * a2.sigma_s * a2.sigma_s) -
                                   8.0 * x2 * a2.beta_p * bs2 * gs2 * a2.Delta_s;
            CHECK((got > 0.0) == (oracle > 0.0));
            CHECK((rayleigh_determinant(c2, xi, 0.3, h0) > 0.0) == (oracle2 > 0.0));
        }
}

TEST_CASE("Rayleigh root is a zero of the closed-form determinant") {
    for (double h0 : {0.0, 0.8, 1.2, 2.0})
        for (double xi : {0.1, 1.5, 10.0}) {
            const double c = rayleigh_phase_velocity(xi, 0.3, h0);
            const double w = c * xi;
            const auto a = rayleigh_auxiliaries(c * (1.0 - 1e-12), xi, 0.3, h0);
            const double bs = std::sqrt(a.beta_s2), gs = std::sqrt(a.gamma_s2);
            const double x2 = xi * xi;
            const double t1 = 2.0 * (2.0 * x2 - w * w) * (2.0 * x2 - w * w) * (gs * a.tau_s * a.tau_s + bs * a.sigma_s * a.sigma_s);
            const double t2 = 8.0 * x2 * a.beta_p * bs * gs * a.Delta_s;
            CHECK(std::abs(t1 - t2) < 1e-6 * std::max(std::abs(t1), std::abs(t2)));
        }
}

TEST_CASE("Rayleigh dispersion limits") {
    const double cr = classical_rayleigh_speed(0.3);
    for (double h0 : {0.0, 0.8, 1.0, 1.2, 2.0})
        CHECK(rayleigh_phase_velocity(1e-3, 0.3, h0) == doctest::Approx(cr).epsilon(1e-4));
    CHECK(rayleigh_phase_velocity(100.0, 0.3, 1.2) == doctest::Approx(1.0 / 1.2).epsilon(1e-3));
    CHECK(rayleigh_phase_velocity(100.0, 0.3, 2.0) == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(rayleigh_phase_velocity(1000.0, 0.3, 0.8) == doctest::Approx(1.25).epsilon(1e-6));
    CHECK(rayleigh_large_wavenumber_limit(0.3, 2.0) == doctest::Approx(0.5));
    // h0 below 1/sqrt(2): bounded by the dilatational speed.
    const double cp = 1.0 / c_ratio(0.3);
    CHECK(rayleigh_large_wavenumber_limit(0.3, 0.0) < cp);
    CHECK(rayleigh_large_wavenumber_limit(0.3, 0.0) == doctest::Approx(rayleigh_phase_velocity(100.0, 0.3, 0.0)).epsilon(1e-4));
}

TEST_CASE("Rayleigh curve stays at or below the cap and is smooth") {
    std::vector<double> grid;
    for (double e = -3.0; e <= 2.0 + 1e-9; e += 0.05) grid.push_back(std::pow(10.0, e));
    for (double h0 : {0.0, 0.6, 1.078, 1.5}) {
        const auto c = rayleigh_curve(grid, 0.3, h0);
        REQUIRE(c.size() == grid.size());
        for (std::size_t i = 0; i < c.size(); ++i) {
            CHECK(c[i] > 0.0);
            CHECK(c[i] <= rayleigh_speed_cap(grid[i], 0.3, h0) * (1.0 + 1e-12));
            if (i > 0) CHECK(std::abs(c[i] - c[i - 1]) < 0.1 * c[i]);
        }
        // Continuation agrees with unseeded solves.
        for (std::size_t i = 0; i < c.size(); i += 20)
            CHECK(c[i] == doctest::Approx(rayleigh_phase_velocity(grid[i], 0.3, h0)).epsilon(1e-8));
    }
}

TEST_CASE("auxiliaries reject speeds without surface decay") {
    CHECK_THROWS_AS(rayleigh_auxiliaries(1.1, 0.5, 0.3, 1.0), DomainError);
    CHECK_THROWS_AS(rayleigh_auxiliaries(-0.1, 0.5, 0.3, 1.0), DomainError);
}
