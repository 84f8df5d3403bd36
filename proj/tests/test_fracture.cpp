#include "doctest.h"

#include <cmath>
#include <vector>

#include "cscrack/errors.hpp"
#include "cscrack/fracture.hpp"
#include "cscrack/material.hpp"

using namespace cscrack;

TEST_CASE("SIF definitions") {
    const auto sol = make_wh_solution(0.5, 0.3, 0.8, 1.0, 10.0);
    CHECK(sif_classical(1.0, 10.0) == doctest::Approx(std::sqrt(0.2)));
    CHECK(sif_dynamic(sol) / sif_classical(1.0, 10.0) == doctest::Approx(1.0 / sol.n_plus_load));
    CHECK(sif_dynamic(sol) > 0.0);
    CHECK_THROWS_AS(sif_static(0.3, 0.0, 1.0, 10.0), DomainError);
}

TEST_CASE("static SIF tends to sqrt(3 - 2 nu) times classical as l/L -> 0") {
    for (double nu : {0.0, 0.3, 0.49}) {
        const double L = 1e7;
        const double r = sif_static(nu, 1.0 / L, 1.0, L) / sif_classical(1.0, L);
        CHECK(std::abs(r - std::sqrt(3.0 - 2.0 * nu)) < 1e-3);
    }
}

TEST_CASE("dynamic SIF follows the classical-limit ratio for m > 0") {
    const double m = 0.5, nu = 0.3;
    const auto ctx = make_kernel_context(m, nu, 0.8);
    const double limit = 1.0 / std::sqrt(kernel_N0(ctx));
    double prev = 1e9;
    for (double L : {1e2, 1e3, 1e4}) {
        const auto sol = make_wh_solution(m, nu, 0.8, 1.0, L);
        const double e = std::abs(sif_dynamic(sol) / sif_classical(1.0, L) - limit);
        CHECK(e < prev);
        prev = e;
    }
    CHECK(prev < 1e-2 * limit);
}

TEST_CASE("dynamic SIF reduces to the static one at small m") {
    const auto r = sif_ratio_dynamic_static({0.0, 1e-3}, 0.3, 0.8, 10.0);
    CHECK(r[0].value == 1.0);
    CHECK(std::abs(r[1].value - 1.0) < 1e-3);
    const auto bad = sif_ratio_dynamic_static({0.99}, 0.3, 0.8, 10.0);
    CHECK(bad[0].error);
}

TEST_CASE("SIF ratio grows toward the Rayleigh speed at h0*") {
    const double h = h0_star(0.3), mr = max_sub_rayleigh_speed(0.3, h);
    const auto r = sif_ratio_dynamic_static({0.5 * mr, 0.9 * mr, 0.99 * mr}, 0.3, h, 10.0, 3);
    CHECK(r[0].value == doctest::Approx(1.013741).epsilon(1e-5));
    CHECK(r[1].value == doctest::Approx(1.227122).epsilon(1e-5));
    CHECK(r[2].value == doctest::Approx(2.449016).epsilon(1e-5));
}

TEST_CASE("energy release rates") {
    const double cr = classical_rayleigh_speed(0.3);
    const auto jc = err_classical(0.5, 0.3, 1.0, 10.0);
    CHECK_FALSE(jc.divergent);
    CHECK(rayleigh_function_R(0.5, 0.3) == doctest::Approx(0.2755918416).epsilon(1e-9));
    CHECK(jc.value == doctest::Approx(0.25 * std::sqrt(0.75) / (10.0 * rayleigh_function_R(0.5, 0.3))));
    CHECK(err_classical(cr, 0.3, 1.0, 10.0).divergent);
    CHECK_THROWS_AS(err_classical(0.95, 0.3, 1.0, 10.0), DomainError);
    // R vanishes like m^2, so the static limit is (1 - nu) T0^2/(mu L).
    CHECK(err_classical(1e-3, 0.3, 1.0, 10.0).value == doctest::Approx(0.07).epsilon(1e-5));

    const auto sol = make_wh_solution(0.5, 0.3, 0.8, 1.0, 10.0);
    CHECK(err_dynamic(sol) == doctest::Approx(err_from_sif(sif_dynamic(sol), 0.5, 0.3)).epsilon(1e-12));
    CHECK(err_ratio(sol) == doctest::Approx(err_dynamic(sol) / jc.value).epsilon(1e-12));
}

TEST_CASE("dynamic ERR stays finite up to the Rayleigh speed") {
    for (double h0 : {0.0, 0.8, h0_star(0.3), 1.5}) {
        const double mr = max_sub_rayleigh_speed(0.3, h0);
        for (double f : {0.2, 0.8, 0.99, 0.9999}) {
            const auto sol = make_wh_solution(f * mr, 0.3, h0, 1.0, 10.0);
            const double j = err_dynamic(sol);
            CHECK(std::isfinite(j));
            CHECK(j > 0.0);
        }
    }
}

TEST_CASE("ERR ratio limits and monotonicity") {
    const auto far = make_wh_solution(0.5, 0.3, 0.8, 1.0, 1e4);
    CHECK(std::abs(err_ratio(far) - 1.0) < 1e-3);
    double prev = 0.0;
    for (double L : {1e4, 1e3, 1e2, 10.0, 1.0}) {
        const double r = err_ratio(make_wh_solution(0.5, 0.3, 0.8, 1.0, L));
        if (prev > 0.0) CHECK(r < prev);
        prev = r;
    }
    // Toward the classical Rayleigh speed the ratio falls to zero.
    const double h = h0_star(0.3), mr = max_sub_rayleigh_speed(0.3, h);
    double last = 2.0;
    for (double f : {0.3, 0.6, 0.9, 0.99, 0.9999, 0.999999}) {
        const double r = err_ratio(make_wh_solution(f * mr, 0.3, h, 1.0, 10.0));
        CHECK(r < last);
        last = r;
    }
    CHECK(last < 1e-2);
}

TEST_CASE("N+ squared approaches N(0) monotonically") {
    const auto ctx = make_kernel_context(0.5, 0.3, 0.8);
    double prev = 1e9;
    for (double L : {1e2, 1e3, 1e4}) {
        const auto sol = make_wh_solution(0.5, 0.3, 0.8, 1.0, L);
        const double e = std::abs(sol.n_plus_load * sol.n_plus_load - kernel_N0(ctx));
        CHECK(e < prev);
        prev = e;
    }
}

TEST_CASE("fracture report") {
    const auto sol = make_wh_solution(0.5, 0.3, 0.8, 1.0, 10.0);
    const auto r = fracture_report(sol);
    CHECK(r.m == 0.5);
    CHECK(r.K2_dynamic == sif_dynamic(sol));
    CHECK(r.K2_ratio_classical == doctest::Approx(1.0 / sol.n_plus_load));
    CHECK(r.J_ratio == doctest::Approx(r.J_dynamic / r.J_classical));
    CHECK_FALSE(r.J_classical_divergent);
}

TEST_CASE("static recovery across nu and L") {
    for (double nu : {0.0, 0.3, 0.49})
        for (double L : {1.0, 10.0, 100.0}) {
            const auto sol = make_wh_solution(1e-3, nu, 0.8, 1.0, L);
            CHECK(std::abs(sif_dynamic(sol) / sif_static(nu, 1.0 / L, 1.0, L) - 1.0) < 1e-3);
        }
}

TEST_CASE("ERR ratio stays below one at L/l = 10") {
    for (double h0 : {0.0, 0.8, h0_star(0.3), 1.5})
        for (double f : {0.1, 0.5, 0.9}) {
            const double m = f * max_sub_rayleigh_speed(0.3, h0);
            CHECK(err_ratio(make_wh_solution(m, 0.3, h0, 1.0, 10.0)) < 1.0);
        }
}

TEST_CASE("quasi-static ERR is the m -> 0 limit") {
    const auto qs = make_quasi_static_solution(0.3, 1.0, 10.0);
    const auto slow = make_wh_solution(1e-3, 0.3, 0.8, 1.0, 10.0);
    CHECK(err_dynamic(qs) == doctest::Approx(err_dynamic(slow)).epsilon(1e-5));
    CHECK(err_ratio(qs) == doctest::Approx(err_ratio(slow)).epsilon(1e-5));
    CHECK(static_err_classical(0.3, 1.0, 10.0) == doctest::Approx(err_classical(1e-4, 0.3, 1.0, 10.0).value).epsilon(1e-7));
    const auto r = fracture_report(qs);
    CHECK(r.K2_ratio_static == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(r.J_ratio == doctest::Approx(r.J_dynamic / r.J_classical));
}
