#include "doctest.h"

#include <cmath>
#include <vector>

#include "cscrack/errors.hpp"
#include "cscrack/fields.hpp"
#include "cscrack/material.hpp"

using namespace cscrack;

namespace {

const WHSolution& reference() {
    static const WHSolution sol = make_wh_solution(0.5, 0.3, 0.8, 1.0, 10.0);
    return sol;
}

FieldOptions quadrature_only() {
    FieldOptions o;
    o.asymptote_below = 0.0;
    return o;
}

}  // namespace

TEST_CASE("quadrature approaches the near-tip terms") {
    const auto& sol = reference();
    const auto q = quadrature_only();
    double es = 1.0, eu = 1.0;
    for (double X : {1e-2, 1e-3, 1e-4}) {
        const double s = std::abs(sigma_yx_line(X, sol, q) / near_tip_sigma(X, sol) - 1.0);
        const double u = std::abs(u_x_line(-X, sol, q) / near_tip_u(-X, sol) - 1.0);
        CHECK(s < es);
        CHECK(u <= eu);
        es = s;
        eu = u;
    }
    CHECK(es < 0.005);
    CHECK(eu < 1e-3);
    // The next term of the expansion predicts the error at X = 0.01.
    const double e2 = sigma_yx_line(1e-2, sol, q) / near_tip_sigma(1e-2, sol) - 1.0;
    CHECK(e2 == doctest::Approx(-sol.n_plus_load * std::sqrt(kPi * 1e-2 / sol.L)).epsilon(0.05));
}

TEST_CASE("shear stress values and shape") {
    const auto& sol = reference();
    CHECK(sigma_yx_line(1.0, sol) == doctest::Approx(0.10855).epsilon(1e-4));
    CHECK(sigma_yx_line(30.0, sol) == doctest::Approx(3.4755e-3).epsilon(1e-3));
    std::vector<double> grid;
    for (double e = -2.0; e <= std::log10(30.0); e += 0.25) grid.push_back(std::pow(10.0, e));
    const auto c = curve(Quantity::SigmaYX, grid, sol, {}, 2);
    for (std::size_t i = 1; i < c.size(); ++i) {
        CHECK_FALSE(c[i].error);
        CHECK(c[i].value < c[i - 1].value);
    }
    // Far field: classical X^{-3/2} decay.
    const double slope = std::log(sigma_yx_line(1000.0, sol) / sigma_yx_line(300.0, sol)) / std::log(1000.0 / 300.0);
    CHECK(slope == doctest::Approx(-1.5).epsilon(0.02));
}

TEST_CASE("real-space equilibrium") {
    const auto& sol = reference();
    CHECK(sigma_yx_resultant(sol) == doctest::Approx(sol.T0).epsilon(5e-3));
}

TEST_CASE("crack-face displacement") {
    const auto& sol = reference();
    std::vector<double> grid{-20.0, -5.0, -1.0, -0.1, -0.01};
    const auto c = curve(Quantity::UX, grid, sol);
    for (std::size_t i = 0; i < c.size(); ++i) {
        CHECK_FALSE(c[i].error);
        CHECK(std::isfinite(c[i].value));
        CHECK(c[i].value > 0.0);
    }
    // Closes toward the tip.
    CHECK(c.back().value < c[2].value);
    CHECK(c.back().value == doctest::Approx(near_tip_u(-0.01, sol)).epsilon(0.01));
    // Faster cracks open more.
    const auto fast = make_wh_solution(0.7, 0.3, 0.8, 1.0, 10.0);
    CHECK(std::abs(u_x_line(-5.0, fast)) > std::abs(u_x_line(-5.0, sol)));
}

TEST_CASE("couple-stress on the crack line") {
    const double h = h0_star(0.3);
    const auto sol = make_wh_solution(0.3, 0.3, h, 1.0, 10.0);
    const auto q = quadrature_only();
    CHECK(m_xz_line(1e-3, sol, q) == doctest::Approx(-0.1596).epsilon(2e-3));
    CHECK(m_xz_line(2.0, sol, q) == doctest::Approx(2.66e-2).epsilon(5e-3));
    CHECK(std::abs(m_xz_line(1e-4, sol, q) - m_xz_line(1e-3, sol, q)) < 0.05 * std::abs(m_xz_line(1e-3, sol, q)));
    CHECK_THROWS_AS(m_xz_transform(1.0, make_classical_solution(0.3, 0.3, 1.0, 10.0)), DomainError);
}

TEST_CASE("slow cracks approach the stationary fields") {
    const auto slow = make_wh_solution(1e-2, 0.3, 0.8, 1.0, 10.0);
    const auto qs = make_quasi_static_solution(0.3, 1.0, 10.0);
    for (double X : {0.05, 1.0, 10.0}) {
        CHECK(sigma_yx_line(X, slow) == doctest::Approx(sigma_yx_line(X, qs)).epsilon(1e-2));
        CHECK(u_x_line(-X, slow) == doctest::Approx(u_x_line(-X, qs)).epsilon(1e-2));
    }
}

TEST_CASE("sampling rules and normalization") {
    const auto& sol = reference();
    CHECK_THROWS_AS(sigma_yx_line(-1.0, sol), DomainError);
    CHECK_THROWS_AS(u_x_line(1.0, sol), DomainError);
    CHECK_THROWS_AS(m_xz_line(0.0, sol), DomainError);
    CHECK(curve(Quantity::SigmaYX, {}, sol).empty());
    const auto bad = curve(Quantity::UX, {1.0, -1.0}, sol);
    CHECK(bad[0].error);
    CHECK(std::isnan(bad[0].value));
    CHECK_FALSE(bad[1].error);
    CHECK(normalized(Quantity::SigmaYX, 0.5, sol) == doctest::Approx(5.0));
    CHECK(normalized(Quantity::UX, 0.5, sol) == doctest::Approx(0.5));
    CHECK(std::string(quantity_name(Quantity::MXZ)) == "m_xz");
    // Below the switch-over the near-tip term is returned.
    CHECK(sigma_yx_line(1e-5, sol) == near_tip_sigma(1e-5, sol));
}

TEST_CASE("parallel curve equals serial") {
    const auto& sol = reference();
    const std::vector<double> grid{0.1, 0.5, 2.0, 7.0};
    const auto a = curve(Quantity::SigmaYX, grid, sol, {}, 1);
    const auto b = curve(Quantity::SigmaYX, grid, sol, {}, 3);
    for (std::size_t i = 0; i < grid.size(); ++i) CHECK(a[i].value == b[i].value);
}
