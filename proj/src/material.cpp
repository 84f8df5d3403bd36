#include "cscrack/material.hpp"

#include <cmath>
#include <string>

#include "cscrack/errors.hpp"
#include "cscrack/numerics.hpp"

namespace cscrack {

namespace {
void check_nu(double nu) {
    if (!(nu >= 0.0 && nu < 0.5)) throw DomainError("Poisson ratio must lie in [0, 0.5), got " + std::to_string(nu));
}
}  // namespace

void validate(const MaterialConfig& mat) {
    check_nu(mat.nu);
    if (!(mat.h0 >= 0.0) || !std::isfinite(mat.h0)) throw DomainError("h0 must be finite and non-negative");
    if (!(mat.mu > 0.0)) throw DomainError("shear modulus must be positive");
    if (!(mat.ell > 0.0)) throw DomainError("couple-stress length must be positive");
}

void validate(const CrackState& crack, const MaterialConfig& mat) {
    validate(mat);
    if (!(crack.m >= 0.0)) throw DomainError("Mach number must be non-negative");
    if (regime(crack.m, mat.nu, mat.h0) != Regime::SubRayleigh)
        throw DomainError("crack speed m=" + std::to_string(crack.m) + " is not sub-Rayleigh (m_R=" +
                          std::to_string(max_sub_rayleigh_speed(mat.nu, mat.h0)) + ")");
    if (!(crack.T0 > 0.0)) throw DomainError("T0 must be positive");
    if (!(crack.L_over_ell > 0.0) || !std::isfinite(crack.L_over_ell)) throw DomainError("L/ell must be positive");
}

double c_ratio(double nu) {
    check_nu(nu);
    return std::sqrt((1.0 - 2.0 * nu) / (2.0 * (1.0 - nu)));
}

double rayleigh_function_R(double m, double nu) {
    const double c = c_ratio(nu);
    const double m2 = m * m;
    return 4.0 * std::sqrt(1.0 - m2) * std::sqrt(1.0 - m2 * c * c) - (2.0 - m2) * (2.0 - m2);
}

double classical_rayleigh_speed(double nu) {
    check_nu(nu);
    return find_root([nu](double m) { return rayleigh_function_R(m, nu); }, 0.8, 0.99999, 1e-14);
}

double h0_star(double nu) { return 1.0 / classical_rayleigh_speed(nu); }

double max_sub_rayleigh_speed(double nu, double h0) {
    const double mr = classical_rayleigh_speed(nu);
    if (h0 <= 0.0) return mr;
    return std::min(1.0 / h0, mr);
}

Regime regime(double m, double nu, double h0) {
    return m < max_sub_rayleigh_speed(nu, h0) ? Regime::SubRayleigh : Regime::SuperRayleigh;
}

double d_factor(double m, double nu) {
    const double c = c_ratio(nu);
    const double m2 = m * m;
    if (!(m2 * c * c < 1.0)) throw DomainError("d_factor requires m < 1/c");
    return 4.0 * std::sqrt(1.0 - m2 * c * c) / ((2.0 - m2) * (2.0 - m2));
}

double q_function(double m, double nu) {
    const double c = c_ratio(nu);
    const double m2 = m * m;
    return std::sqrt(1.0 - m2) * (4.0 * std::sqrt(1.0 - m2 * c * c) - (2.0 - m2) * (2.0 - m2));
}

double q_function_factored(double m, double nu) {
    const double m2 = m * m;
    return (d_factor(m, nu) - 1.0) * std::sqrt(1.0 - m2) * (2.0 - m2) * (2.0 - m2);
}

}  // namespace cscrack
