#pragma once

#include <memory>

#include "cscrack/kernel.hpp"

namespace cscrack {

enum class SolutionKind {
    Dynamic,      // couple-stress, moving crack
    QuasiStatic,  // m -> 0 limit, stationary-crack factorization
    Classical,    // l -> 0 limit at the same m
};

// Solved problem for the crack-face load T(X) = (T0/L) exp(X/L), X < 0, with
// ell = mu = 1. E0 carries the phase of [i/L]_+^{1/2}.
struct WHSolution {
    SolutionKind kind = SolutionKind::Dynamic;
    KernelContext ctx;
    TablePtr table;
    double nu = 0.0;
    double T0 = 1.0;
    double L = 10.0;
    cplx E0;
    double n_plus_load = 1.0;  // N+(i/L), real and positive
    // m^2 / ((1 - d)(2 - m^2)^2), or its m -> 0 limit.
    double u_prefactor = 0.0;
};

WHSolution make_wh_solution(double m, double nu, double h0, double T0, double L_over_ell, const FactorSpec& spec = {});
WHSolution make_wh_solution(TablePtr table, double T0, double L_over_ell);
WHSolution make_quasi_static_solution(double nu, double T0, double L_over_ell, const FactorSpec& spec = {});
WHSolution make_classical_solution(double m, double nu, double T0, double L_over_ell);

cplx loading_transform(cplx s, double T0, double L);
cplx m_plus(cplx z, const WHSolution& sol);
cplx m_minus(cplx z, const WHSolution& sol);
cplx e0_constant(const WHSolution& sol);
cplx sigma_transform(cplx s, const WHSolution& sol);
cplx u_transform(cplx s, const WHSolution& sol);
cplx sigma_transform_asymptote(cplx s, const WHSolution& sol);
cplx u_transform_asymptote(cplx s, const WHSolution& sol);
// Sigma+ - T- minus the right-hand side of the functional equation, real s.
cplx wh_residual(double s, const WHSolution& sol);

double near_tip_sigma(double X, const WHSolution& sol);
double near_tip_u(double X, const WHSolution& sol);
// sigma_yx for X > 0, u_x for X < 0.
double near_tip_fields(double X, const WHSolution& sol);

}  // namespace cscrack
