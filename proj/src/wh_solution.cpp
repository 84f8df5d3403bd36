#include "cscrack/wh_solution.hpp"

#include <cmath>

#include "cscrack/errors.hpp"
#include "cscrack/material.hpp"

namespace cscrack {

namespace {

void check_load(double T0, double L) {
    if (!(T0 > 0.0)) throw DomainError("T0 must be positive");
    if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("L/ell must be positive");
}

double dynamic_prefactor(double m, double d) { return m * m / ((1.0 - d) * (2.0 - m * m) * (2.0 - m * m)); }

void finish(WHSolution& sol) {
    const cplx np = n_plus(cplx(0.0, 1.0 / sol.L), *sol.table);
    sol.n_plus_load = np.real();
    sol.E0 = sol.T0 * half_power_plus(cplx(0.0, 1.0 / sol.L)) / np;
}

}  // namespace

WHSolution make_wh_solution(TablePtr table, double T0, double L) {
    check_load(T0, L);
    if (!table) throw DomainError("missing factorization table");
    WHSolution sol;
    sol.table = table;
    sol.ctx = table->ctx;
    sol.nu = table->nu;
    sol.T0 = T0;
    sol.L = L;
    switch (table->kind) {
        case FactorKind::Dynamic:
            sol.kind = SolutionKind::Dynamic;
            sol.u_prefactor = dynamic_prefactor(sol.ctx.m, sol.ctx.d);
            break;
        case FactorKind::Classical:
            sol.kind = SolutionKind::Classical;
            sol.u_prefactor = dynamic_prefactor(sol.ctx.m, sol.ctx.d);
            break;
        case FactorKind::Static:
            sol.kind = SolutionKind::QuasiStatic;
            sol.ctx = KernelContext{};
            sol.ctx.nu = table->nu;
            sol.u_prefactor = -(1.0 - sol.nu) / (3.0 - 2.0 * sol.nu);
            break;
    }
    finish(sol);
    return sol;
}

WHSolution make_wh_solution(double m, double nu, double h0, double T0, double L, const FactorSpec& spec) {
    check_load(T0, L);
    if (m == 0.0) throw QuasiStaticPath("m = 0: use make_quasi_static_solution");
    const auto ctx = make_kernel_context(m, nu, h0);
    return make_wh_solution(std::make_shared<const FactorizationTable>(factorize(ctx, spec)), T0, L);
}

WHSolution make_quasi_static_solution(double nu, double T0, double L, const FactorSpec& spec) {
    check_load(T0, L);
    return make_wh_solution(std::make_shared<const FactorizationTable>(factorize_static(nu, spec)), T0, L);
}

WHSolution make_classical_solution(double m, double nu, double T0, double L) {
    check_load(T0, L);
    if (!(m > 0.0 && m < classical_rayleigh_speed(nu)))
        throw DomainError("classical solution needs 0 < m < c_R/c_s");
    // Only d and N(0) are needed; the couple-stress branch data are irrelevant here.
    KernelContext ctx;
    ctx.m = m;
    ctx.nu = nu;
    ctx.d = d_factor(m, nu);
    return make_wh_solution(std::make_shared<const FactorizationTable>(factorize_classical(ctx)), T0, L);
}

cplx loading_transform(cplx s, double T0, double L) { return T0 / (1.0 + cplx(0.0, 1.0) * s * L); }

cplx e0_constant(const WHSolution& sol) { return sol.E0; }

cplx m_minus(cplx z, const WHSolution& sol) { return sol.E0 / (1.0 + cplx(0.0, 1.0) * z * sol.L); }

namespace {
cplx m_plus_raw(cplx z, const WHSolution& sol) {
    const cplx g = sol.T0 * half_power_plus(z) / n_plus(z, *sol.table);
    return (g - sol.E0) / (1.0 + cplx(0.0, 1.0) * z * sol.L);
}
}  // namespace

cplx m_plus(cplx z, const WHSolution& sol) {
    const cplx pole(0.0, 1.0 / sol.L);
    const double r = std::abs(z - pole);
    const double h = 1e-4 / sol.L;
    // Removable singularity at z = i/L: symmetric average around it.
    if (r < h) {
        const cplx dz = z - pole;
        const cplx e = r > 0.0 ? dz / r : cplx(1.0, 0.0);
        return 0.5 * (m_plus_raw(pole + h * e, sol) + m_plus_raw(pole - h * e, sol));
    }
    return m_plus_raw(z, sol);
}

cplx sigma_transform(cplx s, const WHSolution& sol) {
    if (s == cplx(0.0)) return sol.T0;
    const cplx den = 1.0 + cplx(0.0, 1.0) * s * sol.L;
    // Rearranged (E0 + M+) N+ [s]_+^{-1/2}; no cancellation near s = 0.
    return sol.E0 * n_plus(s, *sol.table) * cplx(0.0, sol.L) * half_power_plus(s) / den + sol.T0 / den;
}

cplx u_transform(cplx s, const WHSolution& sol) {
    if (s == cplx(0.0)) throw DomainError("U- is singular at s = 0");
    const cplx den = 1.0 + cplx(0.0, 1.0) * s * sol.L;
    return sol.u_prefactor * sol.E0 * cplx(0.0, sol.L) * half_power_minus(s) / (s * den * n_minus(s, *sol.table));
}

cplx sigma_transform_asymptote(cplx s, const WHSolution& sol) {
    return sol.T0 * half_power_plus(cplx(0.0, 1.0)) / (std::sqrt(sol.L) * sol.n_plus_load) / half_power_plus(s);
}

cplx u_transform_asymptote(cplx s, const WHSolution& sol) {
    return sol.u_prefactor * sol.T0 * half_power_plus(cplx(0.0, 1.0)) / (std::sqrt(sol.L) * sol.n_plus_load) *
           half_power_minus(s) / (s * s);
}

cplx wh_residual(double s, const WHSolution& sol) {
    const cplx lhs = sigma_transform(s, sol) - loading_transform(s, sol.T0, sol.L);
    // mu (2-m^2)^2 s^2 / (m^2 |s|) K(s) = |s| N(s) / u_prefactor
    const cplx rhs = std::abs(s) * sol.table->kernel(s) * u_transform(s, sol) / sol.u_prefactor;
    return lhs - rhs;
}

double near_tip_sigma(double X, const WHSolution& sol) {
    if (!(X > 0.0)) throw DomainError("near-tip stress needs X > 0");
    return sol.T0 / (std::sqrt(kPi * sol.L) * sol.n_plus_load * std::sqrt(X));
}

double near_tip_u(double X, const WHSolution& sol) {
    if (!(X < 0.0)) throw DomainError("near-tip displacement needs X < 0");
    return -2.0 * sol.u_prefactor * sol.T0 * std::sqrt(-X) / (std::sqrt(kPi * sol.L) * sol.n_plus_load);
}

double near_tip_fields(double X, const WHSolution& sol) { return X > 0.0 ? near_tip_sigma(X, sol) : near_tip_u(X, sol); }

}  // namespace cscrack
