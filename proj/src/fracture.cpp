#include "cscrack/fracture.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "cscrack/errors.hpp"
#include "cscrack/kernel.hpp"
#include "cscrack/material.hpp"

namespace cscrack {

double sif_dynamic(const WHSolution& sol) {
    return std::sqrt(2.0) * sol.T0 / (std::sqrt(sol.L) * sol.n_plus_load);
}

double sif_classical(double T0, double L) { return std::sqrt(2.0) * T0 / std::sqrt(L); }

double sif_static(double nu, double ell_over_L, double T0, double L) {
    if (!(ell_over_L > 0.0)) throw DomainError("ell/L must be positive");
    const cplx np = static_n_plus(cplx(0.0, ell_over_L), nu);
    return std::sqrt(2.0) * T0 / (std::sqrt(L) * np.real());
}

std::vector<RatioPoint> sif_ratio_dynamic_static(const std::vector<double>& m_grid, double nu, double h0,
                                                 double L_over_ell, int threads) {
    const double ks = sif_static(nu, 1.0 / L_over_ell, 1.0, L_over_ell);
    std::vector<RatioPoint> out(m_grid.size());
    auto eval = [&](std::size_t i) {
        const double m = m_grid[i];
        out[i].m = m;
        try {
            if (m == 0.0) {
                out[i].value = 1.0;
                return;
            }
            const auto sol = make_wh_solution(m, nu, h0, 1.0, L_over_ell);
            out[i].value = sif_dynamic(sol) / ks;
        } catch (const Error& e) {
            out[i].value = std::nan("");
            out[i].error = e.what();
        }
    };
    const std::size_t n = m_grid.size();
    const int workers = std::max(1, std::min<int>(threads, static_cast<int>(n)));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) eval(i);
        });
    for (std::size_t i = next++; i < n; i = next++) eval(i);
    for (auto& t : pool) t.join();
    return out;
}

namespace {
// m -> 0 limits: R and Q both vanish like m^2 with Q/R -> 3 - 2 nu.
double static_r_over_q(double nu) { return 1.0 / (3.0 - 2.0 * nu); }
}  // namespace

double err_dynamic(const WHSolution& sol) {
    const double m = sol.ctx.m;
    const double np = sol.n_plus_load;
    if (sol.kind == SolutionKind::QuasiStatic)
        return sol.T0 * sol.T0 * (1.0 - sol.nu) * static_r_over_q(sol.nu) / (sol.L * np * np);
    return sol.T0 * sol.T0 * m * m * std::sqrt(1.0 - m * m) / (sol.L * q_function(m, sol.nu) * np * np);
}

ErrValue err_classical(double m, double nu, double T0, double L, double mu) {
    const double cr = classical_rayleigh_speed(nu);
    if (!(m > 0.0)) throw DomainError("classical ERR needs m > 0");
    if (m > cr) throw DomainError("classical ERR is undefined above the classical Rayleigh speed");
    const double R = rayleigh_function_R(m, nu);
    if (std::abs(R) < 1e-10) return {std::numeric_limits<double>::infinity(), true};
    return {T0 * T0 * m * m * std::sqrt(1.0 - m * m) / (mu * L * R), false};
}

double static_err_classical(double nu, double T0, double L, double mu) {
    validate(MaterialConfig{nu, 0.0, mu, 1.0});
    return (1.0 - nu) * T0 * T0 / (mu * L);
}

double err_ratio(const WHSolution& sol) {
    const double m = sol.ctx.m;
    const double np = sol.n_plus_load;
    if (sol.kind == SolutionKind::QuasiStatic) return static_r_over_q(sol.nu) / (np * np);
    return rayleigh_function_R(m, sol.nu) / (q_function(m, sol.nu) * np * np);
}

double err_from_sif(double K, double m, double nu, double mu) {
    return m * m * std::sqrt(1.0 - m * m) * K * K / (2.0 * mu * q_function(m, nu));
}

FractureReport fracture_report(const WHSolution& sol) {
    FractureReport r;
    r.m = sol.ctx.m;
    r.K2_dynamic = sif_dynamic(sol);
    r.K2_ratio_classical = 1.0 / sol.n_plus_load;
    r.K2_ratio_static = r.K2_dynamic / sif_static(sol.nu, 1.0 / sol.L, sol.T0, sol.L);
    r.J_dynamic = err_dynamic(sol);
    if (sol.kind == SolutionKind::QuasiStatic) {
        r.J_classical = static_err_classical(sol.nu, sol.T0, sol.L);
        r.J_ratio = err_ratio(sol);
        return r;
    }
    const ErrValue jc = err_classical(r.m, sol.nu, sol.T0, sol.L);
    r.J_classical = jc.value;
    r.J_classical_divergent = jc.divergent;
    r.J_ratio = err_ratio(sol);
    return r;
}

}  // namespace cscrack
