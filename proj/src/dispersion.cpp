#include "cscrack/dispersion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "cscrack/errors.hpp"
#include "cscrack/material.hpp"
#include "cscrack/numerics.hpp"

namespace cscrack {

double shear_omega(double xi_d, double h0) {
    if (!(xi_d > 0.0)) throw DomainError("wavenumber must be positive");
    return xi_d * std::sqrt(1.0 + xi_d * xi_d) / std::sqrt(1.0 + h0 * h0 * xi_d * xi_d);
}

double shear_phase_velocity(double xi_d, double h0) { return shear_omega(xi_d, h0) / xi_d; }

double shear_group_velocity(double xi_d, double h0) {
    const double x2 = xi_d * xi_d, h2 = h0 * h0;
    return shear_phase_velocity(xi_d, h0) +
           (1.0 - h2) * x2 / (std::sqrt(1.0 + x2) * std::pow(1.0 + h2 * x2, 1.5));
}

ShearDispersionPoint shear_point(double xi_d, double h0) {
    return {xi_d, shear_omega(xi_d, h0), shear_phase_velocity(xi_d, h0), shear_group_velocity(xi_d, h0)};
}

ShearDispersion shear_dispersion_kind(double h0) {
    if (h0 > 1.0) return ShearDispersion::Normal;
    if (h0 < 1.0) return ShearDispersion::Anomalous;
    return ShearDispersion::None;
}

double rayleigh_speed_cap(double xi_d, double nu, double h0) {
    return std::min(shear_phase_velocity(xi_d, h0), 1.0 / c_ratio(nu));
}

namespace {

struct ShearParts {
    double sig2, tau2, Delta;
};

ShearParts shear_parts(double w, double h0) {
    const double a = 1.0 - w * w * h0 * h0;
    const double Delta = std::sqrt(a * a + 4.0 * w * w);
    // (Delta - a) rewritten to avoid cancellation when a >> w.
    const double sig2 = a > 0.0 ? 2.0 * w * w / (Delta + a) : 0.5 * (Delta - a);
    const double tau2 = a > 0.0 ? 0.5 * (Delta + a) : 2.0 * w * w / (Delta - a);
    return {sig2, tau2, Delta};
}

}  // namespace

RayleighAuxiliaries rayleigh_auxiliaries(double c_ph, double xi, double nu, double h0) {
    if (!(xi > 0.0)) throw DomainError("wavenumber must be positive");
    if (!(c_ph > 0.0)) throw DomainError("phase velocity must be positive");
    const double c = c_ratio(nu);
    const double w = c_ph * xi;
    const ShearParts sp = shear_parts(w, h0);
    const double bp2 = xi * xi - w * w * c * c;
    const double bs2 = xi * xi - sp.sig2;
    if (!(bp2 > 0.0) || !(bs2 > 0.0))
        throw DomainError("phase velocity " + std::to_string(c_ph) + " gives no surface-wave decay");
    return {std::sqrt(bp2), bs2, xi * xi + sp.tau2, std::sqrt(sp.sig2), std::sqrt(sp.tau2), sp.Delta};
}

namespace {

using Row = std::array<cplx, 3>;

// Traction-free conditions applied to a single mode exp(-kappa*Y + i*xi*x):
// d/dx -> i xi, d/dY -> -kappa, laplacian -> kappa^2 - xi^2, second time derivative -> -w^2.
struct ModeOps {
    double xi, w, lambda, h0;

    cplx sigma_yy_phi(double k) const {
        const double lap = k * k - xi * xi;
        return lambda * lap + 2.0 * k * k;
    }
    cplx sigma_yy_psi(double k) const {
        const cplx dx(0.0, xi);
        return -2.0 * dx * (-k);
    }
    cplx sigma_yx_phi(double k) const {
        const cplx dx(0.0, xi);
        return 2.0 * dx * (-k);
    }
    cplx sigma_yx_psi(double k) const {
        const cplx dx(0.0, xi);
        const double lap = k * k - xi * xi;
        // I/4 = rho h^2 = h0^2 in these units.
        return k * k - dx * dx - lap * lap + h0 * h0 * lap * (-w * w);
    }
    cplx m_yz_psi(double k) const {
        const double lap = k * k - xi * xi;
        return -2.0 * (-k) * lap;
    }
};

cplx det3(const std::array<Row, 3>& M) {
    return M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
           M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]);
}

double determinant_from(const RayleighAuxiliaries& aux, double w, double xi, double nu, double h0) {
    const double c = c_ratio(nu);
    const ModeOps op{xi, w, 1.0 / (c * c) - 2.0, h0};
    const double kp = aux.beta_p, ks = std::sqrt(aux.beta_s2), kg = std::sqrt(aux.gamma_s2);
    std::array<Row, 3> M{{
        {op.sigma_yy_phi(kp), op.sigma_yy_psi(ks), op.sigma_yy_psi(kg)},
        {op.sigma_yx_phi(kp), op.sigma_yx_psi(ks), op.sigma_yx_psi(kg)},
        {cplx(0.0), op.m_yz_psi(ks), op.m_yz_psi(kg)},
    }};
    for (auto& row : M) {
        double scale = 0.0;
        for (const auto& e : row) scale = std::max(scale, std::abs(e));
        if (scale > 0.0)
            for (auto& e : row) e /= scale;
    }
    // The i from the phi column cancels the i from the first row, so the
    // determinant is real up to rounding.
    return det3(M).real();
}

// Close to the cap the root can sit within 1e-14 of it in c, so the search
// runs in the decay parameter of the binding wave, q = beta^2/xi^2.
struct DecayPoint {
    RayleighAuxiliaries aux;
    double w;
};

DecayPoint from_shear_decay(double q, double xi, double nu, double h0) {
    const double c = c_ratio(nu);
    const double s2 = xi * xi * (1.0 - q);
    const double w2 = s2 * (1.0 + s2) / (1.0 + h0 * h0 * s2);
    const double t2 = s2 + 1.0 - w2 * h0 * h0;
    const double bp2 = xi * xi - w2 * c * c;
    if (!(bp2 > 0.0)) throw DomainError("no dilatational decay");
    return {{std::sqrt(bp2), xi * xi * q, xi * xi + t2, std::sqrt(s2), std::sqrt(t2), s2 + t2}, std::sqrt(w2)};
}

DecayPoint from_dilatational_decay(double q, double xi, double nu, double h0) {
    const double w = xi * std::sqrt(1.0 - q) / c_ratio(nu);
    const ShearParts sp = shear_parts(w, h0);
    const double bs2 = xi * xi - sp.sig2;
    if (!(bs2 > 0.0)) throw DomainError("no shear decay");
    return {{xi * std::sqrt(q), bs2, xi * xi + sp.tau2, std::sqrt(sp.sig2), std::sqrt(sp.tau2), sp.Delta}, w};
}

}  // namespace

double rayleigh_determinant(double c_ph, double xi, double nu, double h0) {
    return determinant_from(rayleigh_auxiliaries(c_ph, xi, nu, h0), c_ph * xi, xi, nu, h0);
}

double rayleigh_phase_velocity(double xi, double nu, double h0, std::optional<double> seed) {
    const double vs = shear_phase_velocity(xi, h0);
    const double cp = 1.0 / c_ratio(nu);
    const bool shear_bound = vs <= cp;
    auto point = [&](double lq) {
        const double q = std::exp(lq);
        return shear_bound ? from_shear_decay(q, xi, nu, h0) : from_dilatational_decay(q, xi, nu, h0);
    };
    auto D = [&](double lq) {
        const auto p = point(lq);
        return determinant_from(p.aux, p.w, xi, nu, h0);
    };
    auto solve = [&](double lo, double hi) { return point(find_root(D, lo, hi, 1e-12)).w / xi; };
    const double lq_lo = std::log(1e-60), lq_hi = std::log(1.0 - 1e-9);

    if (seed && *seed > 0.0) {
        double q;
        if (shear_bound) {
            // invert w^2 = s2 (1 + s2)/(1 + h0^2 s2) for s2 = sigma_s^2
            const double w2 = *seed * *seed * xi * xi;
            const double bq = 1.0 - h0 * h0 * w2;
            const double s2 = 2.0 * w2 / (bq + std::sqrt(bq * bq + 4.0 * w2));
            q = 1.0 - s2 / (xi * xi);
        } else {
            q = 1.0 - (*seed * *seed) / (cp * cp);
        }
        const double l = std::log(std::max(q, 1e-60));
        const double lo = std::max(lq_lo, l - 0.7), hi = std::min(lq_hi, l + 0.7);
        try {
            if (lo < hi && D(lo) > 0.0 && D(hi) < 0.0) return solve(lo, hi);
        } catch (const DomainError&) {
        }
    }

    // D > 0 at the cap (q -> 0) and vanishes spuriously as c -> 0 (q -> 1);
    // the surface wave is the first sign change coming down from the cap.
    double prev = lq_lo;
    double d0;
    try {
        d0 = D(prev);
    } catch (const DomainError&) {
        throw NoRoot("decay conditions fail at the cap for xi=" + std::to_string(xi));
    }
    if (d0 <= 0.0) {
        // Degenerate contact, e.g. h0 = 0 at xi = 1: the root is the cap itself.
        if (std::abs(d0) < 1e-10) return shear_bound ? vs : cp;
        throw NoRoot("determinant is negative at the cap for xi=" + std::to_string(xi));
    }
    for (double l = lq_lo + 0.25;; l += 0.25) {
        l = std::min(l, lq_hi);
        double d;
        try {
            d = D(l);
        } catch (const DomainError&) {
            break;
        }
        if (d < 0.0) return solve(prev, l);
        if (l >= lq_hi) break;
        prev = l;
    }
    throw NoRoot("no Rayleigh root below the admissible cap at xi=" + std::to_string(xi));
}

std::vector<double> rayleigh_curve(const std::vector<double>& xi_grid, double nu, double h0) {
    std::vector<double> out;
    out.reserve(xi_grid.size());
    std::optional<double> seed;
    for (double xi : xi_grid) {
        out.push_back(rayleigh_phase_velocity(xi, nu, h0, seed));
        seed = out.back();
    }
    return out;
}

double rayleigh_large_wavenumber_limit(double nu, double h0) {
    if (h0 >= 1.0 / std::sqrt(2.0)) return 1.0 / h0;
    return rayleigh_phase_velocity(1e3, nu, h0);
}

}  // namespace cscrack
