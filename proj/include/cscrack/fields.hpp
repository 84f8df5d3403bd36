#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cscrack/numerics.hpp"
#include "cscrack/wh_solution.hpp"

namespace cscrack {

enum class Quantity { SigmaYX, UX, MXZ };

const char* quantity_name(Quantity q);

// Normalized values: sigma_yx L/T0, u_x mu/T0, m_xz/T0, against X/ell.
struct FieldSample {
    double X_over_ell = 0.0;
    double value = 0.0;
    Quantity quantity = Quantity::SigmaYX;
    std::optional<std::string> error;
};

struct FieldOptions {
    QuadSpec spec = kOscillatoryQuad;
    // Below this |X| the closed-form near-tip term replaces quadrature.
    double asymptote_below = 1e-3;
};

// Transform of m_xz on the crack line, real s.
cplx m_xz_transform(double s, const WHSolution& sol);

double sigma_yx_line(double X, const WHSolution& sol, const FieldOptions& opts = {});
double u_x_line(double X, const WHSolution& sol, const FieldOptions& opts = {});
double m_xz_line(double X, const WHSolution& sol, const FieldOptions& opts = {});

// Integral of sigma_yx over X > 0: closed-form near-tip piece, log-spaced
// Gauss panels up to X_max, and a two-term X^{-3/2}, X^{-5/2} tail fit.
double sigma_yx_resultant(const WHSolution& sol, const FieldOptions& opts = {}, double X_max = 1e3);

double field_value(Quantity q, double X, const WHSolution& sol, const FieldOptions& opts = {});
double normalized(Quantity q, double raw, const WHSolution& sol);

// Per-point failures are recorded in the sample; the sweep continues.
std::vector<FieldSample> curve(Quantity q, const std::vector<double>& X_grid, const WHSolution& sol,
                               const FieldOptions& opts = {}, int threads = 1);

}  // namespace cscrack
