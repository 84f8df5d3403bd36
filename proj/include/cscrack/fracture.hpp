#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cscrack/wh_solution.hpp"

namespace cscrack {

struct FractureReport {
    double m = 0.0;
    double K2_dynamic = 0.0;
    double K2_ratio_classical = 0.0;
    double K2_ratio_static = 0.0;
    double J_dynamic = 0.0;
    double J_classical = 0.0;
    bool J_classical_divergent = false;
    double J_ratio = 0.0;
};

// Energy release rate that may be reported as a divergence marker.
struct ErrValue {
    double value = 0.0;
    bool divergent = false;
};

double sif_dynamic(const WHSolution& sol);
double sif_classical(double T0, double L);
double sif_static(double nu, double ell_over_L, double T0, double L);

struct RatioPoint {
    double m;
    double value;
    std::optional<std::string> error;
};

// K_II^d / K_II^s along an m sweep at fixed L/ell.
std::vector<RatioPoint> sif_ratio_dynamic_static(const std::vector<double>& m_grid, double nu, double h0,
                                                 double L_over_ell, int threads = 1);

double err_dynamic(const WHSolution& sol);
ErrValue err_classical(double m, double nu, double T0, double L, double mu = 1.0);
// m -> 0 limit of err_classical.
double static_err_classical(double nu, double T0, double L, double mu = 1.0);
double err_ratio(const WHSolution& sol);
// J from K via m^2 (1-m^2)^{1/2} K^2 / (2 mu Q).
double err_from_sif(double K, double m, double nu, double mu = 1.0);

FractureReport fracture_report(const WHSolution& sol);

}  // namespace cscrack
