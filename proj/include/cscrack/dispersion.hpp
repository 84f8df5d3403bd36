#pragma once

#include <optional>
#include <vector>

namespace cscrack {

// All quantities normalized with ell = 1 and c_s = 1.
struct ShearDispersionPoint {
    double xi_d;
    double omega_norm;
    double phase_velocity;
    double group_velocity;
};

struct RayleighAuxiliaries {
    double beta_p;
    double beta_s2;
    double gamma_s2;
    double sigma_s;
    double tau_s;
    double Delta_s;
};

enum class ShearDispersion { Normal, Anomalous, None };

double shear_omega(double xi_d, double h0);
double shear_phase_velocity(double xi_d, double h0);
double shear_group_velocity(double xi_d, double h0);
ShearDispersionPoint shear_point(double xi_d, double h0);
ShearDispersion shear_dispersion_kind(double h0);

// Upper end of the admissible phase-velocity interval, min{V_s, c_p}.
double rayleigh_speed_cap(double xi_d, double nu, double h0);
RayleighAuxiliaries rayleigh_auxiliaries(double c_ph_norm, double xi_d, double nu, double h0);
double rayleigh_determinant(double c_ph_norm, double xi_d, double nu, double h0);
double rayleigh_phase_velocity(double xi_d, double nu, double h0, std::optional<double> seed = std::nullopt);
// Logarithmic sweep with continuation: each root seeds the next bracket.
std::vector<double> rayleigh_curve(const std::vector<double>& xi_grid, double nu, double h0);
double rayleigh_large_wavenumber_limit(double nu, double h0);

}  // namespace cscrack
