#pragma once

namespace cscrack {

struct MaterialConfig {
    double nu = 0.3;
    double h0 = 0.0;
    double mu = 1.0;
    double ell = 1.0;
};

struct CrackState {
    double m = 0.5;
    double T0 = 1.0;
    double L_over_ell = 10.0;
};

enum class Regime { SubRayleigh, SuperRayleigh };

void validate(const MaterialConfig& mat);
void validate(const CrackState& crack, const MaterialConfig& mat);

double c_ratio(double nu);
double rayleigh_function_R(double m, double nu);
double classical_rayleigh_speed(double nu);
double h0_star(double nu);
double max_sub_rayleigh_speed(double nu, double h0);
Regime regime(double m, double nu, double h0);
double d_factor(double m, double nu);
double q_function(double m, double nu);
// (d-1)(1-m^2)^{1/2}(2-m^2)^2, the factored form of Q.
double q_function_factored(double m, double nu);

}  // namespace cscrack
