#pragma once

#include "chemlab/radial_grid.hpp"

#include <string>

namespace chemlab {

struct init_params {
    std::string family = "gaussian"; // constant | gaussian | highdim | critical4
    double m = 1.0;                  // total mass of u
    double eps_mass = -1.0;          // bump mass; negative selects m/2
    double eta = -1.0;               // concentration scale (gaussian width); negative selects R/4
    double rho = -1.0;               // highdim profile exponent; negative selects choose_rho
    double gamma = 1.0;              // highdim admissibility exponent
    double kappa = 0.25;             // critical4 log attenuation
    int n_psi = 3;                   // critical4 boundary polynomial power
    double theta_log = 0.5;          // paired log exponent (constrains kappa)
};

struct init_triple {
    field u, v, w;
};

// Unit-mass smooth bump supported on the unit ball.
double mollifier_constant(int n);
double mollifier(int n, double y);

// Midpoint of the admissible exponent interval (max(0, n - n*gamma), n - 4);
// throws if the interval is empty.
double choose_rho(int n, double gamma);

init_triple make_constant(const radial_grid& g, double m);
// u mass-normalized discretely; v = w = smoothed u (one Helmholtz solve).
init_triple make_gaussian(const radial_grid& g, double m, double width);
// Flat background plus a mollifier bump of mass eps_mass at scale eta
// (bump weight corrected so the discrete mass is exactly m);
// v = w = mollifier(r/eta) * eta^(-rho).  Requires n > 4.
init_triple make_highdim(const radial_grid& g, const init_params& p);
// Same u; v = w = (R^2-r^2)^n_psi * ln((R^2+eta^2)/(r^2+eta^2)) / ln(R/eta)^kappa.
// Requires n == 4.
init_triple make_critical4(const radial_grid& g, const init_params& p);

// Dispatch on family with defaults resolved.
init_triple make_initial(const radial_grid& g, const init_params& p);

} // namespace chemlab
