#pragma once

#include "chemlab/kinetics.hpp"
#include "chemlab/radial_grid.hpp"

#include <vector>

namespace chemlab {

struct stationary_params {
    double m = 1.0;           // prescribed mass of u
    double tol = 1e-8;        // sup-norm fixed-point tolerance on v
    int max_iter = 20000;
    double lambda0 = 0.5;     // damping; halved when the update grows, relaxed back afterwards
    double guess_amp = 0.2;   // centered bump amplitude of the default initial v
    double guess_width = -1.0; // negative selects R/6
};

// Fixed point of v -> (I-lap)^-2 f^-1(v + L(v)) at prescribed mass, i.e. a
// discrete stationary state f(u) = v + L, (I-lap) w = u, (I-lap) v = w.
struct stationary_result {
    field u, v, w;
    double L = 0.0;
    double m = 0.0;
    double res_flux = 0.0;  // sup_i |f(u_i) - v_i - L| over cells above the table floor
    double res_w = 0.0;     // sup-norm residual of (I-lap) w = u
    double res_v = 0.0;     // sup-norm residual of (I-lap) v = w
    int iterations = 0;
    bool converged = false;
    double energy_reduced = 0.0; // int G(u) - 1/2 int u v
};

stationary_result solve_stationary(const radial_grid& g, const kinetics& kin,
                                   const stationary_params& sp,
                                   const field* v_init = nullptr);

// int G(u) - 1/2 int u v; equals the full free energy at a stationary state.
double reduced_energy(const radial_grid& g, const kinetics& kin,
                      const field& u, const field& v);

struct scan_point {
    double m = 0.0;
    double F = 0.0;
    bool converged = false;
    double contrast = 1.0;  // sup u / inf u
};

// Stationary energies across masses, for lower-bound fits F >= -a m - b.
std::vector<scan_point> stationary_energy_scan(const radial_grid& g, const kinetics& kin,
                                               const std::vector<double>& masses,
                                               stationary_params base);

} // namespace chemlab
