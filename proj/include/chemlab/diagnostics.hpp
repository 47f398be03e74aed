#pragma once

#include "chemlab/kinetics.hpp"
#include "chemlab/radial_grid.hpp"

#include <string>
#include <vector>

namespace chemlab {

// One recorded time-series row.  Column order matches csv_header().
struct energy_row {
    long step = 0;
    double t = 0.0;
    double dt = 0.0;
    double mass = 0.0;
    double sup_u = 0.0;
    double l2_u = 0.0;
    double lp_u = 0.0;
    double F = 0.0;
    double Diss = 0.0;
    double budget_residual = 0.0;
    double sup_v = 0.0;
    double sup_w = 0.0;
};

double total_mass(const radial_grid& g, const field& u);
double lp_norm(const radial_grid& g, const field& x, double p);

struct energy_terms {
    double storage = 0.0;   // int G(u)
    double cross = 0.0;     // -int u v
    double rate = 0.0;      // 1/2 int (lap v - v + w)^2
    double elliptic = 0.0;  // 1/2 int (-lap v + v)^2
    double total = 0.0;
};

// Free energy of a state; the v time derivative is evaluated through the
// equation it satisfies, lap v - v + w.
energy_terms energy_breakdown(const radial_grid& g, const kinetics& kin,
                              const field& u, const field& v, const field& w);
double energy(const radial_grid& g, const kinetics& kin,
              const field& u, const field& v, const field& w);

struct dissipation_result {
    double total = 0.0;
    double flux_part = 0.0;      // int S(u) |(D/S) grad u - grad v|^2
    double rate_parts = 0.0;     // 2 int |grad v_t|^2 + 2 int v_t^2
    int skipped_faces = 0;       // faces where S(u) is too small to divide by
};

dissipation_result dissipation(const radial_grid& g, const kinetics& kin,
                               const field& u, const field& v, const field& w);

// Max over recorded rows of |F(t_k) - F(0) + trapezoid integral of Diss|,
// recomputed from the rows themselves.
double budget_audit(const std::vector<energy_row>& rows);

std::string csv_header();
std::string csv_line(const energy_row& row);

} // namespace chemlab
