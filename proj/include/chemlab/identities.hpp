#pragma once

#include "chemlab/kinetics.hpp"
#include "chemlab/radial_grid.hpp"

namespace chemlab {

struct identity_result {
    double lhs = 0.0;
    double rhs = 0.0;
    double rel_residual = 0.0; // |lhs - rhs| / max(|lhs|, |rhs|, 1) for equalities,
                               // signed margin / scale for inequalities (negative = violated)
    bool pass = false;
};

// Fourth-order radial operator: divergence of gradient-of-Laplacian, with the
// inner Laplacian built from fourth-order face gradients and the outer flux
// extrapolated one-sidedly at the boundary.  Input needs a vanishing radial
// derivative at R.
field biharmonic(const radial_grid& g, const field& v);

// Second radial derivative at r = R from a one-sided expansion constrained by
// the no-flux condition.
double second_derivative_boundary(const radial_grid& g, const field& v, int pts = 4);

// -int lap^2 v (x . grad v) = (n-4)/2 int |lap v|^2 + omega R^n / 2 * v_rr(R)^2
identity_result pohozaev_check(const radial_grid& g, const field& v, double tol = 1e-6);

// int |lap u|^2 >= 4 int |grad u|^2 / |x|^2 in dimension 4 (u_r(R) = 0).
identity_result hardy_rellich_check(const radial_grid& g, const field& u, double tol = 1e-6);

// Logarithmic cutoff xi(r) = ln((R^2+eta)/(r^2+eta)) and derived weights.
struct cutoff_weights {
    double eta = 0.0;
    field xi;    // at cell centers
    field dxi;   // xi'
    field d2xi;  // xi''
    field d3xi;  // xi'''
    field J;     // -xi''' r + 3 xi'' - 3 xi'/r = 16 r^4 / (r^2+eta)^3
};
cutoff_weights make_cutoff(const radial_grid& g, double eta);

// Weighted stationary inequality:
//   -3/2 int xi' r |lap v|^2 + 2 int xi |grad v|^2 - int xi' r |grad v|^2
//     <= 4 int_{u > s0} xi H(u) + int (v + s0) xi r |grad v| + 1/2 int J |grad v|^2
struct weighted_result {
    identity_result check;
    double lhs_terms[3] = {0, 0, 0};
    double rhs_terms[3] = {0, 0, 0};
};
weighted_result weighted_inequality_check(const radial_grid& g, const kinetics& kin,
                                          const field& u, const field& v, double eta,
                                          double tol = 1e-6);

} // namespace chemlab
