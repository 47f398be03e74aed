#pragma once

#include <vector>

namespace chemlab {

// Cell value vector on a radial grid (size N).
using field = std::vector<double>;
// Face value vector (size N + 1).
using face_field = std::vector<double>;

// Uniform cell-centered grid on the ball of radius R in dimension n,
// for radially symmetric fields.  Faces at i*dr, centers at (i+1/2)*dr.
struct radial_grid {
    int n = 0;
    double R = 0.0;
    int N = 0;
    double dr = 0.0;
    double omega = 0.0;        // surface measure of the unit sphere
    double ball_volume = 0.0;  // omega/n * R^n
    std::vector<double> rf;    // face radii, N+1
    std::vector<double> rc;    // cell center radii, N
    std::vector<double> Af;    // face areas omega * rf^(n-1)
    std::vector<double> Vc;    // cell volumes, sum equals ball_volume exactly
};

radial_grid make_grid(int n, double R, int N);

// sum_i x_i V_i
double cell_integral(const radial_grid& g, const field& x);
// sum over interior faces of y_f * A_f * dr (zero-area/boundary faces drop out)
double face_integral(const radial_grid& g, const face_field& y);
// two-point face gradients; boundary faces get 0 (no-flux conditions)
face_field face_gradient(const radial_grid& g, const field& x);
// fourth-order interior face gradients, one-sided near the outer boundary,
// boundary faces 0
face_field face_gradient4(const radial_grid& g, const field& x);
// (A_{i+1} F_{i+1} - A_i F_i) / V_i for a face flux F
field face_divergence(const radial_grid& g, const face_field& flux);
// conservative Laplacian with no-flux boundaries
field laplacian(const radial_grid& g, const field& x);
// cell-centered radial derivative (average of adjacent face gradients)
field cell_gradient(const radial_grid& g, const field& x);

// Solves (mu I - sigma div(kappa grad)) x = b with no-flux boundaries;
// kappa holds face values.  Tridiagonal (Thomas) solve; requires mu > 0,
// sigma >= 0, kappa >= 0 so the system is an irreducible M-matrix.
field screened_solve(const radial_grid& g, double mu, double sigma,
                     const face_field& kappa, const field& b);
// (I - Laplacian) x = b
field helmholtz_solve(const radial_grid& g, const field& b);

double sup_norm(const field& x);
double min_value(const field& x);

} // namespace chemlab
