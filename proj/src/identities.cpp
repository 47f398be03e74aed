#include "chemlab/identities.hpp"

#include "chemlab/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace chemlab {

field biharmonic(const radial_grid& g, const field& v) {
    if (g.N < 8) throw std::invalid_argument("biharmonic: grid too coarse");
    field inner = face_divergence(g, face_gradient4(g, v));
    auto flux = face_gradient(g, inner);
    // the Laplacian has no natural no-flux condition at R; extrapolate
    std::vector<double> offs(3);
    for (int k = 0; k < 3; ++k) offs[k] = g.rc[g.N - 3 + k] - g.R;
    auto wts = deriv_weights(offs, 1);
    double s = 0.0;
    for (int k = 0; k < 3; ++k) s += wts[k] * inner[g.N - 3 + k];
    flux[g.N] = s;
    return face_divergence(g, flux);
}

double second_derivative_boundary(const radial_grid& g, const field& v, int pts) {
    if (pts < 2 || pts > g.N)
        throw std::invalid_argument("second_derivative_boundary: bad point count");
    // v(R - h) = v(R) + h^2/2 v'' - h^3/6 v''' + ... using v'(R) = 0;
    // unknowns (v(R), v'', v''', ...) from the last pts cell values
    std::vector<double> a(pts * pts), rhs(pts, 0.0);
    for (int i = 0; i < pts; ++i) {
        double h = (2.0 * (i + 1) - 1.0) * g.dr / 2.0;
        a[i * pts + 0] = 1.0;
        double fact = 1.0, hp = 1.0;
        for (int j = 1; j < pts; ++j) {
            fact *= static_cast<double>(j + 1);
            hp = std::pow(-h, j + 1);
            a[i * pts + j] = hp / fact;
        }
    }
    // second derivative is unknown index 1: solve A^T y = e_1 ... simpler to
    // solve A x = b for each unit b is wasteful; invert by solving with rhs e_j
    // once: we need row 1 of A^{-1}, i.e. solve A^T z = e_1.
    std::vector<double> at(pts * pts);
    for (int i = 0; i < pts; ++i)
        for (int j = 0; j < pts; ++j) at[j * pts + i] = a[i * pts + j];
    rhs[1] = 1.0;
    auto z = solve_dense(std::move(at), std::move(rhs));
    double s = 0.0;
    for (int i = 0; i < pts; ++i) s += z[i] * v[g.N - 1 - i];
    return s;
}

namespace {

double rel_gap(double lhs, double rhs) {
    return std::fabs(lhs - rhs) / std::max({std::fabs(lhs), std::fabs(rhs), 1.0});
}

} // namespace

identity_result pohozaev_check(const radial_grid& g, const field& v, double tol) {
    identity_result r;
    field bi = biharmonic(g, v);
    field vr = cell_gradient(g, v);
    double lhs = 0.0;
    for (int i = 0; i < g.N; ++i) lhs -= bi[i] * g.rc[i] * vr[i] * g.Vc[i];
    field lap = laplacian(g, v);
    double lap_sq = 0.0;
    for (int i = 0; i < g.N; ++i) lap_sq += lap[i] * lap[i] * g.Vc[i];
    double vrr = second_derivative_boundary(g, v);
    double rhs = 0.5 * (g.n - 4) * lap_sq + 0.5 * g.omega * std::pow(g.R, g.n) * vrr * vrr;
    r.lhs = lhs;
    r.rhs = rhs;
    r.rel_residual = rel_gap(lhs, rhs);
    r.pass = r.rel_residual <= tol;
    return r;
}

identity_result hardy_rellich_check(const radial_grid& g, const field& u, double tol) {
    identity_result r;
    field lap = laplacian(g, u);
    for (int i = 0; i < g.N; ++i) r.lhs += lap[i] * lap[i] * g.Vc[i];
    auto grad = face_gradient(g, u);
    for (int i = 1; i < g.N; ++i)
        r.rhs += grad[i] * grad[i] / (g.rf[i] * g.rf[i]) * g.Af[i] * g.dr;
    r.rhs *= 4.0;
    r.rel_residual = (r.lhs - r.rhs) / std::max({std::fabs(r.lhs), std::fabs(r.rhs), 1.0});
    r.pass = r.rel_residual >= -tol;
    return r;
}

cutoff_weights make_cutoff(const radial_grid& g, double eta) {
    if (!(eta > 0.0) || !(eta < 1.0))
        throw std::invalid_argument("make_cutoff: eta must lie in (0, 1)");
    cutoff_weights c;
    c.eta = eta;
    c.xi.resize(g.N);
    c.dxi.resize(g.N);
    c.d2xi.resize(g.N);
    c.d3xi.resize(g.N);
    c.J.resize(g.N);
    double R2 = g.R * g.R;
    for (int i = 0; i < g.N; ++i) {
        double r = g.rc[i], r2 = r * r;
        double q = r2 + eta;
        c.xi[i] = std::log((R2 + eta) / q);
        c.dxi[i] = -2.0 * r / q;
        c.d2xi[i] = (2.0 * r2 - 2.0 * eta) / (q * q);
        c.d3xi[i] = (12.0 * eta * r - 4.0 * r2 * r) / (q * q * q);
        c.J[i] = 16.0 * r2 * r2 / (q * q * q);
    }
    return c;
}

weighted_result weighted_inequality_check(const radial_grid& g, const kinetics& kin,
                                          const field& u, const field& v, double eta,
                                          double tol) {
    if (g.n != 4)
        throw std::invalid_argument("weighted_inequality_check: formulated in dimension 4");
    weighted_result wr;
    auto c = make_cutoff(g, eta);
    field lap = laplacian(g, v);
    field vr = cell_gradient(g, v);
    const double s0 = kin.s0();
    double l0 = 0.0, l1 = 0.0, l2 = 0.0, r0 = 0.0, r1 = 0.0, r2 = 0.0;
    for (int i = 0; i < g.N; ++i) {
        double r = g.rc[i], V = g.Vc[i];
        double grad_sq = vr[i] * vr[i];
        l0 += -1.5 * c.dxi[i] * r * lap[i] * lap[i] * V;
        l1 += 2.0 * c.xi[i] * grad_sq * V;
        l2 += -c.dxi[i] * r * grad_sq * V;
        if (u[i] > s0) r0 += 4.0 * c.xi[i] * kin.H(u[i]) * V;
        r1 += (v[i] + s0) * c.xi[i] * r * std::fabs(vr[i]) * V;
        r2 += 0.5 * c.J[i] * grad_sq * V;
    }
    wr.lhs_terms[0] = l0;
    wr.lhs_terms[1] = l1;
    wr.lhs_terms[2] = l2;
    wr.rhs_terms[0] = r0;
    wr.rhs_terms[1] = r1;
    wr.rhs_terms[2] = r2;
    wr.check.lhs = l0 + l1 + l2;
    wr.check.rhs = r0 + r1 + r2;
    wr.check.rel_residual = (wr.check.rhs - wr.check.lhs) /
                            std::max({std::fabs(wr.check.lhs), std::fabs(wr.check.rhs), 1.0});
    wr.check.pass = wr.check.rel_residual >= -tol;
    return wr;
}

} // namespace chemlab
