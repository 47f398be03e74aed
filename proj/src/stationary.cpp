#include "chemlab/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chemlab {

namespace {

// Multiplier L so that the discrete mass of f^-1(v + L) equals m.
// Safeguarded Newton within a monotonicity bracket.
double solve_multiplier(const radial_grid& g, const kinetics& kin, const field& v,
                        double m, double L_start) {
    double vmax = *std::max_element(v.begin(), v.end());
    double vmin = *std::min_element(v.begin(), v.end());
    double lo = kin.f_range_min() - vmax;
    double hi = kin.f_range_max() - vmin;

    std::size_t hint = 0;
    auto mass_at = [&](double L) {
        double s = 0.0;
        for (int i = 0; i < g.N; ++i) s += kin.f_inverse(v[i] + L, &hint) * g.Vc[i];
        return s;
    };
    if (mass_at(hi) < m)
        throw std::runtime_error("solve_multiplier: mass exceeds the representable kinetics range");
    if (mass_at(lo) > m)
        throw std::runtime_error("solve_multiplier: mass below the representable kinetics range");

    double L = std::clamp(L_start, lo, hi);
    for (int it = 0; it < 200; ++it) {
        double M = mass_at(L);
        double err = M - m;
        if (std::fabs(err) <= 1e-13 * std::max(m, 1.0)) return L;
        if (err > 0.0) hi = L; else lo = L;
        // dM/dL = sum V_i / f'(u_i), f' = D/S evaluated at u_i
        double dM = 0.0;
        for (int i = 0; i < g.N; ++i) {
            double u = kin.f_inverse(v[i] + L, &hint);
            if (u > 0.0) dM += g.Vc[i] / kin.ds_ratio(u);
        }
        double L_next = (dM > 0.0 && std::isfinite(dM)) ? L - err / dM : 0.5 * (lo + hi);
        if (!(L_next > lo) || !(L_next < hi)) L_next = 0.5 * (lo + hi);
        if (hi - lo <= 1e-15 * (1.0 + std::fabs(L))) return 0.5 * (lo + hi);
        L = L_next;
    }
    return L;
}

} // namespace

double reduced_energy(const radial_grid& g, const kinetics& kin,
                      const field& u, const field& v) {
    double s = 0.0;
    for (int i = 0; i < g.N; ++i) s += (kin.G(u[i]) - 0.5 * u[i] * v[i]) * g.Vc[i];
    return s;
}

stationary_result solve_stationary(const radial_grid& g, const kinetics& kin,
                                   const stationary_params& sp, const field* v_init) {
    if (!(sp.m > 0.0)) throw std::invalid_argument("solve_stationary: mass must be positive");
    if (!(sp.tol > 0.0) || sp.max_iter < 1 || !(sp.lambda0 > 0.0) || !(sp.lambda0 <= 1.0))
        throw std::invalid_argument("solve_stationary: bad solver parameters");

    field v;
    if (v_init) {
        if (static_cast<int>(v_init->size()) != g.N)
            throw std::invalid_argument("solve_stationary: guess size mismatch");
        v = *v_init;
    } else {
        double c = sp.m / g.ball_volume;
        double width = sp.guess_width > 0.0 ? sp.guess_width : g.R / 6.0;
        v.resize(g.N);
        for (int i = 0; i < g.N; ++i)
            v[i] = c * (1.0 + sp.guess_amp * std::exp(-g.rc[i] * g.rc[i] / (2.0 * width * width)));
    }

    const double lambda_cap = std::max(sp.lambda0, 0.8);
    double lambda = sp.lambda0;
    double prev_delta = std::numeric_limits<double>::infinity();
    double L = 0.0;
    stationary_result out;
    std::size_t hint = 0;

    int it = 0;
    bool converged = false;
    for (; it < sp.max_iter; ++it) {
        L = solve_multiplier(g, kin, v, sp.m, L);
        field u(g.N);
        for (int i = 0; i < g.N; ++i) u[i] = kin.f_inverse(v[i] + L, &hint);
        field w = helmholtz_solve(g, u);
        field vn = helmholtz_solve(g, w);
        double delta = 0.0;
        for (int i = 0; i < g.N; ++i) delta = std::max(delta, std::fabs(vn[i] - v[i]));
        if (delta <= sp.tol) {
            converged = true;
            for (int i = 0; i < g.N; ++i) v[i] = vn[i];
            ++it;
            break;
        }
        lambda = (delta > prev_delta) ? std::max(0.5 * lambda, 0.02)
                                      : std::min(1.05 * lambda, lambda_cap);
        prev_delta = delta;
        for (int i = 0; i < g.N; ++i) v[i] += lambda * (vn[i] - v[i]);
    }

    // final consistent ordering: u from the converged v, then exact solves
    L = solve_multiplier(g, kin, v, sp.m, L);
    field u(g.N);
    for (int i = 0; i < g.N; ++i) u[i] = kin.f_inverse(v[i] + L, &hint);
    field w = helmholtz_solve(g, u);
    field v_final = helmholtz_solve(g, w);

    out.converged = converged;
    out.iterations = it;
    out.L = L;
    out.m = cell_integral(g, u);
    field lw = laplacian(g, w);
    field lv = laplacian(g, v_final);
    for (int i = 0; i < g.N; ++i) {
        out.res_w = std::max(out.res_w, std::fabs(w[i] - lw[i] - u[i]));
        out.res_v = std::max(out.res_v, std::fabs(v_final[i] - lv[i] - w[i]));
        if (u[i] > kin.params().s_table_min)
            out.res_flux = std::max(out.res_flux, std::fabs(kin.f(u[i]) - v_final[i] - L));
    }
    out.energy_reduced = reduced_energy(g, kin, u, v_final);
    out.u = std::move(u);
    out.v = std::move(v_final);
    out.w = std::move(w);
    return out;
}

std::vector<scan_point> stationary_energy_scan(const radial_grid& g, const kinetics& kin,
                                               const std::vector<double>& masses,
                                               stationary_params base) {
    std::vector<scan_point> pts;
    pts.reserve(masses.size());
    for (double m : masses) {
        base.m = m;
        auto sol = solve_stationary(g, kin, base);
        scan_point p;
        p.m = m;
        p.F = sol.energy_reduced;
        p.converged = sol.converged;
        double mn = min_value(sol.u);
        p.contrast = mn > 0.0 ? sup_norm(sol.u) / mn : std::numeric_limits<double>::infinity();
        pts.push_back(p);
    }
    return pts;
}

} // namespace chemlab
