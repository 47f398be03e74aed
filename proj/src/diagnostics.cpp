#include "chemlab/diagnostics.hpp"

#include "chemlab/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace chemlab {

double total_mass(const radial_grid& g, const field& u) { return cell_integral(g, u); }

double lp_norm(const radial_grid& g, const field& x, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    double s = 0.0;
    for (int i = 0; i < g.N; ++i) s += std::pow(std::fabs(x[i]), p) * g.Vc[i];
    return std::pow(s, 1.0 / p);
}

energy_terms energy_breakdown(const radial_grid& g, const kinetics& kin,
                              const field& u, const field& v, const field& w) {
    energy_terms e;
    field vt = laplacian(g, v);
    for (int i = 0; i < g.N; ++i) vt[i] += w[i] - v[i];
    for (int i = 0; i < g.N; ++i) {
        double lap_term = w[i] - vt[i]; // -lap v + v
        e.storage += kin.G(u[i]) * g.Vc[i];
        e.cross -= u[i] * v[i] * g.Vc[i];
        e.rate += 0.5 * vt[i] * vt[i] * g.Vc[i];
        e.elliptic += 0.5 * lap_term * lap_term * g.Vc[i];
    }
    e.total = e.storage + e.cross + e.rate + e.elliptic;
    return e;
}

double energy(const radial_grid& g, const kinetics& kin,
              const field& u, const field& v, const field& w) {
    return energy_breakdown(g, kin, u, v, w).total;
}

dissipation_result dissipation(const radial_grid& g, const kinetics& kin,
                               const field& u, const field& v, const field& w) {
    dissipation_result d;
    auto gu = face_gradient(g, u);
    auto gv = face_gradient(g, v);
    for (int i = 1; i < g.N; ++i) {
        double uf = 0.5 * (u[i - 1] + u[i]);
        double Sf = kin.S(uf);
        if (Sf <= 1e-14) {
            ++d.skipped_faces;
            continue;
        }
        double drift = kin.D(uf) / Sf * gu[i] - gv[i];
        d.flux_part += Sf * drift * drift * g.Af[i] * g.dr;
    }
    field vt = laplacian(g, v);
    for (int i = 0; i < g.N; ++i) vt[i] += w[i] - v[i];
    auto gvt = face_gradient(g, vt);
    double grad_sq = 0.0;
    for (int i = 1; i < g.N; ++i) grad_sq += gvt[i] * gvt[i] * g.Af[i] * g.dr;
    double vt_sq = 0.0;
    for (int i = 0; i < g.N; ++i) vt_sq += vt[i] * vt[i] * g.Vc[i];
    d.rate_parts = 2.0 * grad_sq + 2.0 * vt_sq;
    d.total = d.flux_part + d.rate_parts;
    return d;
}

double budget_audit(const std::vector<energy_row>& rows) {
    if (rows.empty()) return 0.0;
    double Q = 0.0, worst = 0.0;
    for (std::size_t k = 1; k < rows.size(); ++k) {
        Q += 0.5 * (rows[k].Diss + rows[k - 1].Diss) * (rows[k].t - rows[k - 1].t);
        worst = std::max(worst, std::fabs(rows[k].F - rows[0].F + Q));
    }
    return worst;
}

std::string csv_header() {
    return "step,t,dt,mass,sup_u,l2_u,lp_u,F,Diss,budget_residual,sup_v,sup_w";
}

std::string csv_line(const energy_row& r) {
    std::string s = std::to_string(r.step);
    s += ',';
    s += fmt17(r.t);
    s += ',';
    s += fmt17(r.dt);
    s += ',';
    s += fmt17(r.mass);
    s += ',';
    s += fmt17(r.sup_u);
    s += ',';
    s += fmt17(r.l2_u);
    s += ',';
    s += fmt17(r.lp_u);
    s += ',';
    s += fmt17(r.F);
    s += ',';
    s += fmt17(r.Diss);
    s += ',';
    s += fmt17(r.budget_residual);
    s += ',';
    s += fmt17(r.sup_v);
    s += ',';
    s += fmt17(r.sup_w);
    return s;
}

} // namespace chemlab
