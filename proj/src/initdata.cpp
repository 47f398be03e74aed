#include "chemlab/initdata.hpp"

#include "chemlab/numerics.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace chemlab {

double mollifier_constant(int n) {
    if (n < 1 || n > 64) throw std::invalid_argument("mollifier_constant: bad dimension");
    static std::array<double, 65> cache{};
    static std::array<std::once_flag, 65> flags;
    std::call_once(flags[n], [n] {
        double omega = 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
        auto q = integrate_adaptive(
            [n](double r) {
                double d = 1.0 - r * r;
                return d > 0.0 ? std::exp(-1.0 / d) * std::pow(r, n - 1) : 0.0;
            },
            0.0, 1.0, 1e-12, 1e-16);
        cache[n] = 1.0 / (omega * q.value);
    });
    return cache[n];
}

double mollifier(int n, double y) {
    double d = 1.0 - y * y;
    if (d <= 0.0) return 0.0;
    return mollifier_constant(n) * std::exp(-1.0 / d);
}

double choose_rho(int n, double gamma) {
    double lo = std::max(0.0, n - n * gamma);
    double hi = n - 4.0;
    if (!(lo < hi))
        throw std::invalid_argument("choose_rho: empty exponent interval; gamma too small for n");
    return 0.5 * (lo + hi);
}

init_triple make_constant(const radial_grid& g, double m) {
    if (!(m > 0.0)) throw std::invalid_argument("make_constant: mass must be positive");
    double c = m / g.ball_volume;
    return {field(g.N, c), field(g.N, c), field(g.N, c)};
}

init_triple make_gaussian(const radial_grid& g, double m, double width) {
    if (!(m > 0.0) || !(width > 0.0))
        throw std::invalid_argument("make_gaussian: mass and width must be positive");
    field u(g.N);
    for (int i = 0; i < g.N; ++i)
        u[i] = std::exp(-g.rc[i] * g.rc[i] / (2.0 * width * width));
    double raw = cell_integral(g, u);
    for (double& x : u) x *= m / raw;
    field v = helmholtz_solve(g, u);
    return {std::move(u), field(v), std::move(v)};
}

namespace {

// background plus mollifier bump, with the bump weight corrected so the
// discrete total mass is exactly m
field bump_u(const radial_grid& g, double m, double eps, double eta) {
    if (!(eps > 0.0) || !(eps < m))
        throw std::invalid_argument("initdata: bump mass must lie in (0, m)");
    if (!(eta > 0.0) || !(eta < g.R))
        throw std::invalid_argument("initdata: concentration scale must lie in (0, R)");
    double cn = mollifier_constant(g.n);
    double scale = std::pow(eta, -g.n);
    field bump(g.N, 0.0);
    for (int i = 0; i < g.N; ++i) {
        double y = g.rc[i] / eta;
        double d = 1.0 - y * y;
        if (d > 0.0) bump[i] = cn * std::exp(-1.0 / d) * scale;
    }
    double bump_mass = cell_integral(g, bump);
    if (!(bump_mass > 0.0))
        throw std::invalid_argument("initdata: bump unresolved by the grid; increase cells or eta");
    double bg = (m - eps) / g.ball_volume;
    field u(g.N);
    for (int i = 0; i < g.N; ++i) u[i] = bg + eps / bump_mass * bump[i];
    return u;
}

} // namespace

init_triple make_highdim(const radial_grid& g, const init_params& p) {
    if (g.n <= 4) throw std::invalid_argument("make_highdim: needs dimension > 4");
    double eps = p.eps_mass < 0.0 ? 0.5 * p.m : p.eps_mass;
    double eta = p.eta < 0.0 ? 0.25 * g.R : p.eta;
    double rho = p.rho < 0.0 ? choose_rho(g.n, p.gamma) : p.rho;
    if (!(rho > 0.0) || !(rho < g.n - 4.0))
        throw std::invalid_argument("make_highdim: rho must lie in (0, n-4)");
    init_triple tr;
    tr.u = bump_u(g, p.m, eps, eta);
    tr.v.resize(g.N);
    double amp = std::pow(eta, -rho);
    double cn = mollifier_constant(g.n);
    for (int i = 0; i < g.N; ++i) {
        double y = g.rc[i] / eta;
        double d = 1.0 - y * y;
        tr.v[i] = d > 0.0 ? cn * std::exp(-1.0 / d) * amp : 0.0;
    }
    tr.w = tr.v;
    return tr;
}

init_triple make_critical4(const radial_grid& g, const init_params& p) {
    if (g.n != 4) throw std::invalid_argument("make_critical4: needs dimension 4");
    double eps = p.eps_mass < 0.0 ? 0.5 * p.m : p.eps_mass;
    double eta = p.eta < 0.0 ? 0.25 * g.R : p.eta;
    if (!(eta > 0.0) || !(eta < 0.5 * g.R))
        throw std::invalid_argument("make_critical4: eta must lie in (0, R/2)");
    if (!(p.kappa > 0.0) || !(p.kappa < 1.0))
        throw std::invalid_argument("make_critical4: kappa must lie in (0, 1)");
    if (p.n_psi < 2)
        throw std::invalid_argument("make_critical4: boundary power must be >= 2");
    init_triple tr;
    tr.u = bump_u(g, p.m, eps, eta);
    tr.v.resize(g.N);
    double R2 = g.R * g.R, e2 = eta * eta;
    double atten = std::pow(std::log(g.R / eta), -p.kappa);
    for (int i = 0; i < g.N; ++i) {
        double r2 = g.rc[i] * g.rc[i];
        double psi = std::pow(R2 - r2, p.n_psi);
        tr.v[i] = psi * atten * std::log((R2 + e2) / (r2 + e2));
    }
    tr.w = tr.v;
    return tr;
}

init_triple make_initial(const radial_grid& g, const init_params& p) {
    init_params q = p;
    if (q.eps_mass < 0.0) q.eps_mass = 0.5 * q.m;
    if (q.eta < 0.0) q.eta = 0.25 * g.R;
    if (q.family == "constant") return make_constant(g, q.m);
    if (q.family == "gaussian") return make_gaussian(g, q.m, q.eta);
    if (q.family == "highdim") return make_highdim(g, q);
    if (q.family == "critical4") return make_critical4(g, q);
    throw std::invalid_argument("make_initial: unknown family '" + q.family + "'");
}

} // namespace chemlab
