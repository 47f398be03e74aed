#include "chemlab/radial_grid.hpp"

#include "chemlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chemlab {

radial_grid make_grid(int n, double R, int N) {
    if (n < 1) throw std::invalid_argument("make_grid: dimension must be >= 1");
    if (!(R > 0.0)) throw std::invalid_argument("make_grid: radius must be positive");
    if (N < 4) throw std::invalid_argument("make_grid: need at least 4 cells");

    radial_grid g;
    g.n = n;
    g.R = R;
    g.N = N;
    g.dr = R / N;
    g.omega = 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
    g.ball_volume = g.omega / n * std::pow(R, n);

    g.rf.resize(N + 1);
    g.rc.resize(N);
    g.Af.resize(N + 1);
    g.Vc.resize(N);
    for (int i = 0; i <= N; ++i) {
        g.rf[i] = i * g.dr;
        g.Af[i] = g.omega * std::pow(g.rf[i], n - 1);
    }
    for (int i = 0; i < N; ++i) {
        g.rc[i] = (i + 0.5) * g.dr;
        g.Vc[i] = g.omega / n * (std::pow(g.rf[i + 1], n) - std::pow(g.rf[i], n));
    }
    return g;
}

double cell_integral(const radial_grid& g, const field& x) {
    double s = 0.0;
    for (int i = 0; i < g.N; ++i) s += x[i] * g.Vc[i];
    return s;
}

double face_integral(const radial_grid& g, const face_field& y) {
    double s = 0.0;
    for (int i = 1; i < g.N; ++i) s += y[i] * g.Af[i] * g.dr;
    return s;
}

face_field face_gradient(const radial_grid& g, const field& x) {
    face_field grad(g.N + 1, 0.0);
    for (int i = 1; i < g.N; ++i) grad[i] = (x[i] - x[i - 1]) / g.dr;
    return grad;
}

face_field face_gradient4(const radial_grid& g, const field& x) {
    face_field grad(g.N + 1, 0.0);
    const int N = g.N;
    for (int i = 1; i < N; ++i) grad[i] = (x[i] - x[i - 1]) / g.dr;
    for (int i = 2; i <= N - 2; ++i)
        grad[i] = (27.0 * (x[i] - x[i - 1]) - (x[i + 1] - x[i - 2])) / (24.0 * g.dr);
    if (N >= 5) {
        // one-sided 4-point derivative at face N-1
        std::vector<double> offs(4);
        for (int k = 0; k < 4; ++k) offs[k] = g.rc[N - 4 + k] - g.rf[N - 1];
        auto w = deriv_weights(offs, 1);
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += w[k] * x[N - 4 + k];
        grad[N - 1] = s;
    }
    return grad;
}

field face_divergence(const radial_grid& g, const face_field& flux) {
    field d(g.N, 0.0);
    for (int i = 0; i < g.N; ++i)
        d[i] = (g.Af[i + 1] * flux[i + 1] - g.Af[i] * flux[i]) / g.Vc[i];
    return d;
}

field laplacian(const radial_grid& g, const field& x) {
    return face_divergence(g, face_gradient(g, x));
}

field cell_gradient(const radial_grid& g, const field& x) {
    auto grad = face_gradient(g, x);
    field c(g.N);
    for (int i = 0; i < g.N; ++i) c[i] = 0.5 * (grad[i] + grad[i + 1]);
    return c;
}

field screened_solve(const radial_grid& g, double mu, double sigma,
                     const face_field& kappa, const field& b) {
    const int N = g.N;
    if (static_cast<int>(kappa.size()) != N + 1 || static_cast<int>(b.size()) != N)
        throw std::invalid_argument("screened_solve: size mismatch");
    if (!(mu > 0.0) || sigma < 0.0)
        throw std::invalid_argument("screened_solve: need mu > 0 and sigma >= 0");

    std::vector<double> lo(N, 0.0), di(N, 0.0), up(N, 0.0);
    for (int i = 0; i < N; ++i) {
        double wl = (i > 0) ? sigma * g.Af[i] * kappa[i] / (g.Vc[i] * g.dr) : 0.0;
        double wr = (i < N - 1) ? sigma * g.Af[i + 1] * kappa[i + 1] / (g.Vc[i] * g.dr) : 0.0;
        lo[i] = -wl;
        up[i] = -wr;
        di[i] = mu + wl + wr;
    }
    // Thomas sweep; the matrix is strictly diagonally dominant, no pivoting
    std::vector<double> c(N, 0.0), x(N, 0.0);
    double beta = di[0];
    x[0] = b[0] / beta;
    for (int i = 1; i < N; ++i) {
        c[i] = up[i - 1] / beta;
        beta = di[i] - lo[i] * c[i];
        x[i] = (b[i] - lo[i] * x[i - 1]) / beta;
    }
    for (int i = N - 2; i >= 0; --i) x[i] -= c[i + 1] * x[i + 1];
    return x;
}

field helmholtz_solve(const radial_grid& g, const field& b) {
    return screened_solve(g, 1.0, 1.0, face_field(g.N + 1, 1.0), b);
}

double sup_norm(const field& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::fabs(v));
    return m;
}

double min_value(const field& x) {
    return *std::min_element(x.begin(), x.end());
}

} // namespace chemlab
