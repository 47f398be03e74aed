#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chemlab/radial_grid.hpp"

#include <cmath>
#include <vector>

using namespace chemlab;

namespace {
const double pi = std::acos(-1.0);
}

TEST_CASE("sphere measures match closed forms") {
    CHECK(make_grid(1, 1.0, 8).omega == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(make_grid(2, 1.0, 8).omega == doctest::Approx(2 * pi).epsilon(1e-14));
    CHECK(make_grid(3, 1.0, 8).omega == doctest::Approx(4 * pi).epsilon(1e-14));
    CHECK(make_grid(4, 1.0, 8).omega == doctest::Approx(2 * pi * pi).epsilon(1e-14));
    CHECK(make_grid(5, 1.0, 8).omega == doctest::Approx(8 * pi * pi / 3).epsilon(1e-14));
    CHECK(make_grid(3, 2.0, 8).ball_volume ==
          doctest::Approx(4.0 / 3.0 * pi * 8.0).epsilon(1e-14));
}

TEST_CASE("cell volumes telescope to the exact ball volume") {
    for (int n : {1, 2, 3, 4, 5, 6}) {
        auto g = make_grid(n, 1.7, 173);
        double sum = 0.0;
        for (double v : g.Vc) sum += v;
        CHECK(sum == doctest::Approx(g.ball_volume).epsilon(1e-14));
        CHECK(cell_integral(g, field(g.N, 1.0)) ==
              doctest::Approx(g.ball_volume).epsilon(1e-14));
        for (double v : g.Vc) CHECK(v > 0.0);
    }
}

TEST_CASE("grid construction rejects degenerate input") {
    CHECK_THROWS(make_grid(0, 1.0, 16));
    CHECK_THROWS(make_grid(3, -1.0, 16));
    CHECK_THROWS(make_grid(3, 1.0, 2));
}

TEST_CASE("face gradient is exact on quadratics") {
    auto g = make_grid(3, 2.0, 64);
    field x(g.N);
    for (int i = 0; i < g.N; ++i) x[i] = g.rc[i] * g.rc[i];
    auto gr = face_gradient(g, x);
    CHECK(gr[0] == 0.0);
    CHECK(gr[g.N] == 0.0);
    for (int i = 1; i < g.N; ++i)
        CHECK(gr[i] == doctest::Approx(2.0 * g.rf[i]).epsilon(1e-13));
}

TEST_CASE("laplacian of r^2 equals 2n away from the outer wall") {
    for (int n : {2, 3, 5}) {
        auto g = make_grid(n, 1.0, 32);
        field x(g.N);
        for (int i = 0; i < g.N; ++i) x[i] = g.rc[i] * g.rc[i];
        auto lap = laplacian(g, x);
        for (int i = 0; i + 1 < g.N; ++i)
            CHECK(lap[i] == doctest::Approx(2.0 * n).epsilon(1e-11));
        // last cell sees the no-flux wall instead of the true gradient
        CHECK(lap[g.N - 1] < 0.0);
    }
}

TEST_CASE("cell gradient is exact on quadratics away from the wall") {
    auto g = make_grid(4, 1.5, 48);
    field x(g.N);
    for (int i = 0; i < g.N; ++i) x[i] = g.rc[i] * g.rc[i];
    auto cg = cell_gradient(g, x);
    for (int i = 1; i + 1 < g.N; ++i)
        CHECK(cg[i] == doctest::Approx(2.0 * g.rc[i]).epsilon(1e-12));
}

TEST_CASE("fourth order face gradient is exact on cubics") {
    auto g = make_grid(3, 1.0, 40);
    field x(g.N);
    for (int i = 0; i < g.N; ++i)
        x[i] = g.rc[i] * g.rc[i] * g.rc[i] - 2.0 * g.rc[i] * g.rc[i] + 0.5;
    auto g4 = face_gradient4(g, x);
    for (int i = 2; i < g.N; ++i) {
        double exact = 3.0 * g.rf[i] * g.rf[i] - 4.0 * g.rf[i];
        CHECK(g4[i] == doctest::Approx(exact).epsilon(1e-10));
    }
}

TEST_CASE("discrete summation by parts is exact") {
    auto g = make_grid(3, 1.0, 57);
    field u(g.N), v(g.N);
    for (int i = 0; i < g.N; ++i) {
        u[i] = std::cos(pi * g.rc[i]);
        v[i] = g.rc[i] * g.rc[i] * (1.0 - g.rc[i]);
    }
    auto gu = face_gradient(g, u);
    auto gv = face_gradient(g, v);
    face_field prod(g.N + 1, 0.0);
    for (int i = 0; i <= g.N; ++i) prod[i] = gu[i] * gv[i];
    double lhs = face_integral(g, prod);
    auto lv = laplacian(g, v);
    double rhs = 0.0;
    for (int i = 0; i < g.N; ++i) rhs -= u[i] * lv[i] * g.Vc[i];
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("screened solve leaves machine-level residuals") {
    auto g = make_grid(5, 2.0, 100);
    field b(g.N);
    face_field kappa(g.N + 1);
    for (int i = 0; i < g.N; ++i) b[i] = std::sin(3.0 * g.rc[i]) + 1.5;
    for (int i = 0; i <= g.N; ++i) kappa[i] = 1.0 + 0.5 * std::cos(g.rf[i]);
    double mu = 2.5, sigma = 0.7;
    auto x = screened_solve(g, mu, sigma, kappa, b);
    auto gx = face_gradient(g, x);
    face_field flux(g.N + 1, 0.0);
    for (int i = 0; i <= g.N; ++i) flux[i] = kappa[i] * gx[i];
    auto dv = face_divergence(g, flux);
    for (int i = 0; i < g.N; ++i)
        CHECK(mu * x[i] - sigma * dv[i] == doctest::Approx(b[i]).epsilon(1e-12));
}

TEST_CASE("screened solve is positivity preserving") {
    auto g = make_grid(3, 1.0, 64);
    field b(g.N, 0.0);
    b[10] = 5.0;
    b[40] = 1.0;
    auto x = screened_solve(g, 1.0, 1.0, face_field(g.N + 1, 1.0), b);
    for (double xi : x) CHECK(xi > 0.0);
}

TEST_CASE("helmholtz solve converges at second order") {
    // manufactured: u = cos(pi r / R) satisfies the no-flux conditions
    auto solve_err = [](int N) {
        auto g = make_grid(3, 1.0, N);
        double k = pi / g.R;
        field rhs(g.N), ref(g.N);
        for (int i = 0; i < g.N; ++i) {
            double r = g.rc[i];
            ref[i] = std::cos(k * r);
            rhs[i] = std::cos(k * r) * (1.0 + k * k) +
                     (g.n - 1) * k * std::sin(k * r) / r;
        }
        auto x = helmholtz_solve(g, rhs);
        double e = 0.0;
        for (int i = 0; i < g.N; ++i) e = std::max(e, std::fabs(x[i] - ref[i]));
        return e;
    };
    double e1 = solve_err(64), e2 = solve_err(128), e3 = solve_err(256);
    CHECK(e3 < 2e-4);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.15));
    CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("helmholtz solve preserves integrals") {
    // integrating (I - lap) x = b over the ball kills the flux term
    auto g = make_grid(4, 1.0, 80);
    field b(g.N);
    for (int i = 0; i < g.N; ++i) b[i] = 1.0 + g.rc[i];
    auto x = helmholtz_solve(g, b);
    CHECK(cell_integral(g, x) == doctest::Approx(cell_integral(g, b)).epsilon(1e-12));
}

TEST_CASE("norm helpers") {
    field x{-3.0, 1.0, 2.0};
    CHECK(sup_norm(x) == 3.0);
    CHECK(min_value(x) == -3.0);
}
