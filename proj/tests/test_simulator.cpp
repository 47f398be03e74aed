#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chemlab/initdata.hpp"
#include "chemlab/simulator.hpp"

#include <cmath>
#include <stdexcept>

using namespace chemlab;

namespace {

kinetics make_kin(double alpha, double beta, double kd = 1.0, double ks = 1.0) {
    kinetics_params p;
    p.alpha = alpha;
    p.beta = beta;
    p.K_D = kd;
    p.k_S = ks;
    return kinetics(p);
}

sim_state state_from(const init_triple& tr) {
    sim_state s;
    s.u = tr.u;
    s.v = tr.v;
    s.w = tr.w;
    return s;
}

} // namespace

TEST_CASE("constant states are fixed points of the step map") {
    auto g = make_grid(3, 1.0, 64);
    auto kin = make_kin(0.5, 0.5);
    double c = 3.0;
    sim_state s;
    s.u = field(g.N, c);
    s.v = field(g.N, c);
    s.w = field(g.N, c);
    auto next = step(g, kin, s, 1e-2);
    for (int i = 0; i < g.N; ++i) {
        CHECK(next.u[i] == doctest::Approx(c).epsilon(1e-12));
        CHECK(next.v[i] == doctest::Approx(c).epsilon(1e-12));
        CHECK(next.w[i] == doctest::Approx(c).epsilon(1e-12));
    }
    CHECK(next.t == doctest::Approx(1e-2));

    time_controls tc;
    tc.t_end = 0.1;
    auto res = run(g, kin, s, tc);
    CHECK(res.outcome == run_outcome::completed);
    for (int i = 0; i < g.N; ++i)
        CHECK(res.state.u[i] == doctest::Approx(c).epsilon(1e-11));
    CHECK(res.series.front().F == doctest::Approx(res.series.back().F).epsilon(1e-11));
}

TEST_CASE("negligible sensitivity reduces to heat flow") {
    auto g = make_grid(3, 1.0, 128);
    auto kin = make_kin(0.0, 0.5, 1.0, 1e-300);
    auto s = state_from(make_gaussian(g, 5.0, 0.25));
    double m0 = cell_integral(g, s.u);
    double sup0 = sup_norm(s.u);

    time_controls tc;
    tc.t_end = 0.75;
    tc.record_series = false; // no energy evaluations in this regime
    auto res = run(g, kin, s, tc);

    CHECK(res.outcome == run_outcome::completed);
    CHECK(res.series.empty());
    double mean = 5.0 / g.ball_volume;
    CHECK(cell_integral(g, res.state.u) == doctest::Approx(m0).epsilon(1e-12));
    CHECK(sup_norm(res.state.u) < sup0);
    CHECK(sup_norm(res.state.u) == doctest::Approx(mean).epsilon(1e-3));
    CHECK(min_value(res.state.u) == doctest::Approx(mean).epsilon(1e-3));
    // both signals relax to the same constant
    CHECK(sup_norm(res.state.w) == doctest::Approx(mean).epsilon(1e-3));
    CHECK(sup_norm(res.state.v) == doctest::Approx(mean).epsilon(1e-3));
}

TEST_CASE("one step versus two half steps shrinks at second order") {
    // dt must sit below 1/||A|| for the implicit solve to leave the stiff
    // saturation regime, hence the coarse grid and small steps
    auto g = make_grid(2, 1.0, 32);
    auto kin = make_kin(0.3, 0.6);
    auto s = state_from(make_gaussian(g, 10.0, 0.3));

    auto defect = [&](double dt) {
        auto one = step(g, kin, s, dt);
        auto half = step(g, kin, step(g, kin, s, 0.5 * dt), 0.5 * dt);
        double d = 0.0;
        for (int i = 0; i < g.N; ++i) d = std::max(d, std::fabs(one.u[i] - half.u[i]));
        return d;
    };
    double d1 = defect(2e-5);
    double d2 = defect(1e-5);
    CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("time step selection") {
    auto g = make_grid(2, 1.0, 64);
    auto kin = make_kin(0.0, 1.0); // S(u) = u
    time_controls tc;
    tc.dt_max = 1e-2;
    tc.cfl = 0.4;

    sim_state s;
    s.u = field(g.N, 1.0);
    s.v = field(g.N, 5.0); // flat signal: no chemotactic bound
    s.w = s.v;
    CHECK(choose_dt(g, kin, s, tc, 3e-3) == doctest::Approx(3e-3).epsilon(1e-14));
    CHECK(choose_dt(g, kin, s, tc, 1.0) == doctest::Approx(tc.dt_max).epsilon(1e-14));

    for (int i = 0; i < g.N; ++i) s.v[i] = g.rc[i] * g.rc[i];
    double speed = 2.0 * g.rf[g.N - 1]; // donor value 1, steepest interior face
    double expect = tc.cfl * g.dr / speed;
    CHECK(choose_dt(g, kin, s, tc, 1.0) == doctest::Approx(expect).epsilon(1e-12));

    for (int i = 0; i < g.N; ++i) s.v[i] *= 2.0; // double the gradient
    CHECK(choose_dt(g, kin, s, tc, 1.0) == doctest::Approx(0.5 * expect).epsilon(1e-12));
}

TEST_CASE("mass is conserved and positivity maintained in a mild run") {
    auto g = make_grid(2, 1.0, 128);
    auto kin = make_kin(0.0, 1.0);
    auto s = state_from(make_gaussian(g, 5.0, 0.25));
    time_controls tc;
    tc.t_end = 0.5;
    auto res = run(g, kin, s, tc);
    CHECK(res.outcome == run_outcome::completed);
    CHECK(res.rejected == 0);
    CHECK(cell_integral(g, res.state.u) == doctest::Approx(5.0).epsilon(1e-10));
    CHECK(min_value(res.state.u) >= 0.0);
    CHECK(res.series.back().F < res.F0); // dissipative relaxation
}

TEST_CASE("recorded series structure") {
    auto g = make_grid(2, 1.0, 64);
    auto kin = make_kin(0.0, 1.0);
    auto s = state_from(make_gaussian(g, 5.0, 0.25));
    time_controls tc;
    tc.t_end = 0.2;
    tc.stride = 7;
    auto res = run(g, kin, s, tc);
    REQUIRE(res.series.size() > 2);
    CHECK(res.series.front().step == 0);
    CHECK(res.series.front().t == 0.0);
    CHECK(res.series[1].step == 7);
    CHECK(res.series.back().step == res.accepted);
    CHECK(res.series.back().t == doctest::Approx(0.2).epsilon(1e-12));
    for (std::size_t k = 1; k < res.series.size(); ++k) {
        CHECK(res.series[k].t > res.series[k - 1].t);
        CHECK(res.series[k].mass == doctest::Approx(5.0).epsilon(1e-10));
    }
}

TEST_CASE("strong aggregation trips the blow-up guard") {
    auto g = make_grid(2, 1.0, 128);
    auto kin = make_kin(0.0, 1.0, 0.05, 1.0);
    auto s = state_from(make_gaussian(g, 50.0, 0.2));
    time_controls tc;
    tc.t_end = 2.0;
    tc.u_max = 1e3;
    tc.record_series = false;
    auto res = run(g, kin, s, tc);
    CHECK(res.outcome == run_outcome::blowup_suspected);
    CHECK(res.max_sup_u >= 1e3);
    CHECK(res.state.t < 2.0);
}

TEST_CASE("sustained growth is labelled when the horizon is reached") {
    auto g = make_grid(2, 1.0, 128);
    auto kin = make_kin(0.0, 1.0, 0.05, 1.0);
    auto s = state_from(make_gaussian(g, 50.0, 0.2));
    time_controls tc;
    tc.t_end = 0.05;
    tc.u_max = 1e18;
    tc.record_series = false;
    auto res = run(g, kin, s, tc);
    CHECK(res.outcome == run_outcome::growing);
    CHECK(sup_norm(res.state.u) >= 10.0 * res.initial_sup_u);
    CHECK(res.state.t == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("a zero growth cap drives the step to the floor") {
    auto g = make_grid(2, 1.0, 128);
    auto kin = make_kin(0.0, 1.0, 0.05, 1.0);
    auto s = state_from(make_gaussian(g, 50.0, 0.2));
    time_controls tc;
    tc.t_end = 2.0;
    tc.growth_cap = 0.0; // sup strictly grows here, so every step is rejected
    tc.record_series = false;
    auto res = run(g, kin, s, tc);
    CHECK(res.outcome == run_outcome::dt_floor);
    CHECK(res.accepted == 0);
    CHECK(res.rejected >= 20);
    CHECK(res.state.t == 0.0);
}

TEST_CASE("outcome names") {
    CHECK(std::string(outcome_name(run_outcome::completed)) == "completed");
    CHECK(std::string(outcome_name(run_outcome::blowup_suspected)) == "blowup_suspected");
    CHECK(std::string(outcome_name(run_outcome::dt_floor)) == "dt_floor");
    CHECK(std::string(outcome_name(run_outcome::growing)) == "growing");
}

TEST_CASE("input validation") {
    auto g = make_grid(2, 1.0, 32);
    auto kin = make_kin(0.5, 0.5);
    sim_state s;
    s.u = field(g.N, 1.0);
    s.v = field(g.N, 1.0);
    s.w = field(g.N, 1.0);
    time_controls tc;

    sim_state bad = s;
    bad.u[3] = -1e-3;
    CHECK_THROWS_AS(run(g, kin, bad, tc), std::invalid_argument);
    bad = s;
    bad.v[0] = std::nan("");
    CHECK_THROWS_AS(run(g, kin, bad, tc), std::invalid_argument);
    bad = s;
    bad.w.pop_back();
    CHECK_THROWS_AS(run(g, kin, bad, tc), std::invalid_argument);

    time_controls bt = tc;
    bt.dt_init = 1e-14; // below dt_min
    CHECK_THROWS_AS(run(g, kin, s, bt), std::invalid_argument);
    bt = tc;
    bt.stride = 0;
    CHECK_THROWS_AS(run(g, kin, s, bt), std::invalid_argument);
    bt = tc;
    bt.t_end = -1.0;
    CHECK_THROWS_AS(run(g, kin, s, bt), std::invalid_argument);
}
