#include "chemlab/simulator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace chemlab {

const char* outcome_name(run_outcome o) {
    switch (o) {
        case run_outcome::completed: return "completed";
        case run_outcome::blowup_suspected: return "blowup_suspected";
        case run_outcome::dt_floor: return "dt_floor";
        case run_outcome::growing: return "growing";
    }
    return "unknown";
}

sim_state step(const radial_grid& g, const kinetics& kin, const sim_state& s, double dt) {
    const int N = g.N;
    if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");

    // w update: (I - dt lap + dt) w' = w + dt u
    field b(N);
    for (int i = 0; i < N; ++i) b[i] = s.w[i] + dt * s.u[i];
    field w1 = screened_solve(g, 1.0 + dt, dt, face_field(N + 1, 1.0), b);

    // v update against the new w
    for (int i = 0; i < N; ++i) b[i] = s.v[i] + dt * w1[i];
    field v1 = screened_solve(g, 1.0 + dt, dt, face_field(N + 1, 1.0), b);

    // u update: implicit diffusion with coefficients frozen at the current u,
    // explicit donor-cell chemotaxis along grad of the new v
    auto gv = face_gradient(g, v1);
    face_field chem(N + 1, 0.0);
    for (int i = 1; i < N; ++i) {
        int donor = gv[i] > 0.0 ? i - 1 : i;
        chem[i] = kin.S(s.u[donor]) * gv[i];
    }
    field adv = face_divergence(g, chem);
    face_field Df(N + 1, 0.0);
    for (int i = 1; i < N; ++i) Df[i] = kin.D(0.5 * (s.u[i - 1] + s.u[i]));
    for (int i = 0; i < N; ++i) b[i] = s.u[i] - dt * adv[i];
    field u1 = screened_solve(g, 1.0, dt, Df, b);

    return sim_state{s.t + dt, std::move(u1), std::move(v1), std::move(w1)};
}

double choose_dt(const radial_grid& g, const kinetics& kin, const sim_state& s,
                 const time_controls& tc, double dt_ctrl) {
    double dt = std::min(tc.dt_max, dt_ctrl);
    auto gv = face_gradient(g, s.v);
    double speed = 0.0;
    for (int i = 1; i < g.N; ++i) {
        int donor = gv[i] > 0.0 ? i - 1 : i;
        double ud = s.u[donor];
        speed = std::max(speed, kin.S(ud) / std::max(ud, 1e-12) * std::fabs(gv[i]));
    }
    if (speed > 0.0) dt = std::min(dt, tc.cfl * g.dr / speed);
    return dt;
}

namespace {

bool finite_fields(const sim_state& s) {
    for (const field* f : {&s.u, &s.v, &s.w})
        for (double x : *f)
            if (!std::isfinite(x)) return false;
    return true;
}

energy_row make_row(const radial_grid& g, const kinetics& kin, const sim_state& s,
                    long step_no, double dt, double F0, double Q, const time_controls& tc) {
    energy_row r;
    r.step = step_no;
    r.t = s.t;
    r.dt = dt;
    r.mass = total_mass(g, s.u);
    r.sup_u = *std::max_element(s.u.begin(), s.u.end());
    r.l2_u = lp_norm(g, s.u, 2.0);
    r.lp_u = lp_norm(g, s.u, tc.lp_p);
    r.F = energy(g, kin, s.u, s.v, s.w);
    r.Diss = dissipation(g, kin, s.u, s.v, s.w).total;
    r.budget_residual = (step_no == 0) ? 0.0 : std::fabs(r.F - F0 + Q);
    r.sup_v = *std::max_element(s.v.begin(), s.v.end());
    r.sup_w = *std::max_element(s.w.begin(), s.w.end());
    return r;
}

} // namespace

run_result run(const radial_grid& g, const kinetics& kin, sim_state initial,
               const time_controls& tc) {
    const int N = g.N;
    if (static_cast<int>(initial.u.size()) != N || static_cast<int>(initial.v.size()) != N ||
        static_cast<int>(initial.w.size()) != N)
        throw std::invalid_argument("run: field sizes do not match the grid");
    for (const field* f : {&initial.u, &initial.v, &initial.w})
        for (double x : *f)
            if (!(x >= 0.0) || !std::isfinite(x))
                throw std::invalid_argument("run: initial fields must be nonnegative and finite");
    if (!(tc.t_end > 0.0) || !(tc.dt_min > 0.0) || !(tc.dt_init >= tc.dt_min) ||
        !(tc.dt_max >= tc.dt_init) || !(tc.cfl > 0.0) || tc.stride < 1)
        throw std::invalid_argument("run: inconsistent time controls");

    auto t_start = std::chrono::steady_clock::now();
    run_result res;
    res.state = std::move(initial);
    res.initial_sup_u = *std::max_element(res.state.u.begin(), res.state.u.end());
    res.max_sup_u = res.initial_sup_u;
    res.min_dt = tc.dt_max;

    double Q = 0.0;
    double D_prev = 0.0;
    if (tc.record_series) {
        D_prev = dissipation(g, kin, res.state.u, res.state.v, res.state.w).total;
        res.series.push_back(make_row(g, kin, res.state, 0, 0.0, 0.0, 0.0, tc));
        res.F0 = res.series.front().F;
    }

    double dt_ctrl = tc.dt_init;
    int streak = 0;
    long last_recorded = 0;
    double last_dt = 0.0;
    bool stopped_early = false;

    while (res.state.t < tc.t_end * (1.0 - 1e-14)) {
        double dt_free = choose_dt(g, kin, res.state, tc, dt_ctrl);
        if (dt_free < tc.dt_min) {
            res.outcome = run_outcome::dt_floor;
            stopped_early = true;
            break;
        }
        double dt = std::min(dt_free, tc.t_end - res.state.t);
        sim_state next = step(g, kin, res.state, dt);
        if (!finite_fields(next))
            throw std::runtime_error("run: non-finite field values at t = " + fmt17(next.t));

        double min_u = min_value(next.u);
        double sup_prev = *std::max_element(res.state.u.begin(), res.state.u.end());
        double sup_next = *std::max_element(next.u.begin(), next.u.end());
        bool reject = min_u < -tc.nonneg_tol ||
                      (sup_prev > 0.0 && sup_next > (1.0 + tc.growth_cap) * sup_prev);
        if (reject) {
            ++res.rejected;
            streak = 0;
            dt_ctrl = 0.5 * dt;
            if (dt_ctrl < tc.dt_min) {
                res.outcome = run_outcome::dt_floor;
                stopped_early = true;
                break;
            }
            continue;
        }

        for (double& x : next.u)
            if (x < 0.0) x = 0.0;
        res.state = std::move(next);
        ++res.accepted;
        ++streak;
        if (streak >= 5) {
            dt_ctrl = std::min(dt * 1.25, tc.dt_max);
            streak = 0;
        }
        res.min_dt = std::min(res.min_dt, dt);
        res.max_dt = std::max(res.max_dt, dt);
        res.max_sup_u = std::max(res.max_sup_u, sup_next);
        last_dt = dt;

        if (tc.record_series) {
            double D_new = dissipation(g, kin, res.state.u, res.state.v, res.state.w).total;
            Q += 0.5 * (D_prev + D_new) * dt;
            D_prev = D_new;
            if (res.accepted % tc.stride == 0) {
                res.series.push_back(make_row(g, kin, res.state, res.accepted, dt, res.F0, Q, tc));
                last_recorded = res.accepted;
            }
        }

        if (sup_next >= tc.u_max) {
            res.outcome = run_outcome::blowup_suspected;
            stopped_early = true;
            break;
        }
    }

    if (!stopped_early) {
        double sup_final = *std::max_element(res.state.u.begin(), res.state.u.end());
        res.outcome = (res.initial_sup_u > 0.0 && sup_final >= 10.0 * res.initial_sup_u)
                          ? run_outcome::growing
                          : run_outcome::completed;
    }
    if (tc.record_series && res.accepted != last_recorded)
        res.series.push_back(make_row(g, kin, res.state, res.accepted, last_dt, res.F0, Q, tc));
    res.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return res;
}

} // namespace chemlab
