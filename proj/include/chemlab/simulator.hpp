#pragma once

#include "chemlab/diagnostics.hpp"
#include "chemlab/kinetics.hpp"
#include "chemlab/radial_grid.hpp"

#include <string>
#include <vector>

namespace chemlab {

struct sim_state {
    double t = 0.0;
    field u, v, w;
};

struct time_controls {
    double t_end = 5.0;
    double dt_init = 1e-4;
    double dt_min = 1e-12;
    double dt_max = 1e-2;
    double cfl = 0.4;
    long stride = 10;        // accepted steps between recorded rows
    double u_max = 1e8;      // sup u threshold for suspected blow-up
    double nonneg_tol = 1e-13;
    double growth_cap = 0.2; // per-step relative sup growth that forces a retry
    double lp_p = 4.0;
    bool record_series = true;
};

enum class run_outcome { completed, blowup_suspected, dt_floor, growing };
const char* outcome_name(run_outcome o);

// One semi-implicit step of size dt: backward Euler Helmholtz updates for w
// then v (in that order), then a conservative flux update for u with implicit
// frozen-coefficient diffusion and explicit upwind chemotaxis against the new v.
sim_state step(const radial_grid& g, const kinetics& kin, const sim_state& s, double dt);

// min(dt_max, dt_ctrl, cfl * dr / max face chemotactic speed), where the speed
// uses the donor-cell value S(u)/max(u, 1e-12) * |grad v|.
double choose_dt(const radial_grid& g, const kinetics& kin, const sim_state& s,
                 const time_controls& tc, double dt_ctrl);

struct run_result {
    run_outcome outcome = run_outcome::completed;
    sim_state state;               // final state
    std::vector<energy_row> series;
    long accepted = 0;
    long rejected = 0;
    double min_dt = 0.0;
    double max_dt = 0.0;
    double initial_sup_u = 0.0;
    double max_sup_u = 0.0;
    double F0 = 0.0;
    double wall_seconds = 0.0;
};

// Adaptive-step run to t_end (or earlier stop).  Steps are rejected when the
// new u dips below -nonneg_tol or its sup grows by more than growth_cap in one
// step; the controller halves on rejection and relaxes by 1.25x after five
// consecutive accepts.  Throws on non-finite fields.
run_result run(const radial_grid& g, const kinetics& kin, sim_state initial,
               const time_controls& tc);

} // namespace chemlab
