#include "chemlab/runner.hpp"

#include "chemlab/diagnostics.hpp"
#include "chemlab/identities.hpp"
#include "chemlab/initdata.hpp"
#include "chemlab/numerics.hpp"
#include "chemlab/plots.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace chemlab {

namespace {

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

} // namespace

run_result execute(const run_config& cfg) {
    radial_grid g = grid_from(cfg);
    kinetics kin(kinetics_from(cfg));
    init_triple tr = make_initial(g, cfg.init);
    sim_state st;
    st.u = std::move(tr.u);
    st.v = std::move(tr.v);
    st.w = std::move(tr.w);
    return run(g, kin, std::move(st), cfg.controls);
}

nlohmann::json summary_json(const run_config& cfg, const run_result& res) {
    nlohmann::json j;
    j["run_id"] = cfg.run_id();
    j["outcome"] = outcome_name(res.outcome);
    j["n"] = cfg.n;
    j["alpha"] = cfg.alpha;
    j["beta"] = cfg.beta;
    j["family"] = cfg.init.family;
    j["m"] = cfg.init.m;
    j["eta"] = cfg.init.eta;
    j["cells"] = cfg.cells;
    j["t_final"] = res.state.t;
    j["accepted_steps"] = res.accepted;
    j["rejected_steps"] = res.rejected;
    j["sup_u_initial"] = res.initial_sup_u;
    j["sup_u_final"] = res.series.empty() ? sup_norm(res.state.u) : res.series.back().sup_u;
    j["sup_u_max"] = res.max_sup_u;
    j["min_dt"] = res.min_dt;
    j["max_dt"] = res.max_dt;
    j["F0"] = res.F0;
    j["F_final"] = res.series.empty() ? 0.0 : res.series.back().F;
    j["mass_final"] = res.series.empty() ? 0.0 : res.series.back().mass;
    j["budget_residual_final"] = res.series.empty() ? 0.0 : res.series.back().budget_residual;
    j["wall_seconds"] = res.wall_seconds;
    return j;
}

std::string simulate_to_files(const run_config& cfg, run_result* out) {
    run_result res = execute(cfg);
    std::string dir = cfg.out_dir + "/" + cfg.run_id();
    std::filesystem::create_directories(dir);
    {
        std::string csv = csv_header() + "\n";
        for (const auto& row : res.series) csv += csv_line(row) + "\n";
        write_text(dir + "/timeseries.csv", csv);
    }
    write_text(dir + "/summary.json", summary_json(cfg, res).dump(2) + "\n");
    emit_plots(dir, cfg.emit_svg);
    if (out) *out = std::move(res);
    return dir;
}

nlohmann::json energy_json(const run_config& cfg) {
    radial_grid g = grid_from(cfg);
    kinetics kin(kinetics_from(cfg));
    init_triple tr = make_initial(g, cfg.init);
    energy_terms e = energy_breakdown(g, kin, tr.u, tr.v, tr.w);
    auto d = dissipation(g, kin, tr.u, tr.v, tr.w);
    nlohmann::json j;
    j["run_id"] = cfg.run_id();
    j["family"] = cfg.init.family;
    j["mass"] = total_mass(g, tr.u);
    j["sup_u"] = sup_norm(tr.u);
    j["sup_v"] = sup_norm(tr.v);
    j["F0"] = e.total;
    j["F0_terms"] = {{"storage", e.storage},
                     {"cross", e.cross},
                     {"rate", e.rate},
                     {"elliptic", e.elliptic}};
    j["dissipation0"] = d.total;
    return j;
}

std::string write_initdata_files(const run_config& cfg) {
    radial_grid g = grid_from(cfg);
    kinetics kin(kinetics_from(cfg));
    init_triple tr = make_initial(g, cfg.init);
    std::string dir = cfg.out_dir + "/" + cfg.run_id() + "-init";
    std::filesystem::create_directories(dir);
    auto dump_field = [&](const std::string& name, const field& x) {
        std::string csv = "r,value\n";
        for (int i = 0; i < g.N; ++i)
            csv += fmt17(g.rc[i]) + "," + fmt17(x[i]) + "\n";
        write_text(dir + "/" + name, csv);
    };
    dump_field("u0.csv", tr.u);
    dump_field("v0.csv", tr.v);
    dump_field("w0.csv", tr.w);

    nlohmann::json j;
    j["run_id"] = cfg.run_id();
    j["family"] = cfg.init.family;
    j["n"] = cfg.n;
    j["R"] = cfg.R;
    j["cells"] = cfg.cells;
    j["m"] = cfg.init.m;
    j["eps_mass"] = cfg.init.eps_mass;
    j["eta"] = cfg.init.eta;
    j["rho"] = cfg.init.rho;
    j["gamma"] = cfg.init.gamma;
    j["kappa"] = cfg.init.kappa;
    j["n_psi"] = cfg.init.n_psi;
    j["theta_log"] = cfg.init.theta_log;
    j["mass"] = total_mass(g, tr.u);
    j["F0"] = energy(g, kin, tr.u, tr.v, tr.w);
    write_text(dir + "/manifest.json", j.dump(2) + "\n");
    return dir;
}

nlohmann::json stationary_json(const run_config& cfg, stationary_result* out) {
    radial_grid g = grid_from(cfg);
    kinetics kin(kinetics_from(cfg));
    stationary_params sp = cfg.stat;
    sp.m = cfg.init.m;
    auto sol = solve_stationary(g, kin, sp);
    nlohmann::json j;
    j["run_id"] = cfg.run_id();
    j["m"] = sol.m;
    j["L"] = sol.L;
    j["F"] = sol.energy_reduced;
    j["residuals"] = {{"flux", sol.res_flux}, {"w", sol.res_w}, {"v", sol.res_v}};
    j["iterations"] = sol.iterations;
    j["converged"] = sol.converged;
    j["sup_u"] = sup_norm(sol.u);
    j["min_u"] = min_value(sol.u);
    if (out) *out = std::move(sol);
    return j;
}

namespace {

nlohmann::json check_json(const std::string& name, int n, int N, const identity_result& r) {
    nlohmann::json j;
    j["check"] = name;
    j["n"] = n;
    j["N"] = N;
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
    j["rel_residual"] = r.rel_residual;
    j["pass"] = r.pass;
    return j;
}

} // namespace

std::vector<nlohmann::json> verify_checks(const std::string& which) {
    std::vector<nlohmann::json> out;
    bool all = which == "all" || which.empty();

    if (all || which == "hardy") {
        const int N = 4096;
        radial_grid g = make_grid(4, 1.0, N);
        field u(g.N);
        for (int i = 0; i < g.N; ++i) {
            double d = 1.0 - g.rc[i] * g.rc[i];
            u[i] = d * d;
        }
        out.push_back(check_json("hardy", 4, N, hardy_rellich_check(g, u)));
    }
    if (all || which == "pohozaev") {
        const int N = 2048;
        radial_grid g = make_grid(5, 1.0, N);
        field v(g.N);
        for (int i = 0; i < g.N; ++i) {
            double d = 1.0 - g.rc[i] * g.rc[i];
            v[i] = d * d;
        }
        out.push_back(check_json("pohozaev", 5, N, pohozaev_check(g, v)));
    }
    if (all || which == "weighted") {
        const int N = 1024;
        radial_grid g = make_grid(4, 2.0, N);
        kinetics_params kp;
        kp.alpha = 0.5;
        kp.beta = 0.5;
        kinetics kin(kp);
        field u(g.N, 3.0), v(g.N, 3.0);
        auto wr = weighted_inequality_check(g, kin, u, v, 0.5);
        out.push_back(check_json("weighted", 4, N, wr.check));
    }
    if (all || which == "conditions") {
        kinetics_params kp;
        kp.alpha = 0.6;
        kp.beta = 0.6;
        kinetics kin(kp);
        growth_condition_params cp;
        cp.n = 5;
        cp.gamma = 1.0;
        cp.eps = 0.1;
        auto rep = check_growth_conditions(kin, cp);
        identity_result r;
        r.lhs = rep.exponent_sum;
        r.rhs = 4.0 / cp.n;
        r.rel_residual = rep.exponent_sum - 4.0 / cp.n;
        r.pass = rep.satisfiable && rep.sampled_ok;
        out.push_back(check_json("conditions", cp.n, cp.samples, r));
    }
    if (out.empty())
        throw std::invalid_argument("verify: unknown check '" + which + "'");
    return out;
}

} // namespace chemlab
