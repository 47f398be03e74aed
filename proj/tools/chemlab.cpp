// Command line front end: simulate / sweep / energy / initdata / stationary /
// verify.  Prints JSON summaries on stdout; exit code 0 on success, 2 for
// configuration or usage problems, 3 for runtime failures.

#include "chemlab/runner.hpp"
#include "chemlab/sweep.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <exception>
#include <iostream>
#include <string>

namespace {

int cmd_simulate(const std::string& path) {
    auto cfg = chemlab::load_config(path);
    chemlab::run_result res;
    std::string dir = chemlab::simulate_to_files(cfg, &res);
    auto js = chemlab::summary_json(cfg, res);
    js["dir"] = dir;
    std::cout << js.dump(2) << "\n";
    return 0;
}

int cmd_sweep(const std::string& path) {
    auto spec = chemlab::load_sweep(path);
    int failures = chemlab::run_sweep(spec);
    nlohmann::json js;
    js["out_dir"] = spec.base.out_dir;
    js["failures"] = failures;
    std::cout << js.dump(2) << "\n";
    return failures == 0 ? 0 : 1;
}

int cmd_energy(const std::string& path) {
    auto cfg = chemlab::load_config(path);
    std::cout << chemlab::energy_json(cfg).dump(2) << "\n";
    return 0;
}

int cmd_initdata(const std::string& path) {
    auto cfg = chemlab::load_config(path);
    std::string dir = chemlab::write_initdata_files(cfg);
    nlohmann::json js;
    js["dir"] = dir;
    std::cout << js.dump(2) << "\n";
    return 0;
}

int cmd_stationary(const std::string& path) {
    auto cfg = chemlab::load_config(path);
    chemlab::stationary_result st;
    auto js = chemlab::stationary_json(cfg, &st);
    std::cout << js.dump(2) << "\n";
    return st.converged ? 0 : 1;
}

int cmd_verify(const std::string& which) {
    auto checks = chemlab::verify_checks(which);
    nlohmann::json js = nlohmann::json::array();
    bool all_pass = true;
    for (const auto& c : checks) {
        all_pass = all_pass && c.at("pass").get<bool>();
        js.push_back(c);
    }
    std::cout << js.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial chemotaxis laboratory"};
    app.require_subcommand(1);

    std::string sim_path, sweep_path, energy_path, init_path, stat_path;
    std::string check = "all";

    auto* sim = app.add_subcommand("simulate", "run a configured simulation");
    sim->add_option("config", sim_path, "configuration file")->required();

    auto* swp = app.add_subcommand("sweep", "run a parameter sweep");
    swp->add_option("spec", sweep_path, "sweep specification file")->required();

    auto* en = app.add_subcommand("energy", "report the initial-data energy");
    en->add_option("config", energy_path, "configuration file")->required();

    auto* ini = app.add_subcommand("initdata", "write initial profiles to csv");
    ini->add_option("config", init_path, "configuration file")->required();

    auto* st = app.add_subcommand("stationary", "solve the stationary problem");
    st->add_option("config", stat_path, "configuration file")->required();

    auto* ver = app.add_subcommand("verify", "run built-in consistency checks");
    ver->add_option("--check", check, "hardy, pohozaev, weighted, conditions or all")
        ->check(CLI::IsMember({"all", "hardy", "pohozaev", "weighted", "conditions"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed()) return cmd_simulate(sim_path);
        if (swp->parsed()) return cmd_sweep(sweep_path);
        if (en->parsed()) return cmd_energy(energy_path);
        if (ini->parsed()) return cmd_initdata(init_path);
        if (st->parsed()) return cmd_stationary(stat_path);
        if (ver->parsed()) return cmd_verify(check);
    } catch (const chemlab::config_error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
