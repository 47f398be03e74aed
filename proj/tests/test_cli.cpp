#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chemlab/plots.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef _WIN32
#include <sys/wait.h>
#endif

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& tag) {
    fs::path d = fs::temp_directory_path() / ("chemlab_cli_" + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

void put(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args, std::string* output = nullptr) {
    static int counter = 0;
    fs::path cap = fs::temp_directory_path() / ("chemlab_cli_cap_" + std::to_string(counter++));
    std::string cmd = std::string(CHEMLAB_BIN) + " " + args + " > " + cap.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    if (output) *output = slurp(cap);
    fs::remove(cap);
#ifdef _WIN32
    return rc;
#else
    if (!WIFEXITED(rc)) return -1;
    return WEXITSTATUS(rc);
#endif
}

std::string tiny_config(const fs::path& out_dir, const std::string& extra = "") {
    return "[model]\nn = 2\nr = 1.0\nalpha = 0.0\nbeta = 1.0\n"
           "[grid]\ncells = 32\n"
           "[time]\nt_end = 0.01\ndt_init = 1e-4\ndt_max = 1e-3\nstride = 5\n"
           "[init]\nm = 1.0\neta = 0.25\n"
           "[output]\ndir = " +
           out_dir.string() + "\n" + extra;
}

} // namespace

TEST_CASE("usage errors exit with code two") {
    CHECK(run_cli("--help") == 0);
    CHECK(run_cli("") == 2);
    CHECK(run_cli("frobnicate") == 2);
    CHECK(run_cli("simulate") == 2);
    CHECK(run_cli("verify --check bogus") == 2);
}

TEST_CASE("simulate writes artifacts and reports a summary") {
    auto dir = fresh_dir("sim");
    put(dir / "run.ini", tiny_config(dir / "out"));
    std::string out;
    REQUIRE(run_cli("simulate " + (dir / "run.ini").string(), &out) == 0);
    auto js = json::parse(out);
    CHECK(js["outcome"] == "completed");
    CHECK(js["run_id"].get<std::string>().size() == 16);
    CHECK(js["cells"] == 32);
    CHECK(js["mass_final"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

    fs::path run_dir = js["dir"].get<std::string>();
    CHECK(fs::exists(run_dir / "timeseries.csv"));
    CHECK(fs::exists(run_dir / "summary.json"));
    CHECK(fs::exists(run_dir / "F_vs_t.csv"));
    CHECK(fs::exists(run_dir / "supu_vs_t.csv"));
    CHECK_FALSE(fs::exists(run_dir / "F_vs_t.svg"));
    auto saved = json::parse(slurp(run_dir / "summary.json"));
    CHECK(saved["run_id"] == js["run_id"]);
    CHECK(slurp(run_dir / "timeseries.csv").rfind("step,t,dt,mass,sup_u", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("simulate can emit charts") {
    auto dir = fresh_dir("svg");
    put(dir / "run.ini", tiny_config(dir / "out", "emit_svg = true\n"));
    std::string out;
    REQUIRE(run_cli("simulate " + (dir / "run.ini").string(), &out) == 0);
    fs::path run_dir = json::parse(out)["dir"].get<std::string>();
    REQUIRE(fs::exists(run_dir / "F_vs_t.svg"));
    std::string why;
    CHECK(chemlab::xml_well_formed(slurp(run_dir / "F_vs_t.svg"), &why));
    CHECK(chemlab::xml_well_formed(slurp(run_dir / "supu_vs_t.svg"), &why));
    fs::remove_all(dir);
}

TEST_CASE("configuration problems exit with code two") {
    auto dir = fresh_dir("badcfg");
    std::string out;
    CHECK(run_cli("simulate " + (dir / "missing.ini").string(), &out) == 2);
    CHECK(out.find("config error") != std::string::npos);

    put(dir / "bad.ini", "[model]\nn = 3\nr = 1\nalpha = 0.5\nbeta = 0.5\n"
                         "zeta = 1\n[init]\nm = 1\n");
    CHECK(run_cli("simulate " + (dir / "bad.ini").string(), &out) == 2);
    CHECK(out.find("model.zeta") != std::string::npos);

    CHECK(run_cli("energy " + (dir / "bad.ini").string()) == 2);
    CHECK(run_cli("stationary " + (dir / "bad.ini").string()) == 2);
    CHECK(run_cli("sweep " + (dir / "missing.ini").string()) == 2);
    fs::remove_all(dir);
}

TEST_CASE("energy and initdata commands") {
    auto dir = fresh_dir("en");
    put(dir / "run.ini", tiny_config(dir / "out"));
    std::string out;
    REQUIRE(run_cli("energy " + (dir / "run.ini").string(), &out) == 0);
    auto js = json::parse(out);
    CHECK(js["mass"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(js.contains("F0"));
    CHECK(js["F0_terms"].contains("storage"));
    CHECK(js.contains("dissipation0"));

    REQUIRE(run_cli("initdata " + (dir / "run.ini").string(), &out) == 0);
    fs::path init_dir = json::parse(out)["dir"].get<std::string>();
    for (const char* f : {"u0.csv", "v0.csv", "w0.csv", "manifest.json"})
        CHECK(fs::exists(init_dir / f));
    auto manifest = json::parse(slurp(init_dir / "manifest.json"));
    CHECK(manifest["mass"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(slurp(init_dir / "u0.csv").rfind("r,value", 0) == 0);
    fs::remove_all(dir);
}

TEST_CASE("stationary command solves the constant state") {
    auto dir = fresh_dir("st");
    put(dir / "run.ini", "[model]\nn = 3\nr = 1.0\nalpha = 0.5\nbeta = 0.5\n"
                         "[grid]\ncells = 32\n[init]\nm = 1.0\n"
                         "[stationary]\ntol = 1e-10\n"
                         "[output]\ndir = " +
                             (dir / "out").string() + "\n");
    std::string out;
    REQUIRE(run_cli("stationary " + (dir / "run.ini").string(), &out) == 0);
    auto js = json::parse(out);
    CHECK(js["converged"] == true);
    double c = 1.0 / (4.0 * 3.14159265358979323846 / 3.0);
    CHECK(js["sup_u"].get<double>() == doctest::Approx(c).epsilon(1e-10));
    CHECK(js["residuals"]["flux"].get<double>() < 1e-12);
    fs::remove_all(dir);
}

TEST_CASE("verify command emits one record per check") {
    std::string out;
    REQUIRE(run_cli("verify --check conditions", &out) == 0);
    auto js = json::parse(out);
    REQUIRE(js.is_array());
    REQUIRE(js.size() == 1);
    CHECK(js[0]["check"] == "conditions");
    CHECK(js[0]["pass"] == true);

    REQUIRE(run_cli("verify --check pohozaev", &out) == 0);
    js = json::parse(out);
    CHECK(js[0]["check"] == "pohozaev");
    CHECK(js[0]["pass"] == true);
    CHECK(js[0]["rel_residual"].get<double>() < 1e-6);
}

TEST_CASE("sweep runs the axis product and resumes") {
    auto dir = fresh_dir("sw");
    put(dir / "sweep.ini", tiny_config(dir / "out", "[sweep]\nalpha = 0.0, 0.5\n"
                                                    "workers = 2\n"));
    std::string out;
    REQUIRE(run_cli("sweep " + (dir / "sweep.ini").string(), &out) == 0);
    auto js = json::parse(out);
    CHECK(js["failures"] == 0);

    auto count_lines = [&] {
        std::istringstream in(slurp(dir / "out" / "sweep.csv"));
        int k = 0;
        std::string line;
        while (std::getline(in, line))
            if (!line.empty()) ++k;
        return k;
    };
    CHECK(count_lines() == 3); // header plus one row per combination

    REQUIRE(run_cli("sweep " + (dir / "sweep.ini").string(), &out) == 0);
    CHECK(count_lines() == 3); // completed runs are not repeated
    fs::remove_all(dir);
}
