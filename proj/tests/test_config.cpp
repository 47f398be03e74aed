#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "chemlab/config.hpp"
#include "chemlab/numerics.hpp"

#include <string>

using namespace chemlab;

namespace {

const std::string minimal = "[model]\n"
                            "n = 3\n"
                            "r = 1.0\n"
                            "alpha = 0.5\n"
                            "beta = 0.5\n"
                            "[init]\n"
                            "m = 2.0\n";

std::string err_of(const std::string& text, sweep_axes* axes = nullptr) {
    try {
        parse_config_text(text, axes);
    } catch (const config_error& e) {
        return e.what();
    }
    return "";
}

bool mentions(const std::string& text, const std::string& needle,
              sweep_axes* axes = nullptr) {
    return err_of(text, axes).find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("minimal text resolves every documented default") {
    auto cfg = parse_config_text(minimal);
    CHECK(cfg.n == 3);
    CHECK(cfg.R == 1.0);
    CHECK(cfg.mode == "prototype");
    CHECK(cfg.alpha == 0.5);
    CHECK(cfg.beta == 0.5);
    CHECK(cfg.k_d == 1.0);
    CHECK(cfg.k_s == 1.0);
    CHECK(cfg.s0 == 2.0);
    CHECK(cfg.cells == 512);
    CHECK(cfg.controls.t_end == 5.0);
    CHECK(cfg.controls.dt_init == 1e-4);
    CHECK(cfg.controls.dt_min == 1e-12);
    CHECK(cfg.controls.dt_max == 1e-2);
    CHECK(cfg.controls.cfl == 0.4);
    CHECK(cfg.controls.stride == 10);
    CHECK(cfg.controls.u_max == 1e8);
    CHECK(cfg.controls.nonneg_tol == 1e-13);
    CHECK(cfg.controls.growth_cap == 0.2);
    CHECK(cfg.init.family == "gaussian");
    CHECK(cfg.init.m == 2.0);
    CHECK(cfg.init.eps_mass == 1.0);  // m / 2
    CHECK(cfg.init.eta == 0.25);      // R / 4
    CHECK(cfg.stat.m == 2.0);
    CHECK(cfg.stat.tol == 1e-8);
    CHECK(cfg.stat.max_iter == 20000);
    CHECK(cfg.stat.lambda0 == 0.5);
    CHECK(cfg.stat.guess_amp == 0.2);
    CHECK(cfg.stat.guess_width == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    CHECK(cfg.out_dir == "runs");
    CHECK_FALSE(cfg.emit_svg);
}

TEST_CASE("sections and keys are case insensitive, comments are stripped") {
    std::string text = "; leading comment\n"
                       "[MODEL]\n"
                       "N = 3          # trailing comment\n"
                       "R = 2.5\n"
                       "Alpha = 0.25\n"
                       "BETA = 0.75\n"
                       "\n"
                       "[Init]\n"
                       "M = 1.5\n";
    auto cfg = parse_config_text(text);
    CHECK(cfg.n == 3);
    CHECK(cfg.R == 2.5);
    CHECK(cfg.alpha == 0.25);
    CHECK(cfg.beta == 0.75);
    CHECK(cfg.init.m == 1.5);
}

TEST_CASE("missing required keys are reported by name") {
    CHECK(mentions("[model]\nr=1\nalpha=0\nbeta=1\n[init]\nm=1\n", "model.n"));
    CHECK(mentions("[model]\nn=3\nalpha=0\nbeta=1\n[init]\nm=1\n", "model.r"));
    CHECK(mentions("[model]\nn=3\nr=1\nbeta=1\n[init]\nm=1\n", "model.alpha"));
    CHECK(mentions("[model]\nn=3\nr=1\nalpha=0\n[init]\nm=1\n", "model.beta"));
    CHECK(mentions("[model]\nn=3\nr=1\nalpha=0\nbeta=1\n", "init.m"));
}

TEST_CASE("unknown and duplicate keys are rejected") {
    CHECK(mentions(minimal + "[model]\n", "duplicate") == false); // empty re-open is fine
    CHECK(mentions(minimal + "zeta = 1\n", "init.zeta"));
    CHECK(mentions(minimal + "zeta = 1\n", "unknown"));
    CHECK(mentions("[model]\nn=3\nn=4\nr=1\nalpha=0\nbeta=1\n[init]\nm=1\n", "duplicate"));
}

TEST_CASE("malformed lines carry their line number") {
    CHECK(mentions("[model\nn=3\n", "line 1"));
    CHECK(mentions("[model]\nn=3\nnonsense\n", "line 3"));
    CHECK(mentions("n = 3\n", "line 1"));
    CHECK(mentions("[model]\nn = three\nr=1\nalpha=0\nbeta=1\n[init]\nm=1\n",
                   "not an integer"));
    CHECK(mentions(minimal + "[output]\nemit_svg = maybe\n", "not a boolean"));
}

TEST_CASE("only the prototype kinetics mode is configurable") {
    auto cfg = parse_config_text(minimal + "[model2]\n"); // define then drop
    (void)cfg;
    auto ok = parse_config_text("[model]\nn=3\nr=1\nmode=prototype\n"
                                "alpha=0.5\nbeta=0.5\n[init]\nm=1\n");
    CHECK(ok.mode == "prototype");
    CHECK(mentions("[model]\nn=3\nr=1\nmode=tabulated\n"
                   "alpha=0.5\nbeta=0.5\n[init]\nm=1\n",
                   "prototype"));
}

TEST_CASE("range rules name the offending key") {
    CHECK(mentions("[model]\nn=0\nr=1\nalpha=0\nbeta=1\n[init]\nm=1\n", "model.n"));
    CHECK(mentions("[model]\nn=3\nr=-1\nalpha=0\nbeta=1\n[init]\nm=1\n", "model.r"));
    CHECK(mentions(minimal + "[model]\ns0 = 1.0\n", "model.s0"));
    CHECK(mentions(minimal + "[grid]\ncells = 4\n", "grid.cells"));
    CHECK(mentions(minimal + "[time]\ncfl = 1.5\n", "time.cfl"));
    CHECK(mentions(minimal + "[time]\ndt_init = 1e-3\ndt_max = 1e-4\n", "time.dt_max"));
    CHECK(mentions(minimal + "[time]\ndt_init = 1e-13\n", "time.dt_init"));
    CHECK(mentions(minimal + "[limits]\ngrowth_cap = 0\n", "limits.growth_cap"));
    CHECK(mentions(minimal + "[stationary]\nlambda = 1.5\n", "stationary.lambda"));
    CHECK(mentions(minimal + "[output]\ndir =\n", "output.dir"));
}

TEST_CASE("family specific constraints") {
    CHECK(mentions(minimal + "family = gauss\n", "init.family"));

    std::string hd = "[model]\nn=5\nr=1\nalpha=0.5\nbeta=0.5\n"
                     "[init]\nm=1\nfamily=highdim\n";
    auto cfg = parse_config_text(hd + "gamma=0.9\n");
    CHECK(cfg.init.rho == doctest::Approx(0.75)); // midpoint of (0.5, 1)
    CHECK(mentions(hd + "gamma=0.7\n", "init.gamma"));
    CHECK(mentions(hd + "gamma=0.9\nrho=1.2\n", "init.rho"));
    CHECK(mentions("[model]\nn=4\nr=1\nalpha=0.5\nbeta=0.5\n"
                   "[init]\nm=1\nfamily=highdim\n",
                   "dimension > 4"));

    std::string c4 = "[model]\nn=4\nr=1\nalpha=0.5\nbeta=0.5\n"
                     "[init]\nm=1\nfamily=critical4\n";
    auto ok = parse_config_text(c4);
    CHECK(ok.init.kappa == 0.25);
    CHECK(mentions(c4 + "kappa=0.6\n", "init.kappa"));
    CHECK(mentions(c4 + "theta_log=1.2\n", "init.theta_log"));
    CHECK(mentions(c4 + "n_psi=1\n", "init.n_psi"));
    CHECK(mentions(c4 + "eta=0.7\n", "init.eta"));
    CHECK(mentions("[model]\nn=5\nr=1\nalpha=0.5\nbeta=0.5\n"
                   "[init]\nm=1\nfamily=critical4\n",
                   "dimension 4"));
}

TEST_CASE("run ids are deterministic and sensitive") {
    auto a = parse_config_text(minimal);
    auto b = parse_config_text(minimal);
    CHECK(a.run_id() == b.run_id());
    CHECK(a.run_id().size() == 16);
    for (char ch : a.run_id()) CHECK(std::string("0123456789abcdef").find(ch) != std::string::npos);
    CHECK(a.run_id() == hex16(fnv1a64(a.canonical())));

    auto c = parse_config_text("[model]\nn = 3\nr = 1.0\nalpha = 0.5\n"
                               "beta = 0.5\n[init]\nm = 2.00\n"); // same values, new text
    CHECK(c.run_id() == a.run_id());

    auto d = parse_config_text(minimal + "[model]\nk_d = 1.25\n");
    CHECK(d.run_id() != a.run_id());
}

TEST_CASE("canonical serialization is stable and complete") {
    auto cfg = parse_config_text(minimal);
    auto text = cfg.canonical();
    CHECK(text.find("model.alpha=0.5\n") != std::string::npos);
    CHECK(text.find("grid.cells=512\n") != std::string::npos);
    CHECK(text.find("init.family=gaussian\n") != std::string::npos);
    CHECK(text.find("output.emit_svg=false\n") != std::string::npos);
    CHECK(text == parse_config_text(minimal).canonical());
}

TEST_CASE("sweep axes") {
    std::string text = minimal + "[sweep]\n"
                                 "alpha = 0.1, 0.2\n"
                                 "beta = 0.5\n"
                                 "eta = 0.01,0.02, 0.03\n"
                                 "workers = 4\n";
    sweep_axes axes;
    auto cfg = parse_config_text(text, &axes);
    CHECK(cfg.n == 3);
    REQUIRE(axes.alpha.size() == 2);
    CHECK(axes.alpha[1] == 0.2);
    REQUIRE(axes.beta.size() == 1);
    REQUIRE(axes.eta.size() == 3);
    CHECK(axes.eta[2] == 0.03);
    CHECK(axes.workers == 4);
    CHECK(axes.any());

    // without an axes sink a sweep section is an unknown key
    CHECK(mentions(text, "sweep.alpha"));

    sweep_axes bad;
    CHECK(mentions(minimal + "[sweep]\neta = 2.0\n", "sweep.eta", &bad));
    CHECK(mentions(minimal + "[sweep]\nalpha = 0.1,,0.2\n", "empty list entry", &bad));
    CHECK(mentions(minimal + "[sweep]\nworkers = -1\n", "sweep.workers", &bad));
}

TEST_CASE("derived parameter bundles") {
    auto cfg = parse_config_text(minimal + "[model]\nk_d = 2.0\nk_s = 0.5\ns0 = 3.0\n"
                                 + "[grid]\ncells = 64\n");
    auto kp = kinetics_from(cfg);
    CHECK(kp.alpha == 0.5);
    CHECK(kp.beta == 0.5);
    CHECK(kp.K_D == 2.0);
    CHECK(kp.k_S == 0.5);
    CHECK(kp.s0 == 3.0);
    auto g = grid_from(cfg);
    CHECK(g.n == 3);
    CHECK(g.R == 1.0);
    CHECK(g.N == 64);
}

TEST_CASE("loading a missing file") {
    CHECK_THROWS_AS(load_config("/nonexistent/path/cfg.ini"), config_error);
}
