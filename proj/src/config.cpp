#include "chemlab/config.hpp"

#include "chemlab/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace chemlab {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

using kv_map = std::map<std::string, std::string>; // "section.key" -> value

kv_map tokenize(const std::string& text) {
    kv_map out;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t cut = line.find_first_of("#;");
        if (cut != std::string::npos) line.erase(cut);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("config error: line " + std::to_string(lineno) +
                                   ": unterminated section header");
            section = lower(trim(line.substr(1, line.size() - 2)));
            if (section.empty())
                throw config_error("config error: line " + std::to_string(lineno) +
                                   ": empty section name");
            continue;
        }
        std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config error: line " + std::to_string(lineno) +
                               ": expected key = value");
        std::string key = lower(trim(line.substr(0, eq)));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || section.empty())
            throw config_error("config error: line " + std::to_string(lineno) +
                               ": key outside a section or empty key");
        std::string path = section + "." + key;
        if (out.count(path))
            throw config_error("config error: " + path + ": duplicate key");
        out[path] = val;
    }
    return out;
}

struct consumer {
    kv_map kv;
    bool has(const std::string& path) const { return kv.count(path) != 0; }
    bool take(const std::string& path, std::string* out) {
        auto it = kv.find(path);
        if (it == kv.end()) return false;
        *out = it->second;
        kv.erase(it);
        return true;
    }
    double take_double(const std::string& path, double dflt) {
        std::string s;
        if (!take(path, &s)) return dflt;
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw config_error("config error: " + path + ": not a number: '" + s + "'");
        }
    }
    long take_long(const std::string& path, long dflt) {
        std::string s;
        if (!take(path, &s)) return dflt;
        try {
            std::size_t pos = 0;
            long v = std::stol(s, &pos);
            if (pos != s.size()) throw std::invalid_argument("");
            return v;
        } catch (...) {
            throw config_error("config error: " + path + ": not an integer: '" + s + "'");
        }
    }
    bool take_bool(const std::string& path, bool dflt) {
        std::string s;
        if (!take(path, &s)) return dflt;
        std::string t = lower(s);
        if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
        if (t == "false" || t == "0" || t == "no" || t == "off") return false;
        throw config_error("config error: " + path + ": not a boolean: '" + s + "'");
    }
    std::vector<double> take_list(const std::string& path) {
        std::string s;
        if (!take(path, &s)) return {};
        std::vector<double> out;
        std::istringstream in(s);
        std::string item;
        while (std::getline(in, item, ',')) {
            item = trim(item);
            if (item.empty())
                throw config_error("config error: " + path + ": empty list entry");
            try {
                std::size_t pos = 0;
                out.push_back(std::stod(item, &pos));
                if (pos != item.size()) throw std::invalid_argument("");
            } catch (...) {
                throw config_error("config error: " + path + ": not a number: '" + item + "'");
            }
        }
        if (out.empty()) throw config_error("config error: " + path + ": empty list");
        return out;
    }
};

[[noreturn]] void fail(const std::string& path, const std::string& why) {
    throw config_error("config error: " + path + ": " + why);
}

void require(bool ok, const std::string& path, const std::string& why) {
    if (!ok) fail(path, why);
}

} // namespace

run_config parse_config_text(const std::string& text, sweep_axes* axes) {
    consumer c{tokenize(text)};
    run_config cfg;

    require(c.has("model.n"), "model.n", "required key is missing");
    require(c.has("model.r"), "model.r", "required key is missing");
    require(c.has("model.alpha"), "model.alpha", "required key is missing");
    require(c.has("model.beta"), "model.beta", "required key is missing");
    require(c.has("init.m"), "init.m", "required key is missing");

    cfg.n = static_cast<int>(c.take_long("model.n", 0));
    cfg.R = c.take_double("model.r", 0.0);
    std::string mode;
    if (c.take("model.mode", &mode)) {
        if (lower(mode) != "prototype")
            fail("model.mode", "only 'prototype' kinetics can be configured from text");
        cfg.mode = "prototype";
    }
    cfg.alpha = c.take_double("model.alpha", 0.0);
    cfg.beta = c.take_double("model.beta", 0.0);
    cfg.k_d = c.take_double("model.k_d", 1.0);
    cfg.k_s = c.take_double("model.k_s", 1.0);
    cfg.s0 = c.take_double("model.s0", 2.0);

    cfg.cells = static_cast<int>(c.take_long("grid.cells", 512));

    cfg.controls.t_end = c.take_double("time.t_end", 5.0);
    cfg.controls.dt_init = c.take_double("time.dt_init", 1e-4);
    cfg.controls.dt_min = c.take_double("time.dt_min", 1e-12);
    cfg.controls.dt_max = c.take_double("time.dt_max", 1e-2);
    cfg.controls.cfl = c.take_double("time.cfl", 0.4);
    cfg.controls.stride = c.take_long("time.stride", 10);

    cfg.controls.u_max = c.take_double("limits.u_max", 1e8);
    cfg.controls.nonneg_tol = c.take_double("limits.nonneg_tol", 1e-13);
    cfg.controls.growth_cap = c.take_double("limits.growth_cap", 0.2);

    std::string family;
    if (c.take("init.family", &family)) cfg.init.family = lower(family);
    cfg.init.m = c.take_double("init.m", 1.0);
    cfg.init.eps_mass = c.take_double("init.eps_mass", -1.0);
    cfg.init.eta = c.take_double("init.eta", -1.0);
    cfg.init.rho = c.take_double("init.rho", -1.0);
    cfg.init.gamma = c.take_double("init.gamma", 1.0);
    cfg.init.kappa = c.take_double("init.kappa", 0.25);
    cfg.init.n_psi = static_cast<int>(c.take_long("init.n_psi", 3));
    cfg.init.theta_log = c.take_double("init.theta_log", 0.5);

    cfg.stat.m = cfg.init.m;
    cfg.stat.tol = c.take_double("stationary.tol", 1e-8);
    cfg.stat.max_iter = static_cast<int>(c.take_long("stationary.max_iter", 20000));
    cfg.stat.lambda0 = c.take_double("stationary.lambda", 0.5);
    cfg.stat.guess_amp = c.take_double("stationary.guess_amp", 0.2);
    cfg.stat.guess_width = c.take_double("stationary.guess_width", -1.0);

    std::string dir;
    if (c.take("output.dir", &dir)) {
        if (dir.empty()) fail("output.dir", "must not be empty");
        cfg.out_dir = dir;
    }
    cfg.emit_svg = c.take_bool("output.emit_svg", false);

    if (axes) {
        axes->alpha = c.take_list("sweep.alpha");
        axes->beta = c.take_list("sweep.beta");
        axes->eta = c.take_list("sweep.eta");
        axes->workers = static_cast<int>(c.take_long("sweep.workers", 0));
        require(axes->workers >= 0, "sweep.workers", "must be nonnegative");
    }

    if (!c.kv.empty()) fail(c.kv.begin()->first, "unknown key");

    // consistency
    require(cfg.n >= 1 && cfg.n <= 16, "model.n", "dimension must lie in [1, 16]");
    require(cfg.R > 0.0, "model.r", "radius must be positive");
    require(cfg.alpha >= 0.0, "model.alpha", "must be nonnegative");
    require(cfg.beta >= 0.0, "model.beta", "must be nonnegative");
    require(cfg.k_d > 0.0, "model.k_d", "must be positive");
    require(cfg.k_s > 0.0, "model.k_s", "must be positive");
    require(cfg.s0 > 1.0, "model.s0", "must exceed 1");
    require(cfg.cells >= 8 && cfg.cells <= (1 << 22), "grid.cells",
            "must lie in [8, 4194304]");
    require(cfg.controls.t_end > 0.0, "time.t_end", "must be positive");
    require(cfg.controls.dt_min > 0.0, "time.dt_min", "must be positive");
    require(cfg.controls.dt_init >= cfg.controls.dt_min, "time.dt_init",
            "must be at least dt_min");
    require(cfg.controls.dt_max >= cfg.controls.dt_init, "time.dt_max",
            "must be at least dt_init");
    require(cfg.controls.cfl > 0.0 && cfg.controls.cfl < 1.0, "time.cfl",
            "must lie in (0, 1)");
    require(cfg.controls.stride >= 1, "time.stride", "must be at least 1");
    require(cfg.controls.u_max > 0.0, "limits.u_max", "must be positive");
    require(cfg.controls.nonneg_tol >= 0.0, "limits.nonneg_tol", "must be nonnegative");
    require(cfg.controls.growth_cap > 0.0, "limits.growth_cap", "must be positive");
    require(cfg.init.m > 0.0, "init.m", "mass must be positive");

    const std::string fam = cfg.init.family;
    require(fam == "constant" || fam == "gaussian" || fam == "highdim" || fam == "critical4",
            "init.family", "unknown family '" + fam + "'");
    if (cfg.init.eps_mass < 0.0) cfg.init.eps_mass = 0.5 * cfg.init.m;
    require(cfg.init.eps_mass > 0.0 && cfg.init.eps_mass < cfg.init.m, "init.eps_mass",
            "must lie in (0, m)");
    if (cfg.init.eta < 0.0) cfg.init.eta = 0.25 * cfg.R;
    require(cfg.init.eta > 0.0 && cfg.init.eta < cfg.R, "init.eta", "must lie in (0, R)");
    if (fam == "highdim") {
        require(cfg.n > 4, "model.n", "family highdim needs dimension > 4");
        require(cfg.init.gamma > 4.0 / cfg.n && cfg.init.gamma <= 1.0, "init.gamma",
                "must lie in (4/n, 1]");
        double lo = std::max(0.0, cfg.n - cfg.n * cfg.init.gamma);
        double hi = cfg.n - 4.0;
        if (cfg.init.rho < 0.0) cfg.init.rho = 0.5 * (lo + hi);
        require(cfg.init.rho > lo && cfg.init.rho < hi, "init.rho",
                "must lie in (max(0, n - n*gamma), n - 4)");
    }
    if (fam == "critical4") {
        require(cfg.n == 4, "model.n", "family critical4 needs dimension 4");
        require(cfg.init.eta < 0.5 * cfg.R, "init.eta",
                "family critical4 needs eta in (0, R/2)");
        require(cfg.init.theta_log > 0.0 && cfg.init.theta_log < 1.0, "init.theta_log",
                "must lie in (0, 1)");
        require(cfg.init.kappa > 0.0 && cfg.init.kappa < 1.0 - cfg.init.theta_log,
                "init.kappa", "must lie in (0, 1 - theta_log)");
        require(cfg.init.n_psi >= 2, "init.n_psi", "must be at least 2");
    }
    require(cfg.stat.tol > 0.0, "stationary.tol", "must be positive");
    require(cfg.stat.max_iter >= 1, "stationary.max_iter", "must be at least 1");
    require(cfg.stat.lambda0 > 0.0 && cfg.stat.lambda0 <= 1.0, "stationary.lambda",
            "must lie in (0, 1]");
    require(cfg.stat.guess_amp >= 0.0, "stationary.guess_amp", "must be nonnegative");
    if (cfg.stat.guess_width < 0.0) cfg.stat.guess_width = cfg.R / 6.0;
    require(cfg.stat.guess_width > 0.0, "stationary.guess_width", "must be positive");

    if (axes && axes->any()) {
        for (double a : axes->alpha)
            require(a >= 0.0, "sweep.alpha", "entries must be nonnegative");
        for (double b : axes->beta)
            require(b >= 0.0, "sweep.beta", "entries must be nonnegative");
        for (double e : axes->eta)
            require(e > 0.0 && e < cfg.R, "sweep.eta", "entries must lie in (0, R)");
    }
    return cfg;
}

run_config load_config(const std::string& path, sweep_axes* axes) {
    std::ifstream in(path);
    if (!in) throw config_error("config error: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), axes);
}

std::string run_config::canonical() const {
    std::ostringstream s;
    s << "model.n=" << n << '\n';
    s << "model.r=" << fmt17(R) << '\n';
    s << "model.mode=" << mode << '\n';
    s << "model.alpha=" << fmt17(alpha) << '\n';
    s << "model.beta=" << fmt17(beta) << '\n';
    s << "model.k_d=" << fmt17(k_d) << '\n';
    s << "model.k_s=" << fmt17(k_s) << '\n';
    s << "model.s0=" << fmt17(s0) << '\n';
    s << "grid.cells=" << cells << '\n';
    s << "time.t_end=" << fmt17(controls.t_end) << '\n';
    s << "time.dt_init=" << fmt17(controls.dt_init) << '\n';
    s << "time.dt_min=" << fmt17(controls.dt_min) << '\n';
    s << "time.dt_max=" << fmt17(controls.dt_max) << '\n';
    s << "time.cfl=" << fmt17(controls.cfl) << '\n';
    s << "time.stride=" << controls.stride << '\n';
    s << "limits.u_max=" << fmt17(controls.u_max) << '\n';
    s << "limits.nonneg_tol=" << fmt17(controls.nonneg_tol) << '\n';
    s << "limits.growth_cap=" << fmt17(controls.growth_cap) << '\n';
    s << "init.family=" << init.family << '\n';
    s << "init.m=" << fmt17(init.m) << '\n';
    s << "init.eps_mass=" << fmt17(init.eps_mass) << '\n';
    s << "init.eta=" << fmt17(init.eta) << '\n';
    s << "init.rho=" << fmt17(init.rho) << '\n';
    s << "init.gamma=" << fmt17(init.gamma) << '\n';
    s << "init.kappa=" << fmt17(init.kappa) << '\n';
    s << "init.n_psi=" << init.n_psi << '\n';
    s << "init.theta_log=" << fmt17(init.theta_log) << '\n';
    s << "stationary.tol=" << fmt17(stat.tol) << '\n';
    s << "stationary.max_iter=" << stat.max_iter << '\n';
    s << "stationary.lambda=" << fmt17(stat.lambda0) << '\n';
    s << "stationary.guess_amp=" << fmt17(stat.guess_amp) << '\n';
    s << "stationary.guess_width=" << fmt17(stat.guess_width) << '\n';
    s << "output.dir=" << out_dir << '\n';
    s << "output.emit_svg=" << (emit_svg ? "true" : "false") << '\n';
    return s.str();
}

std::string run_config::run_id() const { return hex16(fnv1a64(canonical())); }

kinetics_params kinetics_from(const run_config& cfg) {
    kinetics_params kp;
    kp.mode = kinetics_mode::prototype;
    kp.alpha = cfg.alpha;
    kp.beta = cfg.beta;
    kp.K_D = cfg.k_d;
    kp.k_S = cfg.k_s;
    kp.s0 = cfg.s0;
    return kp;
}

radial_grid grid_from(const run_config& cfg) { return make_grid(cfg.n, cfg.R, cfg.cells); }

} // namespace chemlab
