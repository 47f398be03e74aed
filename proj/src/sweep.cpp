#include "chemlab/sweep.hpp"

#include "chemlab/numerics.hpp"
#include "chemlab/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

namespace chemlab {

const char* sweep_csv_header =
    "run_id,n,alpha,beta,eta,m,outcome,t_final,sup_u_final,F0,F_final,min_dt";

sweep_spec parse_sweep_text(const std::string& text) {
    sweep_spec spec;
    spec.base = parse_config_text(text, &spec.axes);
    return spec;
}

sweep_spec load_sweep(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("config error: cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_sweep_text(ss.str());
}

namespace {

std::set<std::string> existing_run_ids(const std::string& csv_path) {
    std::set<std::string> ids;
    std::ifstream in(csv_path);
    if (!in) return ids;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (first) {
            first = false;
            continue;
        }
        std::size_t comma = line.find(',');
        if (comma != std::string::npos && comma > 0) ids.insert(line.substr(0, comma));
    }
    return ids;
}

int pick_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CHEMLAB_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

} // namespace

int run_sweep(const sweep_spec& spec) {
    const auto& ax = spec.axes;
    std::vector<double> alphas = ax.alpha.empty() ? std::vector<double>{spec.base.alpha} : ax.alpha;
    std::vector<double> betas = ax.beta.empty() ? std::vector<double>{spec.base.beta} : ax.beta;
    std::vector<double> etas = ax.eta.empty() ? std::vector<double>{spec.base.init.eta} : ax.eta;

    std::vector<run_config> tasks;
    for (double a : alphas)
        for (double b : betas)
            for (double e : etas) {
                run_config cfg = spec.base;
                cfg.alpha = a;
                cfg.beta = b;
                cfg.init.eta = e;
                tasks.push_back(std::move(cfg));
            }

    std::filesystem::create_directories(spec.base.out_dir);
    const std::string csv_path = spec.base.out_dir + "/sweep.csv";
    const std::string log_path = spec.base.out_dir + "/errors.log";
    std::set<std::string> done = existing_run_ids(csv_path);

    std::ofstream csv(csv_path, std::ios::app);
    if (!csv) throw std::runtime_error("run_sweep: cannot open '" + csv_path + "'");
    if (done.empty() && std::filesystem::file_size(csv_path) == 0)
        csv << sweep_csv_header << '\n' << std::flush;

    std::mutex io_mutex;
    std::atomic<std::size_t> cursor{0};
    std::atomic<int> failures{0};

    auto worker = [&] {
        for (;;) {
            std::size_t idx = cursor.fetch_add(1);
            if (idx >= tasks.size()) return;
            const run_config& cfg = tasks[idx];
            std::string id = cfg.run_id();
            {
                std::lock_guard<std::mutex> lk(io_mutex);
                if (done.count(id)) continue;
                done.insert(id);
            }
            std::string outcome;
            double t_final = std::numeric_limits<double>::quiet_NaN();
            double sup_final = t_final, F0 = t_final, F_final = t_final, min_dt = t_final;
            std::string error_msg;
            try {
                run_result res = execute(cfg);
                outcome = outcome_name(res.outcome);
                t_final = res.state.t;
                sup_final = res.series.empty() ? sup_norm(res.state.u) : res.series.back().sup_u;
                F0 = res.F0;
                F_final = res.series.empty() ? 0.0 : res.series.back().F;
                min_dt = res.min_dt;
            } catch (const std::exception& ex) {
                outcome = "error";
                error_msg = ex.what();
                ++failures;
            }
            std::ostringstream row;
            row << id << ',' << cfg.n << ',' << fmt17(cfg.alpha) << ',' << fmt17(cfg.beta)
                << ',' << fmt17(cfg.init.eta) << ',' << fmt17(cfg.init.m) << ',' << outcome
                << ',' << fmt17(t_final) << ',' << fmt17(sup_final) << ',' << fmt17(F0) << ','
                << fmt17(F_final) << ',' << fmt17(min_dt);
            std::lock_guard<std::mutex> lk(io_mutex);
            csv << row.str() << '\n' << std::flush;
            if (!error_msg.empty()) {
                std::ofstream log(log_path, std::ios::app);
                log << id << ": " << error_msg << '\n';
            }
        }
    };

    int workers = pick_workers(ax.workers);
    workers = std::min<int>(workers, static_cast<int>(tasks.size()) + 1);
    std::vector<std::thread> pool;
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return failures.load();
}

} // namespace chemlab
