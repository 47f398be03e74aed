#pragma once

#include "chemlab/initdata.hpp"
#include "chemlab/kinetics.hpp"
#include "chemlab/simulator.hpp"
#include "chemlab/stationary.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace chemlab {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fully resolved run description.  Parsed from sectioned key = value text;
// unknown keys are rejected, missing optional keys take the documented
// defaults, and every consistency rule names the offending key.
struct run_config {
    // [model]
    int n = 0;
    double R = 0.0;
    std::string mode = "prototype";
    double alpha = 0.0;
    double beta = 0.0;
    double k_d = 1.0;
    double k_s = 1.0;
    double s0 = 2.0;
    // [grid]
    int cells = 512;
    // [time] and [limits]
    time_controls controls;
    // [init]
    init_params init;
    // [stationary]
    stationary_params stat;
    // [output]
    std::string out_dir = "runs";
    bool emit_svg = false;

    std::string canonical() const; // deterministic full serialization
    std::string run_id() const;    // fnv1a-64 of canonical(), 16 hex digits
};

struct sweep_axes {
    std::vector<double> alpha, beta, eta;
    int workers = 0;
    bool any() const { return !alpha.empty() || !beta.empty() || !eta.empty(); }
};

// Parses and validates; pass axes to additionally accept a [sweep] section
// with comma-separated alpha / beta / eta lists and a workers count.
run_config parse_config_text(const std::string& text, sweep_axes* axes = nullptr);
run_config load_config(const std::string& path, sweep_axes* axes = nullptr);

kinetics_params kinetics_from(const run_config& cfg);
radial_grid grid_from(const run_config& cfg);

} // namespace chemlab
