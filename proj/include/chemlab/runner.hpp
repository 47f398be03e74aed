#pragma once

#include "chemlab/config.hpp"
#include "chemlab/simulator.hpp"
#include "chemlab/stationary.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace chemlab {

// Build grid/kinetics/initial data from a config and run to t_end.
run_result execute(const run_config& cfg);

// Same, plus artifacts under <out_dir>/<run_id>/: timeseries.csv, summary.json,
// plot data files and (optionally) SVG charts.  Returns the run directory.
std::string simulate_to_files(const run_config& cfg, run_result* out = nullptr);

nlohmann::json summary_json(const run_config& cfg, const run_result& res);

// Initial-data energy report without time stepping.
nlohmann::json energy_json(const run_config& cfg);

// Writes u0.csv, v0.csv, w0.csv (r,value rows) and manifest.json into
// <out_dir>/<run_id>-init/; returns that directory.
std::string write_initdata_files(const run_config& cfg);

nlohmann::json stationary_json(const run_config& cfg, stationary_result* out = nullptr);

// Canned identity/inequality checks; which is one of hardy, pohozaev,
// weighted, conditions, or all.
std::vector<nlohmann::json> verify_checks(const std::string& which);

} // namespace chemlab
