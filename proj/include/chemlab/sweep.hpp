#pragma once

#include "chemlab/config.hpp"

#include <string>

namespace chemlab {

struct sweep_spec {
    run_config base;
    sweep_axes axes;
};

sweep_spec parse_sweep_text(const std::string& text);
sweep_spec load_sweep(const std::string& path);

// Runs the product of the axis lists (missing axes pin the base value) over a
// worker pool.  Appends one row per run to <out_dir>/sweep.csv; run ids already
// present in the file are skipped, so an interrupted sweep can be rerun.
// Failed runs are recorded with outcome "error" and their messages collected in
// <out_dir>/errors.log.  Returns the number of failed runs.
int run_sweep(const sweep_spec& spec);

extern const char* sweep_csv_header;

} // namespace chemlab
