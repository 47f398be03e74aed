#pragma once

#include <string>
#include <vector>

namespace chemlab {

// 800x600 single-polyline chart.  Output depends only on the inputs.
std::string svg_line_chart(const std::vector<double>& xs, const std::vector<double>& ys,
                           const std::string& title, const std::string& x_label,
                           const std::string& y_label, bool log_y = false);

// Reads <run_dir>/timeseries.csv and writes F_vs_t.csv and supu_vs_t.csv next
// to it; with_svg additionally writes F_vs_t.svg and supu_vs_t.svg (sup u on a
// log axis when it spans more than three decades).
void emit_plots(const std::string& run_dir, bool with_svg);

// Minimal well-formedness scan (prolog, balanced tags, quoted attributes).
bool xml_well_formed(const std::string& text, std::string* why = nullptr);

} // namespace chemlab
