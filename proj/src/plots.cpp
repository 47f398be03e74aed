#include "chemlab/plots.hpp"

#include "chemlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace chemlab {

namespace {

std::string num2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string num_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        switch (c) {
            case '&': o += "&amp;"; break;
            case '<': o += "&lt;"; break;
            case '>': o += "&gt;"; break;
            case '"': o += "&quot;"; break;
            default: o += c;
        }
    }
    return o;
}

} // namespace

std::string svg_line_chart(const std::vector<double>& xs, const std::vector<double>& ys,
                           const std::string& title, const std::string& x_label,
                           const std::string& y_label, bool log_y) {
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("svg_line_chart: need matching nonempty series");
    const double W = 800.0, H = 600.0;
    const double ml = 80.0, mr = 25.0, mt = 45.0, mb = 60.0;

    std::vector<double> py(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) {
        double y = ys[i];
        if (log_y) y = std::log10(std::max(y, 1e-300));
        py[i] = y;
    }
    double xmin = *std::min_element(xs.begin(), xs.end());
    double xmax = *std::max_element(xs.begin(), xs.end());
    double ymin = *std::min_element(py.begin(), py.end());
    double ymax = *std::max_element(py.begin(), py.end());
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) {
        ymax += 0.5;
        ymin -= 0.5;
    }
    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto Y = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\">\n";
    s << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    s << "<text x=\"400\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"18\">"
      << xml_escape(title) << "</text>\n";
    s << "<rect x=\"" << num2(ml) << "\" y=\"" << num2(mt) << "\" width=\""
      << num2(W - ml - mr) << "\" height=\"" << num2(H - mt - mb)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

    for (int k = 0; k <= 4; ++k) {
        double fx = xmin + k * (xmax - xmin) / 4.0;
        double fy = ymin + k * (ymax - ymin) / 4.0;
        double xpix = X(fx), ypix = Y(fy);
        s << "<line x1=\"" << num2(xpix) << "\" y1=\"" << num2(H - mb) << "\" x2=\""
          << num2(xpix) << "\" y2=\"" << num2(H - mb + 6) << "\" stroke=\"black\"/>\n";
        s << "<text x=\"" << num2(xpix) << "\" y=\"" << num2(H - mb + 22)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
          << num_label(fx) << "</text>\n";
        s << "<line x1=\"" << num2(ml - 6) << "\" y1=\"" << num2(ypix) << "\" x2=\""
          << num2(ml) << "\" y2=\"" << num2(ypix) << "\" stroke=\"black\"/>\n";
        double shown = log_y ? std::pow(10.0, fy) : fy;
        s << "<text x=\"" << num2(ml - 10) << "\" y=\"" << num2(ypix + 4)
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">"
          << num_label(shown) << "</text>\n";
    }
    s << "<text x=\"" << num2(ml + (W - ml - mr) / 2) << "\" y=\"" << num2(H - 14)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">"
      << xml_escape(x_label) << "</text>\n";
    s << "<text x=\"20\" y=\"" << num2(mt + (H - mt - mb) / 2)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\" "
         "transform=\"rotate(-90 20 "
      << num2(mt + (H - mt - mb) / 2) << ")\">" << xml_escape(y_label)
      << (log_y ? " (log scale)" : "") << "</text>\n";

    s << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s << ' ';
        s << num2(X(xs[i])) << ',' << num2(Y(py[i]));
    }
    s << "\"/>\n</svg>\n";
    return s.str();
}

namespace {

struct series_data {
    std::vector<double> t, F, supu;
};

series_data read_timeseries(const std::string& run_dir) {
    std::string path = run_dir + "/timeseries.csv";
    std::ifstream in(path);
    if (!in) throw std::runtime_error("emit_plots: no timeseries at '" + path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("emit_plots: empty timeseries at '" + path + "'");
    std::vector<std::string> cols;
    {
        std::istringstream h(line);
        std::string c;
        while (std::getline(h, c, ',')) cols.push_back(c);
    }
    auto col_of = [&](const std::string& name) {
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (cols[i] == name) return i;
        throw std::runtime_error("emit_plots: column '" + name + "' missing in '" + path + "'");
    };
    std::size_t ct = col_of("t"), cF = col_of("F"), cs = col_of("sup_u");
    series_data d;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (cells.size() != cols.size())
            throw std::runtime_error("emit_plots: ragged row in '" + path + "'");
        d.t.push_back(std::stod(cells[ct]));
        d.F.push_back(std::stod(cells[cF]));
        d.supu.push_back(std::stod(cells[cs]));
    }
    if (d.t.empty()) throw std::runtime_error("emit_plots: no rows in '" + path + "'");
    return d;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
}

} // namespace

void emit_plots(const std::string& run_dir, bool with_svg) {
    series_data d = read_timeseries(run_dir);
    {
        std::ostringstream s;
        s << "t,F\n";
        for (std::size_t i = 0; i < d.t.size(); ++i)
            s << fmt17(d.t[i]) << ',' << fmt17(d.F[i]) << '\n';
        write_text(run_dir + "/F_vs_t.csv", s.str());
    }
    {
        std::ostringstream s;
        s << "t,sup_u\n";
        for (std::size_t i = 0; i < d.t.size(); ++i)
            s << fmt17(d.t[i]) << ',' << fmt17(d.supu[i]) << '\n';
        write_text(run_dir + "/supu_vs_t.csv", s.str());
    }
    if (with_svg) {
        write_text(run_dir + "/F_vs_t.svg",
                   svg_line_chart(d.t, d.F, "free energy", "t", "F", false));
        double mn = *std::min_element(d.supu.begin(), d.supu.end());
        double mx = *std::max_element(d.supu.begin(), d.supu.end());
        bool logy = mn > 0.0 && mx / mn > 1e3;
        write_text(run_dir + "/supu_vs_t.svg",
                   svg_line_chart(d.t, d.supu, "maximum of u", "t", "sup u", logy));
    }
}

bool xml_well_formed(const std::string& text, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    std::vector<std::string> stack;
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool seen_element = false;
    while (i < n) {
        if (text[i] != '<') {
            if (text[i] == '>') return fail("stray '>'");
            ++i;
            continue;
        }
        std::size_t close = text.find('>', i);
        if (close == std::string::npos) return fail("unterminated tag");
        std::string tag = text.substr(i + 1, close - i - 1);
        if (tag.empty()) return fail("empty tag");
        if (tag.front() == '?') {
            if (tag.back() != '?') return fail("bad processing instruction");
        } else if (tag.front() == '!') {
            // comments/doctype: accept
        } else if (tag.front() == '/') {
            std::string name = tag.substr(1);
            if (stack.empty() || stack.back() != name)
                return fail("mismatched closing tag '" + name + "'");
            stack.pop_back();
        } else {
            bool self_close = tag.back() == '/';
            std::string body = self_close ? tag.substr(0, tag.size() - 1) : tag;
            std::size_t sp = body.find_first_of(" \t\r\n");
            std::string name = sp == std::string::npos ? body : body.substr(0, sp);
            if (name.empty()) return fail("empty element name");
            // attribute quotes must balance
            int quotes = 0;
            for (char ch : body)
                if (ch == '"') ++quotes;
            if (quotes % 2) return fail("unbalanced attribute quotes in '" + name + "'");
            seen_element = true;
            if (!self_close) stack.push_back(name);
        }
        i = close + 1;
    }
    if (!stack.empty()) return fail("unclosed element '" + stack.back() + "'");
    if (!seen_element) return fail("no elements");
    return true;
}

} // namespace chemlab
