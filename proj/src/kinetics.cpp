#include "chemlab/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace chemlab {

namespace {

void validate_params(const kinetics_params& p) {
    if (!(p.s0 > 1.0)) throw std::invalid_argument("kinetics: s0 must exceed 1");
    if (!(p.s_table_min > 0.0) || !(p.s_table_min < p.s0) || !(p.s_table_max > p.s0))
        throw std::invalid_argument("kinetics: table span must straddle s0");
    if (p.nodes_per_decade < 16)
        throw std::invalid_argument("kinetics: nodes_per_decade too small");
    if (p.mode == kinetics_mode::prototype) {
        if (!(p.K_D > 0.0) || !(p.k_S > 0.0))
            throw std::invalid_argument("kinetics: amplitudes must be positive");
        if (p.alpha < 0.0 || p.beta < 0.0)
            throw std::invalid_argument("kinetics: exponents must be nonnegative");
    }
}

// Exact integral over one segment of a cubic Hermite interpolant.
double hermite_segment_integral(double h, double y0, double y1, double d0, double d1) {
    return 0.5 * h * (y0 + y1) + h * h / 12.0 * (d0 - d1);
}

} // namespace

std::vector<double> kinetics::table_nodes(const kinetics_params& p) {
    validate_params(p);
    const double step = std::log(10.0) / p.nodes_per_decade;
    const double ln_s0 = std::log(p.s0);
    const long k_lo = -static_cast<long>(std::ceil(std::log10(p.s0 / p.s_table_min) * p.nodes_per_decade));
    const long k_hi = static_cast<long>(std::ceil(std::log10(p.s_table_max / p.s0) * p.nodes_per_decade));
    std::vector<double> nodes;
    nodes.reserve(k_hi - k_lo + 1);
    for (long k = k_lo; k <= k_hi; ++k)
        nodes.push_back(k == 0 ? p.s0 : std::exp(ln_s0 + k * step));
    return nodes;
}

kinetics::kinetics(kinetics_params p) : p_(p) {
    if (p_.mode != kinetics_mode::prototype)
        throw std::invalid_argument("kinetics: tabulated mode needs sampled tables");
    validate_params(p_);
    nodes_ = table_nodes(p_);
    ln_nodes_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) ln_nodes_[i] = std::log(nodes_[i]);
    s0_index_ = static_cast<std::size_t>(
        std::lower_bound(nodes_.begin(), nodes_.end(), p_.s0) - nodes_.begin());
}

kinetics::kinetics(kinetics_params p, std::vector<double> D_samples, std::vector<double> S_samples)
    : p_(p) {
    p_.mode = kinetics_mode::tabulated;
    validate_params(p_);
    nodes_ = table_nodes(p_);
    if (D_samples.size() != nodes_.size() || S_samples.size() != nodes_.size())
        throw std::invalid_argument("kinetics: sample count must match table_nodes()");
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (!(D_samples[i] > 0.0) || !(S_samples[i] > 0.0))
            throw std::invalid_argument("kinetics: sampled D and S must be positive on s > 0");
    ln_nodes_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) ln_nodes_[i] = std::log(nodes_[i]);
    s0_index_ = static_cast<std::size_t>(
        std::lower_bound(nodes_.begin(), nodes_.end(), p_.s0) - nodes_.begin());
    D_tab_ = pchip(ln_nodes_, std::move(D_samples));
    S_tab_ = pchip(ln_nodes_, std::move(S_samples));
}

double kinetics::D(double s) const {
    if (p_.mode == kinetics_mode::prototype) {
        if (s < 0.0) throw std::domain_error("kinetics: D needs s >= 0");
        return p_.K_D * std::pow(s + 1.0, -p_.alpha);
    }
    if (s < nodes_.front() || s > nodes_.back())
        throw std::domain_error("kinetics: s outside tabulated range");
    return D_tab_(std::log(s));
}

double kinetics::S(double s) const {
    if (p_.mode == kinetics_mode::prototype) {
        if (s < 0.0) throw std::domain_error("kinetics: S needs s >= 0");
        return p_.k_S * s * std::pow(s + 1.0, p_.beta - 1.0);
    }
    if (s < nodes_.front() || s > nodes_.back())
        throw std::domain_error("kinetics: s outside tabulated range");
    return S_tab_(std::log(s));
}

double kinetics::ds_ratio(double s) const {
    if (!(s > 0.0)) throw std::domain_error("kinetics: D/S needs s > 0");
    if (p_.mode == kinetics_mode::prototype)
        return p_.K_D / p_.k_S * std::pow(s + 1.0, 1.0 - p_.alpha - p_.beta) / s;
    return D(s) / S(s);
}

void kinetics::ensure_tables() const {
    std::call_once(build_flag_, [this] {
        const std::size_t m = nodes_.size();
        std::vector<double> seg(m - 1);
        for (std::size_t i = 0; i + 1 < m; ++i) {
            auto q = integrate_adaptive([this](double s) { return ds_ratio(s); },
                                        nodes_[i], nodes_[i + 1]);
            seg[i] = q.value;
        }
        std::vector<double> fv(m, 0.0);
        for (std::size_t i = s0_index_; i + 1 < m; ++i) fv[i + 1] = fv[i] + seg[i];
        for (std::size_t i = s0_index_; i-- > 0;) fv[i] = fv[i + 1] - seg[i];
        f_tab_ = pchip(ln_nodes_, fv);
        // when D/S decays fast, f saturates and consecutive table values
        // collide in double precision; the inverse is built on the strictly
        // increasing subsequence (identical to fv whenever f resolves)
        std::vector<double> xf, yf;
        xf.reserve(m); yf.reserve(m);
        xf.push_back(fv[0]); yf.push_back(ln_nodes_[0]);
        for (std::size_t i = 1; i < m; ++i)
            if (fv[i] > xf.back()) { xf.push_back(fv[i]); yf.push_back(ln_nodes_[i]); }
        finv_tab_ = pchip(std::move(xf), std::move(yf));

        // integrate the f interpolant exactly segment by segment; in ln s
        // coordinates the integrand of G is e^x f(e^x)
        std::vector<double> gv(m, 0.0);
        std::vector<double> integ(m), dinteg(m);
        for (std::size_t i = 0; i < m; ++i) {
            integ[i] = nodes_[i] * fv[i];
            // d/dx of e^x f = e^x (f + f'); pchip derivative at nodes
            dinteg[i] = nodes_[i] * (fv[i] + f_tab_.deriv(ln_nodes_[i]));
        }
        for (std::size_t i = s0_index_; i + 1 < m; ++i) {
            double h = ln_nodes_[i + 1] - ln_nodes_[i];
            gv[i + 1] = gv[i] + hermite_segment_integral(h, integ[i], integ[i + 1], dinteg[i], dinteg[i + 1]);
        }
        for (std::size_t i = s0_index_; i-- > 0;) {
            double h = ln_nodes_[i + 1] - ln_nodes_[i];
            gv[i] = gv[i + 1] - hermite_segment_integral(h, integ[i], integ[i + 1], dinteg[i], dinteg[i + 1]);
        }
        G_tab_ = pchip(ln_nodes_, gv);

        if (p_.mode == kinetics_mode::tabulated) {
            std::vector<double> hv(m, 0.0);
            for (std::size_t i = s0_index_; i + 1 < m; ++i) {
                auto q = integrate_adaptive([this](double s) { return s * ds_ratio(s); },
                                            nodes_[i], nodes_[i + 1]);
                hv[i + 1] = hv[i] + q.value;
            }
            for (std::size_t i = s0_index_; i-- > 0;) {
                auto q = integrate_adaptive([this](double s) { return s * ds_ratio(s); },
                                            nodes_[i], nodes_[i + 1]);
                hv[i] = hv[i + 1] - q.value;
            }
            H_tab_ = pchip(ln_nodes_, hv);
        }
    });
}

double kinetics::f_raw(double s) const {
    ensure_tables();
    if (s > nodes_.back()) throw std::domain_error("kinetics: s above tabulated range");
    if (s < nodes_.front()) {
        if (p_.mode == kinetics_mode::tabulated)
            throw std::domain_error("kinetics: s below tabulated range");
        if (!(s > 0.0)) throw std::domain_error("kinetics: f needs s > 0");
        // D/S ~ (K_D/k_S)/s below the table
        return f_tab_(ln_nodes_.front()) + p_.K_D / p_.k_S * std::log(s / nodes_.front());
    }
    return f_tab_(std::log(s));
}

double kinetics::G_raw(double s) const {
    ensure_tables();
    if (s > nodes_.back()) throw std::domain_error("kinetics: s above tabulated range");
    if (s < nodes_.front()) {
        if (p_.mode == kinetics_mode::tabulated)
            throw std::domain_error("kinetics: s below tabulated range");
        if (s < 0.0) throw std::domain_error("kinetics: G needs s >= 0");
        // first-order extension; the omitted correction is O(s_table_min)
        return G_tab_(ln_nodes_.front()) + f_tab_(ln_nodes_.front()) * (s - nodes_.front());
    }
    return G_tab_(std::log(s));
}

double kinetics::H_raw(double s) const {
    if (p_.mode == kinetics_mode::prototype) {
        if (s < 0.0) throw std::domain_error("kinetics: H needs s >= 0");
        const double e2 = 2.0 - p_.alpha - p_.beta;
        const double amp = p_.K_D / p_.k_S;
        if (e2 == 0.0) return amp * std::log((s + 1.0) / (p_.s0 + 1.0));
        return amp * (std::pow(s + 1.0, e2) - std::pow(p_.s0 + 1.0, e2)) / e2;
    }
    ensure_tables();
    if (s < nodes_.front() || s > nodes_.back())
        throw std::domain_error("kinetics: s outside tabulated range");
    return H_tab_(std::log(s));
}

double kinetics::f(double s) const { return f_raw(s); }
double kinetics::G(double s) const { return G_raw(s); }
double kinetics::H(double s) const { return s >= p_.s0 ? H_raw(s) : 0.0; }

double kinetics::f(double s, double base) const { return f_raw(s) - f_raw(base); }

double kinetics::G(double s, double base) const {
    return G_raw(s) - G_raw(base) - f_raw(base) * (s - base);
}

double kinetics::H(double s, double base) const {
    return s >= base ? H_raw(s) - H_raw(base) : 0.0;
}

double kinetics::f_inverse(double x) const {
    std::size_t hint = 0;
    return f_inverse(x, &hint);
}

double kinetics::f_inverse(double x, std::size_t* hint) const {
    ensure_tables();
    if (x <= finv_tab_.x_min()) {
        if (p_.mode == kinetics_mode::tabulated) return 0.0;
        // invert the logarithmic tail
        return nodes_.front() * std::exp((x - finv_tab_.x_min()) * p_.k_S / p_.K_D);
    }
    if (x >= finv_tab_.x_max()) return nodes_.back();
    return std::exp(finv_tab_.eval_hint(x, hint));
}

double kinetics::f_range_min() const {
    ensure_tables();
    return finv_tab_.x_min();
}

double kinetics::f_range_max() const {
    ensure_tables();
    return finv_tab_.x_max();
}

namespace {

struct sampled_bound {
    growth_bound_report rep;
};

// value(s) must stay below constant * shape(s); if the constant is negative,
// exhibit the smallest one that works on the samples.  extra(s) is an additive
// offset on the bound side (used by the n > 4 first condition).
growth_bound_report check_bound(const std::vector<double>& ss,
                                const std::vector<double>& value,
                                const std::vector<double>& shape,
                                const std::vector<double>& extra,
                                double constant) {
    growth_bound_report r;
    if (constant < 0.0) {
        double need = 0.0;
        for (std::size_t i = 0; i < ss.size(); ++i)
            need = std::max(need, (value[i] - extra[i]) / shape[i]);
        r.constant_used = need;
    } else {
        r.constant_used = constant;
    }
    r.worst_margin = std::numeric_limits<double>::infinity();
    r.worst_s = ss.front();
    for (std::size_t i = 0; i < ss.size(); ++i) {
        double margin = r.constant_used * shape[i] + extra[i] - value[i];
        if (margin < r.worst_margin) {
            r.worst_margin = margin;
            r.worst_s = ss[i];
        }
    }
    // ratio growth on the top decade flags bounds that only hold transiently
    std::size_t last = ss.size() - 1;
    std::size_t top = last;
    while (top > 0 && ss[top] > ss[last] / 10.0) --top;
    double r0 = (value[top] - extra[top]) / shape[top];
    double r1 = (value[last] - extra[last]) / shape[last];
    if (r0 > 0.0 && r1 > 0.0)
        r.tail_slope = std::log(r1 / r0) / std::log(ss[last] / ss[top]);
    else
        r.tail_slope = (r1 > r0) ? 1.0 : 0.0;
    double scale = std::max(1.0, std::fabs(r.constant_used * shape[last]));
    r.holds = r.worst_margin >= -1e-9 * scale && r.tail_slope <= 0.02;
    return r;
}

} // namespace

condition_report check_growth_conditions(const kinetics& kin,
                                         const growth_condition_params& cp) {
    if (cp.n < 4) throw std::invalid_argument("growth conditions: need dimension >= 4");
    if (cp.n > 4 && !(cp.eps > 0.0 && cp.eps < static_cast<double>(cp.n - 4)))
        throw std::invalid_argument("growth conditions: eps must lie in (0, n-4)");
    if (cp.n > 4 && !(cp.gamma > 0.0 && cp.gamma <= 1.0))
        throw std::invalid_argument("growth conditions: gamma must lie in (0, 1]");
    if (cp.n == 4 && !(cp.theta_log > 0.0 && cp.theta_log < 1.0))
        throw std::invalid_argument("growth conditions: theta_log must lie in (0, 1)");
    double s_lo = std::max(cp.s_lo, kin.s0() + 1.0);
    if (!(cp.s_hi > 10.0 * s_lo))
        throw std::invalid_argument("growth conditions: sampling window too small");
    if (cp.samples < 16) throw std::invalid_argument("growth conditions: too few samples");

    std::vector<double> ss(cp.samples), hv(cp.samples), gv(cp.samples);
    double lr = std::log(cp.s_hi / s_lo) / (cp.samples - 1);
    for (int i = 0; i < cp.samples; ++i) {
        ss[i] = s_lo * std::exp(i * lr);
        hv[i] = kin.H(ss[i]);
        gv[i] = kin.G(ss[i]);
    }

    condition_report rep;
    std::vector<double> shape(cp.samples), extra(cp.samples, 0.0);
    if (cp.n == 4) {
        for (int i = 0; i < cp.samples; ++i) shape[i] = ss[i] / std::log(ss[i]);
        rep.h_bound = check_bound(ss, hv, shape, extra, cp.K);
        for (int i = 0; i < cp.samples; ++i)
            shape[i] = ss[i] * std::pow(std::log(ss[i]), cp.theta_log);
        rep.g_bound = check_bound(ss, gv, shape, extra, cp.k);
    } else {
        double c = (cp.n - 4 - cp.eps) / cp.n;
        for (int i = 0; i < cp.samples; ++i) {
            shape[i] = ss[i];
            extra[i] = c * gv[i];
        }
        rep.h_bound = check_bound(ss, hv, shape, extra, cp.K);
        std::fill(extra.begin(), extra.end(), 0.0);
        for (int i = 0; i < cp.samples; ++i) shape[i] = std::pow(ss[i], 2.0 - cp.gamma);
        rep.g_bound = check_bound(ss, gv, shape, extra, cp.k);
    }
    rep.sampled_ok = rep.h_bound.holds && rep.g_bound.holds;

    if (kin.params().mode == kinetics_mode::prototype) {
        rep.satisfiable_known = true;
        rep.exponent_sum = kin.params().alpha + kin.params().beta;
        // growth exponents: H ~ s^(2-a-b), G ~ s^(2-a-b) for a+b < 1 with
        // H/G -> 1-a-b, G ~ s for a+b >= 1.  Feasibility over admissible
        // (eps, gamma, constants) reduces to a strict exponent inequality.
        rep.satisfiable = rep.exponent_sum > 4.0 / cp.n;
        rep.note = rep.satisfiable
                       ? "prototype exponents admit both growth bounds"
                       : "prototype exponents force superlinear growth beyond both bounds";
    } else {
        rep.satisfiable_known = false;
        rep.note = "tabulated kinetics: only the sampled verdict is available";
    }
    return rep;
}

} // namespace chemlab
