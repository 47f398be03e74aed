#pragma once

#include "chemlab/numerics.hpp"

#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace chemlab {

enum class kinetics_mode { prototype, tabulated };

struct kinetics_params {
    kinetics_mode mode = kinetics_mode::prototype;
    double alpha = 0.0;            // diffusion decay exponent
    double beta = 0.0;             // sensitivity growth exponent
    double K_D = 1.0;              // diffusion amplitude
    double k_S = 1.0;              // sensitivity amplitude
    double s0 = 2.0;               // base point of the integral functionals
    double s_table_min = 1e-9;     // cached table span
    double s_table_max = 1e16;
    int nodes_per_decade = 4096;
};

// Diffusion D, sensitivity S, and the derived scalar functionals
//   f(s) = int_{s0}^{s} D/S,  G(s) = int_{s0}^{s} f,
//   H(s) = int_{s0}^{s} xi D(xi)/S(xi) dxi for s >= s0, else 0.
// Prototype mode: D(s) = K_D (s+1)^(-alpha), S(s) = k_S s (s+1)^(beta-1).
// Tabulated mode: D and S are supplied as samples over [s_table_min, s_table_max].
// f, G, H are served from cumulative quadrature tables on a geometric node grid
// (s0 is an exact node) built lazily on first use; the object is immutable and
// safe for concurrent reads afterwards.
class kinetics {
public:
    explicit kinetics(kinetics_params p);
    // Tabulated: D_samples/S_samples evaluated at geometric nodes spanning
    // [s_table_min, s_table_max] through s0 (see table_nodes()).
    kinetics(kinetics_params p, std::vector<double> D_samples, std::vector<double> S_samples);

    // Node grid a tabulated kinetics must be sampled on for these parameters.
    static std::vector<double> table_nodes(const kinetics_params& p);

    double D(double s) const;
    double S(double s) const;
    double ds_ratio(double s) const; // D(s)/S(s), s > 0

    double f(double s) const;
    double G(double s) const;
    double H(double s) const;
    // Same functionals anchored at a different base point.
    double f(double s, double base) const;
    double G(double s, double base) const;
    double H(double s, double base) const;

    // Inverse of f; hint (optional) accelerates slowly varying query sequences.
    double f_inverse(double x) const;
    double f_inverse(double x, std::size_t* hint) const;
    // Largest/smallest f values the inverse can resolve.
    double f_range_min() const;
    double f_range_max() const;

    double s0() const { return p_.s0; }
    const kinetics_params& params() const { return p_; }

private:
    void ensure_tables() const;
    double f_raw(double s) const;  // anchored at p_.s0
    double G_raw(double s) const;
    double H_raw(double s) const;  // int_{s0}^{s} xi D/S, no positive-part cut

    kinetics_params p_;
    std::vector<double> nodes_;        // geometric grid through s0
    std::vector<double> ln_nodes_;
    std::size_t s0_index_ = 0;
    pchip D_tab_, S_tab_;              // tabulated mode only (in ln s)

    mutable std::once_flag build_flag_;
    mutable pchip f_tab_, G_tab_, H_tab_;  // in ln s
    mutable pchip finv_tab_;               // ln s as a function of f
};

// Growth-condition checker for the blow-up hypotheses on H and G.
// In dimension n > 4 the bounds read
//   H(s) <= (n-4-eps)/n * G(s) + K s     and    G(s) <= k s^(2-gamma),
// in dimension n = 4
//   H(s) <= K s / ln s                   and    G(s) <= k s (ln s)^theta_log.
struct growth_condition_params {
    int n = 5;
    double eps = 0.1;        // only n > 4
    double gamma = 1.0;      // only n > 4; relevant range (4/n, 1]
    double theta_log = 0.5;  // only n = 4
    double K = -1.0;         // bound constants; negative means "exhibit minimal"
    double k = -1.0;
    double s_lo = 10.0;      // sampling window, geometric samples
    double s_hi = 1e8;
    int samples = 2048;
};

struct growth_bound_report {
    bool holds = false;         // bound satisfied on the sample window
    double constant_used = 0.0; // given constant or minimal exhibited one
    double worst_margin = 0.0;  // min over samples of (bound - value)
    double worst_s = 0.0;
    double tail_slope = 0.0;    // log-log slope of value/bound-shape on the top decade
};

struct condition_report {
    growth_bound_report h_bound;
    growth_bound_report g_bound;
    bool sampled_ok = false;   // both bounds hold on samples with bounded tails
    bool satisfiable = false;  // exact verdict from prototype growth exponents
    bool satisfiable_known = false; // false for tabulated kinetics
    double exponent_sum = 0.0; // alpha + beta (prototype)
    std::string note;
};

condition_report check_growth_conditions(const kinetics& kin,
                                         const growth_condition_params& cp);

} // namespace chemlab
