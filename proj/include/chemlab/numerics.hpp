#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace chemlab {

// Monotone cubic Hermite interpolant with Fritsch-Carlson slopes.
// Nodes must be strictly increasing; monotone data yields a monotone curve.
class pchip {
public:
    pchip() = default;
    pchip(std::vector<double> x, std::vector<double> y);

    double operator()(double xq) const;
    // Same as operator() but seeds the segment search with *hint and writes
    // the found segment back.  Cheap for slowly varying query sequences.
    double eval_hint(double xq, std::size_t* hint) const;
    double deriv(double xq) const;

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }
    std::size_t size() const { return x_.size(); }
    const std::vector<double>& xs() const { return x_; }
    const std::vector<double>& ys() const { return y_; }

private:
    std::size_t locate(double xq) const;
    double eval_segment(std::size_t i, double xq) const;
    double deriv_segment(std::size_t i, double xq) const;

    std::vector<double> x_, y_, d_;
};

struct quad_result {
    double value = 0.0;
    double error = 0.0;    // accumulated local error estimates
    bool converged = true; // false if the depth limit was hit anywhere
};

// Adaptive Simpson quadrature on [a, b].
quad_result integrate_adaptive(const std::function<double(double)>& f,
                               double a, double b,
                               double rel_tol = 1e-10, double abs_tol = 1e-14,
                               int max_depth = 48);

// FNV-1a 64-bit hash.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64(const std::string& s);

// Shortest round-trip-exact decimal form of a double ("%.17g", C locale).
std::string fmt17(double v);
// 16 hex digits, lowercase, zero padded.
std::string hex16(std::uint64_t v);

// Dense solve of a small k-by-k system (row-major a), partial pivoting.
std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b);

// Weights w such that sum_k w_k f(x0 + offsets_k) approximates f^(order)(x0).
std::vector<double> deriv_weights(const std::vector<double>& offsets, int order);

} // namespace chemlab
