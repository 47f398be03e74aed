#include "chemlab/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace chemlab {

namespace {

double fc_end_slope(double h0, double h1, double d0, double d1) {
    // Three-point shape-preserving estimate for a boundary slope.
    double d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (d * d0 <= 0.0) return 0.0;
    if (d0 * d1 < 0.0 && std::fabs(d) > 3.0 * std::fabs(d0)) return 3.0 * d0;
    return d;
}

} // namespace

pchip::pchip(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
    const std::size_t n = x_.size();
    if (n < 2 || y_.size() != n)
        throw std::invalid_argument("pchip: need at least two nodes and matching sizes");
    for (std::size_t i = 0; i + 1 < n; ++i)
        if (!(x_[i] < x_[i + 1]))
            throw std::invalid_argument("pchip: nodes must be strictly increasing");

    std::vector<double> h(n - 1), del(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        h[i] = x_[i + 1] - x_[i];
        del[i] = (y_[i + 1] - y_[i]) / h[i];
    }

    d_.assign(n, 0.0);
    if (n == 2) {
        d_[0] = d_[1] = del[0];
        return;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (del[i - 1] * del[i] > 0.0) {
            double w1 = 2.0 * h[i] + h[i - 1];
            double w2 = h[i] + 2.0 * h[i - 1];
            d_[i] = (w1 + w2) / (w1 / del[i - 1] + w2 / del[i]);
        }
    }
    d_[0] = fc_end_slope(h[0], h[1], del[0], del[1]);
    d_[n - 1] = fc_end_slope(h[n - 2], h[n - 3], del[n - 2], del[n - 3]);
}

std::size_t pchip::locate(double xq) const {
    if (xq <= x_.front()) return 0;
    if (xq >= x_[x_.size() - 2]) return x_.size() - 2;
    auto it = std::upper_bound(x_.begin(), x_.end(), xq);
    return static_cast<std::size_t>(it - x_.begin()) - 1;
}

double pchip::eval_segment(std::size_t i, double xq) const {
    double h = x_[i + 1] - x_[i];
    double t = (xq - x_[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    double h10 = t3 - 2.0 * t2 + t;
    double h01 = -2.0 * t3 + 3.0 * t2;
    double h11 = t3 - t2;
    return h00 * y_[i] + h * h10 * d_[i] + h01 * y_[i + 1] + h * h11 * d_[i + 1];
}

double pchip::deriv_segment(std::size_t i, double xq) const {
    double h = x_[i + 1] - x_[i];
    double t = (xq - x_[i]) / h;
    double t2 = t * t;
    double g00 = (6.0 * t2 - 6.0 * t) / h;
    double g10 = 3.0 * t2 - 4.0 * t + 1.0;
    double g01 = (-6.0 * t2 + 6.0 * t) / h;
    double g11 = 3.0 * t2 - 2.0 * t;
    return g00 * y_[i] + g10 * d_[i] + g01 * y_[i + 1] + g11 * d_[i + 1];
}

double pchip::operator()(double xq) const { return eval_segment(locate(xq), xq); }

double pchip::eval_hint(double xq, std::size_t* hint) const {
    std::size_t i = std::min(*hint, x_.size() - 2);
    if (xq >= x_[i] && xq <= x_[i + 1]) {
        *hint = i;
        return eval_segment(i, xq);
    }
    // gallop from the hint, then fall back to binary search within the bracket
    std::size_t lo, hi;
    std::size_t stepw = 1;
    if (xq < x_[i]) {
        hi = i;
        lo = i;
        while (lo > 0 && x_[lo] > xq) {
            lo = (lo > stepw) ? lo - stepw : 0;
            stepw *= 2;
        }
    } else {
        lo = i;
        hi = i + 1;
        while (hi < x_.size() - 1 && x_[hi] < xq) {
            hi = std::min(hi + stepw, x_.size() - 1);
            stepw *= 2;
        }
    }
    auto it = std::upper_bound(x_.begin() + lo, x_.begin() + hi + 1, xq);
    std::size_t seg = (it == x_.begin()) ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
    seg = std::min(seg, x_.size() - 2);
    *hint = seg;
    return eval_segment(seg, xq);
}

double pchip::deriv(double xq) const { return deriv_segment(locate(xq), xq); }

namespace {

struct simpson_ctx {
    const std::function<double(double)>* f;
    double rel_tol, abs_tol;
    int max_depth;
    double err = 0.0;
    bool converged = true;
};

double simpson_rec(simpson_ctx& c, double a, double b, double fa, double fm, double fb,
                   double whole, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = (*c.f)(lm), frm = (*c.f)(rm);
    double h = b - a;
    double left = h / 12.0 * (fa + 4.0 * flm + fm);
    double right = h / 12.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * std::max(c.abs_tol, c.rel_tol * std::fabs(left + right)) ||
        depth >= c.max_depth) {
        if (depth >= c.max_depth) c.converged = false;
        c.err += std::fabs(delta) / 15.0;
        return left + right + delta / 15.0;
    }
    return simpson_rec(c, a, m, fa, flm, fm, left, depth + 1) +
           simpson_rec(c, m, b, fm, frm, fb, right, depth + 1);
}

} // namespace

quad_result integrate_adaptive(const std::function<double(double)>& f,
                               double a, double b,
                               double rel_tol, double abs_tol, int max_depth) {
    if (a == b) return {0.0, 0.0, true};
    simpson_ctx c{&f, rel_tol, abs_tol, max_depth};
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double v = simpson_rec(c, a, b, fa, fm, fb, whole, 0);
    return {v, c.err, c.converged};
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string hex16(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

std::vector<double> solve_dense(std::vector<double> a, std::vector<double> b) {
    const std::size_t k = b.size();
    if (a.size() != k * k) throw std::invalid_argument("solve_dense: size mismatch");
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < k; ++r)
            if (std::fabs(a[r * k + col]) > std::fabs(a[piv * k + col])) piv = r;
        if (a[piv * k + col] == 0.0) throw std::runtime_error("solve_dense: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < k; ++j) std::swap(a[piv * k + j], a[col * k + j]);
            std::swap(b[piv], b[col]);
        }
        for (std::size_t r = col + 1; r < k; ++r) {
            double m = a[r * k + col] / a[col * k + col];
            if (m == 0.0) continue;
            for (std::size_t j = col; j < k; ++j) a[r * k + j] -= m * a[col * k + j];
            b[r] -= m * b[col];
        }
    }
    std::vector<double> x(k);
    for (std::size_t ri = k; ri-- > 0;) {
        double s = b[ri];
        for (std::size_t j = ri + 1; j < k; ++j) s -= a[ri * k + j] * x[j];
        x[ri] = s / a[ri * k + ri];
    }
    return x;
}

std::vector<double> deriv_weights(const std::vector<double>& offsets, int order) {
    const std::size_t k = offsets.size();
    if (order < 0 || static_cast<std::size_t>(order) >= k)
        throw std::invalid_argument("deriv_weights: order out of range");
    // Vandermonde conditions: sum_k w_k off_k^j / j! = [j == order]
    std::vector<double> a(k * k), rhs(k, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        double fact = 1.0;
        for (std::size_t q = 1; q <= j; ++q) fact *= static_cast<double>(q);
        for (std::size_t i = 0; i < k; ++i)
            a[j * k + i] = std::pow(offsets[i], static_cast<double>(j)) / fact;
    }
    rhs[static_cast<std::size_t>(order)] = 1.0;
    return solve_dense(std::move(a), std::move(rhs));
}

} // namespace chemlab
