#include "isoperim/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace isoperim {

namespace {

double simpson_step(const RealFn& f, double a, double m, double b, double fa, double fm,
                    double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_step(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const RealFn& f, double a, double b, double abs_tol, int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, m, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double integrate_graded_left(const RealFn& f, double a, double b, double abs_tol) {
    if (b <= a) return 0.0;
    double total = 0.0;
    double hi = b;
    const double span = b - a;
    for (int k = 0; k < 200; ++k) {
        const double lo = a + 0.5 * (hi - a);
        const double piece = adaptive_simpson(f, lo, hi, abs_tol * 0.25);
        total += piece;
        if ((hi - a) < 1e-14 * span || (std::fabs(piece) < abs_tol && k > 4)) break;
        hi = lo;
    }
    return total;
}

double invert_monotone(const RealFn& fn, double target, double lo, double hi, double x_tol) {
    if (!(lo < hi)) throw std::domain_error("invert_monotone: empty bracket");
    double flo = fn(lo);
    double fhi = fn(hi);
    const bool increasing = flo <= fhi;
    if (!increasing) {
        std::swap(flo, fhi);
    }
    const double scale = std::max({std::fabs(flo), std::fabs(fhi), 1.0});
    const double f_tol = 1e-12 * scale;
    if (target < flo - f_tol || target > fhi + f_tol)
        throw std::domain_error("invert_monotone: target_out_of_bracket");
    if (x_tol <= 0.0) x_tol = 1e-14 * std::max(std::fabs(lo), std::fabs(hi)) + 1e-300;
    double a = lo, b = hi;
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = fn(m);
        const double err = fm - target;
        if (std::fabs(err) <= f_tol && (b - a) <= x_tol) return m;
        if ((err < 0.0) == increasing)
            a = m;
        else
            b = m;
        if (b - a <= x_tol && std::fabs(fn(0.5 * (a + b)) - target) <= f_tol)
            return 0.5 * (a + b);
    }
    return 0.5 * (a + b);
}

CumulativeCache::CumulativeCache(RealFn density, double lo, double hi, std::size_t segments,
                                 double abs_tol)
    : density_(std::move(density)), lo_(lo), hi_(hi) {
    if (!(hi > lo) || segments < 2)
        throw std::invalid_argument("CumulativeCache: bad range or segment count");
    step_ = (hi - lo) / static_cast<double>(segments);
    values_.resize(segments + 1);
    values_[0] = 0.0;
    const double seg_tol = abs_tol / static_cast<double>(segments);
    for (std::size_t k = 0; k < segments; ++k) {
        const double a = lo + static_cast<double>(k) * step_;
        const double b = a + step_;
        values_[k + 1] = values_[k] + adaptive_simpson(density_, a, b, seg_tol);
    }
}

double CumulativeCache::operator()(double x) const {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return values_.back();
    const double u = (x - lo_) / step_;
    std::size_t k = static_cast<std::size_t>(u);
    if (k >= values_.size() - 1) k = values_.size() - 2;
    const double a = lo_ + static_cast<double>(k) * step_;
    if (x == a) return values_[k];
    return values_[k] + adaptive_simpson(density_, a, x, 1e-15);
}

double CumulativeCache::inverse(double y) const {
    if (y <= 0.0) return lo_;
    if (y >= values_.back()) return hi_;
    // bracket via the node table
    std::size_t lo_k = 0, hi_k = values_.size() - 1;
    while (hi_k - lo_k > 1) {
        const std::size_t mid = (lo_k + hi_k) / 2;
        if (values_[mid] <= y)
            lo_k = mid;
        else
            hi_k = mid;
    }
    double a = lo_ + static_cast<double>(lo_k) * step_;
    double b = a + step_;
    // Newton from the bracket midpoint, clamped to the bracket; the density
    // is the exact derivative so convergence is quadratic
    const double f_tol = 1e-15 * std::max(values_.back(), 1.0);
    double x = 0.5 * (a + b);
    for (int it = 0; it < 60; ++it) {
        const double err = (*this)(x)-y;
        if (std::fabs(err) <= f_tol) return x;
        if (err > 0.0)
            b = x;
        else
            a = x;
        const double d = density_(x);
        double next = d > 0.0 ? x - err / d : 0.5 * (a + b);
        if (!(next > a) || !(next < b)) next = 0.5 * (a + b);
        if (b - a <= 4e-16 * std::max(std::fabs(a), std::fabs(b)) + 1e-300) return 0.5 * (a + b);
        x = next;
    }
    return x;
}

double richardson_extrapolate(std::span<const double> h, std::span<const double> e) {
    const std::size_t n = h.size();
    if (n == 0 || e.size() != n)
        throw std::invalid_argument("richardson_extrapolate: need matching nonempty samples");
    std::vector<double> p(e.begin(), e.end());
    // Neville's scheme evaluated at h = 0
    for (std::size_t level = 1; level < n; ++level) {
        for (std::size_t i = 0; i + level < n; ++i) {
            const double hi = h[i];
            const double hj = h[i + level];
            p[i] = ((0.0 - hj) * p[i] - (0.0 - hi) * p[i + 1]) / (hi - hj);
        }
    }
    return p[0];
}

}  // namespace isoperim
