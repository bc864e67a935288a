#pragma once

// Quadrature and root-finding plumbing shared by the profile and space layers.

#include <functional>
#include <span>
#include <vector>

namespace isoperim {

using RealFn = std::function<double(double)>;

// Adaptive Simpson with absolute tolerance.
double adaptive_simpson(const RealFn& f, double a, double b, double abs_tol,
                        int max_depth = 48);

// Integral of f over (a, b] where f may have an integrable singularity at a:
// the interval is split geometrically toward a and each piece integrated
// adaptively, until the pieces' contributions drop below abs_tol.
double integrate_graded_left(const RealFn& f, double a, double b, double abs_tol);

// Bisection for monotone fn on [lo, hi]; |fn(x) - target| is driven below
// abs_tol (in x this is resolution-limited, we stop when the bracket width
// falls under x_tol as well). Throws std::domain_error if target is outside
// [fn(lo), fn(hi)] (or the reverse for decreasing fn).
double invert_monotone(const RealFn& fn, double target, double lo, double hi,
                       double x_tol = 0.0);

// Cumulative integral cache for a smooth positive density: node values of
// F(x) = integral from `lo` of f, built segment-by-segment with adaptive
// Simpson, plus local correction for off-node evaluation.
class CumulativeCache {
public:
    CumulativeCache() = default;
    CumulativeCache(RealFn density, double lo, double hi, std::size_t segments,
                    double abs_tol = 1e-12);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double total() const { return values_.back(); }

    // F(x); clamped to [lo, hi].
    double operator()(double x) const;

    // F^{-1}(y) by node bracket + bisection on the local correction.
    double inverse(double y) const;

private:
    RealFn density_;
    double lo_ = 0.0, hi_ = 0.0, step_ = 0.0;
    std::vector<double> values_;  // F at nodes lo + k*step
};

// Polynomial extrapolation (Neville) of samples (h_i, e_i) to h = 0.
double richardson_extrapolate(std::span<const double> h, std::span<const double> e);

}  // namespace isoperim
