#pragma once

// Shared closed forms and quadrature caches for the catalog geometries:
// unit-ball volumes, sphere band densities and their cumulative Phi_n, and
// the one-dimensional log-concave measures mu_Psi.

#include "isoperim/quadrature.hpp"

namespace isoperim::catalog {

// beta_n: Lebesgue volume of the unit ball in R^n.
double unit_ball_volume(int n);

// omega_n: n-dimensional Hausdorff measure of S^n.
double sphere_surface(int n);

// phi_n(theta) = (omega_{n-1}/omega_n) cos^{n-1}(theta) on [-pi/2, pi/2].
double sphere_band_density(int n, double theta);

// Phi_n(theta): cumulative of phi_n from -pi/2; quadrature cache, total 1.
const CumulativeCache& sphere_latitude_cdf(int n);

struct LogConcaveMeasure {
    double p = 2.0;
    double radius = 0.0;   // quadrature support [-radius, radius]
    double Z = 0.0;        // normalizing constant, computed by quadrature
    CumulativeCache H;     // distribution function on [-radius, radius]

    double density(double x) const;  // Z^{-1} exp(-|x|^p / p)
    double cdf(double x) const { return H(x); }
    double quantile(double t) const { return H.inverse(t); }
};

// default quadrature radius for exponent p (negligible tail mass)
double default_log_concave_radius(double p);

// Cached by (p, radius); radius <= 0 selects the default.
const LogConcaveMeasure& log_concave_measure(double p, double radius = 0.0);

}  // namespace isoperim::catalog
