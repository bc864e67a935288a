#pragma once

// The analytic Lipschitz test family: radial tents, bumps, coordinate
// functions and mollified indicators, each with its analytic gradient
// modulus, plus the normalization shifts the theorems require.

#include <string>

#include "isoperim/space.hpp"

namespace isoperim {

enum class Normalization { none, median_zero, mean_zero };

struct TestFunction {
    std::string name;
    Field field;
    Normalization normalization = Normalization::none;
};

// (1 - |x - c| / R)_+ on the Euclidean kinds; center defaults to the origin.
Field radial_tent(const SampleSpace& s, double R, double cx = 0.0, double cy = 0.0,
                  double cz = 0.0);

// (1 - d(x, pole) / R)_+ with geodesic distance from the north pole.
Field geodesic_tent(const SampleSpace& s, double R);

// coordinate function x_axis; on spheres the embedded coordinate (sin(theta_1)
// for the latitude axis).
Field coordinate_field(const SampleSpace& s, int axis);

// exp(-|x - c|^2 / (2 sigma^2)) on Euclidean kinds / the line.
Field gaussian_bump(const SampleSpace& s, double sigma, double cx = 0.0, double cy = 0.0);

// line only: 1 on [-a, a], linear ramp to 0 over `ramp`.
Field mollified_indicator(const SampleSpace& s, double a, double ramp);

// sphere: 1 on the cap of geodesic radius r0, linear ramp over `ramp`.
Field cap_mollifier(const SampleSpace& s, double r0, double ramp);

// Shift by the median / weighted mean (finite-measure spaces); gradient and
// support flags are preserved where valid.
Field normalized(const SampleSpace& s, Field f, Normalization n);

}  // namespace isoperim
