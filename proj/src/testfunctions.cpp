#include "isoperim/testfunctions.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "isoperim/rearrange.hpp"

namespace isoperim {

namespace {
constexpr double kPi = std::numbers::pi;

bool euclidean_like(const SampleSpace& s) {
    return s.kind() == SpaceKind::euclidean_box || s.kind() == SpaceKind::half_plane ||
           s.kind() == SpaceKind::log_concave_product;
}

bool vanishes_on_boundary(const SampleSpace& s, const Field& f) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.boundary_layer[i] && f.values[i] != 0.0) return false;
    return true;
}
}  // namespace

Field radial_tent(const SampleSpace& s, double R, double cx, double cy, double cz) {
    if (!euclidean_like(s))
        throw std::invalid_argument("radial_tent: Euclidean kinds only");
    if (!(R > 0.0)) throw std::invalid_argument("radial_tent: R > 0 required");
    const double c[3] = {cx, cy, cz};
    Field f;
    f.values.resize(s.size());
    f.grad.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        double d2 = 0.0;
        for (int ch = 0; ch < s.embed_dim; ++ch) {
            const double d = s.coord(ch, i) - c[ch];
            d2 += d * d;
        }
        const double d = std::sqrt(d2);
        f.values[i] = d < R ? 1.0 - d / R : 0.0;
        f.grad[i] = d < R ? 1.0 / R : 0.0;
    }
    f.compact_support = vanishes_on_boundary(s, f);
    return f;
}

Field geodesic_tent(const SampleSpace& s, double R) {
    if (s.kind() != SpaceKind::sphere)
        throw std::invalid_argument("geodesic_tent: sphere kinds only");
    Field f;
    f.values.resize(s.size());
    f.grad.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        // geodesic distance from the pole (0, ..., 1)
        const double z = s.coord(s.embed_dim - 1, i);
        const double d = std::acos(std::max(-1.0, std::min(1.0, z)));
        f.values[i] = d < R ? 1.0 - d / R : 0.0;
        f.grad[i] = d < R ? 1.0 / R : 0.0;
    }
    return f;
}

Field coordinate_field(const SampleSpace& s, int axis) {
    if (axis < 0 || axis >= s.embed_dim)
        throw std::invalid_argument("coordinate_field: axis out of range");
    Field f;
    f.values = s.coords[axis];
    f.grad.resize(s.size());
    if (s.kind() == SpaceKind::sphere) {
        // |grad of the embedded coordinate| = sqrt(1 - x_axis^2) on the sphere
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double v = f.values[i];
            f.grad[i] = std::sqrt(std::max(0.0, 1.0 - v * v));
        }
    } else {
        for (std::size_t i = 0; i < s.size(); ++i) f.grad[i] = 1.0;
    }
    return f;
}

Field gaussian_bump(const SampleSpace& s, double sigma, double cx, double cy) {
    if (!euclidean_like(s))
        throw std::invalid_argument("gaussian_bump: Euclidean kinds only");
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_bump: sigma > 0 required");
    const double c[2] = {cx, cy};
    Field f;
    f.values.resize(s.size());
    f.grad.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        double d2 = 0.0;
        for (int ch = 0; ch < s.embed_dim && ch < 2; ++ch) {
            const double d = s.coord(ch, i) - c[ch];
            d2 += d * d;
        }
        const double v = std::exp(-0.5 * d2 / (sigma * sigma));
        f.values[i] = v;
        f.grad[i] = std::sqrt(d2) / (sigma * sigma) * v;
    }
    return f;
}

Field mollified_indicator(const SampleSpace& s, double a, double ramp) {
    if (s.kind() != SpaceKind::log_concave_product && s.kind() != SpaceKind::euclidean_box)
        throw std::invalid_argument("mollified_indicator: line/box kinds only");
    if (!(a > 0.0) || !(ramp > 0.0))
        throw std::invalid_argument("mollified_indicator: a, ramp > 0 required");
    Field f;
    f.values.resize(s.size());
    f.grad.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double d = std::fabs(s.coord(0, i));
        if (d <= a) {
            f.values[i] = 1.0;
            f.grad[i] = 0.0;
        } else if (d < a + ramp) {
            f.values[i] = 1.0 - (d - a) / ramp;
            f.grad[i] = 1.0 / ramp;
        } else {
            f.values[i] = 0.0;
            f.grad[i] = 0.0;
        }
    }
    f.compact_support = vanishes_on_boundary(s, f);
    return f;
}

Field cap_mollifier(const SampleSpace& s, double r0, double ramp) {
    if (s.kind() != SpaceKind::sphere)
        throw std::invalid_argument("cap_mollifier: sphere kinds only");
    if (!(r0 > 0.0) || !(ramp > 0.0) || r0 + ramp >= kPi)
        throw std::invalid_argument("cap_mollifier: need 0 < r0, r0 + ramp < pi");
    Field f;
    f.values.resize(s.size());
    f.grad.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double z = s.coord(s.embed_dim - 1, i);
        const double d = std::acos(std::max(-1.0, std::min(1.0, z)));
        if (d <= r0) {
            f.values[i] = 1.0;
            f.grad[i] = 0.0;
        } else if (d < r0 + ramp) {
            f.values[i] = 1.0 - (d - r0) / ramp;
            f.grad[i] = 1.0 / ramp;
        } else {
            f.values[i] = 0.0;
            f.grad[i] = 0.0;
        }
    }
    return f;
}

Field normalized(const SampleSpace& s, Field f, Normalization n) {
    if (n == Normalization::none) return f;
    if (s.infinite_measure)
        throw std::runtime_error(
            "infinite_measure_space: normalization shifts need finite total measure");
    double shift = 0.0;
    if (n == Normalization::median_zero) {
        shift = median(f, s);
    } else {
        shift = integral(s, f) / s.total_measure;
    }
    for (double& v : f.values) v -= shift;
    f.compact_support = false;  // a shift destroys compact support
    return f;
}

}  // namespace isoperim
