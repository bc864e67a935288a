#pragma once

// Discrete representations of the catalog metric measure spaces: weighted
// point clouds with a metric oracle, neighbor graph, and the measure /
// gradient-modulus / Minkowski-content primitives built on them.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace isoperim {

enum class SpaceKind { euclidean_box, half_plane, sphere, log_concave_product };

std::string to_string(SpaceKind k);

struct SpaceSpec {
    SpaceKind kind = SpaceKind::euclidean_box;
    int n = 2;                // dimension (box: coordinates; sphere: manifold dim)
    double halfwidth = 4.0;   // box / half-plane truncation halfwidth
    double p = 2.0;           // log-concave exponent, in [1, 2]
    double truncation = 0.0;  // log-concave truncation radius, 0 = automatic
    int resolution = 64;
    std::uint64_t seed = 0;

    std::string id() const;
};

struct Neighbor {
    std::int32_t index;
    double dist;
};

class SampleSpace {
public:
    SpaceSpec spec;
    int embed_dim = 0;
    std::vector<std::vector<double>> coords;  // SoA: coords[channel][point]
    std::vector<double> weights;
    double total_measure = 0.0;  // finite (truncated) mass
    bool infinite_measure = false;
    std::vector<std::vector<Neighbor>> neighbors;
    std::vector<std::uint8_t> boundary_layer;  // truncation boundary cells
    double grid_spacing = 0.0;                 // typical neighbor distance
    std::vector<double> cell_radius;  // sphere kinds: half extent along the meridian

    SpaceKind kind() const { return spec.kind; }
    std::size_t size() const { return weights.size(); }
    double coord(int channel, std::size_t i) const { return coords[channel][i]; }
    double distance(std::size_t i, std::size_t j) const;

    // latitude angle theta_1 in [-pi/2, pi/2]; sphere kinds only
    double latitude(std::size_t i) const;
};

// Deterministic in spec (grids carry no randomness; seed is recorded for
// provenance). Throws std::invalid_argument / std::runtime_error on the
// spec'd error conditions (invalid_params, truncation_insufficient).
SampleSpace build_space(const SpaceSpec& spec);

struct Field {
    std::vector<double> values;
    std::vector<double> grad;  // analytic |grad f| per point; empty = none
    bool compact_support = false;

    bool has_analytic_gradient() const { return !grad.empty(); }
};

Field constant_field(const SampleSpace& s, double c);

// masks & measures
using PointPred = std::function<bool(const SampleSpace&, std::size_t)>;
std::vector<std::uint8_t> make_mask(const SampleSpace& s, const PointPred& pred);
double measure_of(const SampleSpace& s, const std::vector<std::uint8_t>& mask);
double measure_of(const SampleSpace& s, const PointPred& pred);
double measure_where_leq(const SampleSpace& s, const Field& f, double r);
double measure_abs_where_gt(const SampleSpace& s, const Field& f, double t);

// field integrals against mu
double integral(const SampleSpace& s, const Field& f);            // int f
double integral_abs(const SampleSpace& s, const Field& f);        // int |f|
double integral_abs_pow(const SampleSpace& s, const Field& f, double p);
double lp_norm(const SampleSpace& s, const Field& f, double p);   // p = inf -> sup
double integral_abs_masked(const SampleSpace& s, const Field& f,
                           const std::vector<std::uint8_t>& mask);

// |grad f|: analytic values when present, otherwise the neighbor-graph
// difference quotient sup. Throws std::runtime_error(missing_neighbors) for
// isolated points in finite-difference mode.
Field gradient_modulus(const SampleSpace& s, const Field& f);

struct MinkowskiResult {
    double content = 0.0;
    bool degenerate = false;  // nonmonotone extrapolation; value is the last estimate
    std::vector<double> estimates;
};

// Richardson-extrapolated (mu(A_h) - mu(A))/h with A_h = {d(x, A) < h}.
// h_seq must be decreasing, with at least 3 entries, all >= 2*grid_spacing.
MinkowskiResult minkowski_content(const SampleSpace& s, const std::vector<std::uint8_t>& A,
                                  std::span<const double> h_seq);

// default h sequence {16, 8, 4} * grid_spacing
std::vector<double> default_h_sequence(const SampleSpace& s);

// Upsilon_M(r) = mu(B(r)); euclidean_box uses the ambient R^n formula,
// sphere the normalized geodesic cap measure. Throws for other kinds.
double ball_measure(const SampleSpace& s, double r);

}  // namespace isoperim
