#pragma once

// Isoperimetric weights: the level-set constant C(w), the Marcinkiewicz
// characterization of 1/w, weight construction from an admissible g, and the
// ball-growth (Dall'Ara-Trevisan) comparison.

#include <functional>
#include <string>
#include <vector>

#include "isoperim/profile.hpp"
#include "isoperim/rearrange.hpp"
#include "isoperim/space.hpp"

namespace isoperim {

struct WeightConfig {
    // Level sets holding fewer cells than this are below the resolution of
    // the discretization and are excluded from sup-type evaluations.
    std::size_t min_level_cells = 64;
    std::size_t fill_grid = 256;  // log-spaced fill r values
};

struct WeightAnalysis {
    double C_iso = 0.0;
    double M_norm = 0.0;
    bool censored = false;   // some level sets touched the truncation boundary;
                             // C_iso is a lower bound of the truncated sup
    bool unbounded = false;  // no uncensored informative level set: C(w) = +inf
    double dt_constant = -1.0;  // sup mu({w<=r})/Upsilon(r); -1 if unsupported kind
    bool dt_unbounded = false;
    std::vector<double> level_grid;
};

// sup over the level grid of Phi(mu({w <= r}))/r. Flags as in WeightAnalysis.
double isoperimetric_constant(const Field& w, const SampleSpace& space,
                              const Profile& profile, const WeightConfig& cfg = {},
                              bool* censored = nullptr, bool* unbounded = nullptr);

// ||1/w||_{M(Phi)} evaluated through the rearrangement route, over the same
// admissibility window.
double marcinkiewicz_weight_norm(const Field& w, const SampleSpace& space,
                                 const Profile& profile, const WeightConfig& cfg = {});

// Windowed M(Phi) norm of an arbitrary field g (Strichartz multipliers).
double marcinkiewicz_field_norm(const Field& g, const SampleSpace& space,
                                const Profile& profile, const WeightConfig& cfg = {});

// sup mu({w <= r}) / Upsilon_M(r); requires a radius-determined-ball kind.
double dt_constant(const Field& w, const SampleSpace& space, const WeightConfig& cfg = {},
                   bool* unbounded = nullptr);

WeightAnalysis analyze_weight(const Field& w, const SampleSpace& space,
                              const Profile& profile, const WeightConfig& cfg = {});

// Strict-level-set variant sup Phi(mu({w < r}))/r, for the closed/strict
// equivalence check.
double isoperimetric_constant_strict(const Field& w, const SampleSpace& space,
                                     const Profile& profile, const WeightConfig& cfg = {});

struct RadialDescriptor {
    std::string name;
    std::function<double(const SampleSpace&, std::size_t)> rho;
    std::function<double(double)> sublevel_measure;  // m(s) = mu({rho <= s})
};

// The canonical radial scheme per catalog kind: |x| with beta_n |x|^n on R^n,
// |x| with pi s^2 / 2 on the half plane, theta_1 with Phi_n on S^n (n >= 2),
// x_1 with H on the log-concave line.
RadialDescriptor default_radial(const SampleSpace& space);

// Experimental half-plane scheme with the Euler-beta exponent-k sublevel
// formula; exposed without an equimeasurability contract.
RadialDescriptor half_plane_k_radial(double k);

// w(x) = 1 / g*(m(rho(x))). g must be positive a.e. with sup g* Phi finite.
Field construct_weight(const SampleSpace& space, const StepFunction& g,
                       const RadialDescriptor& radial, const Profile& profile);

// g(t) = I(min{t, mu/2}) / min{t, mu/2} sampled on a log grid; nonincreasing
// with sup g Phi = 1 at the grid points.
StepFunction prototype_g(const Profile& profile, double domain_total = 0.0,
                         std::size_t grid_points = 4096);

struct NecessaryConditionRow {
    double t = 0.0;
    double measure = 0.0;
    double content = 0.0;
    double ratio = 0.0;  // mu({w<=t}) / (t * content)
    bool excluded = false;
};

struct NecessaryConditionReport {
    std::vector<NecessaryConditionRow> rows;
    double sup_ratio = 0.0;  // over included rows
};

NecessaryConditionReport necessary_condition_check(const Field& w, const SampleSpace& space,
                                                   std::vector<double> t_grid);

}  // namespace isoperim
