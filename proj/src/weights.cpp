#include "isoperim/weights.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "isoperim/catalog.hpp"

namespace isoperim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Level sets {w <= r} over attained values, ascending, with prefix masses,
// cell counts, and truncation-censoring marks.
struct LevelScan {
    std::vector<double> r;
    std::vector<double> mass;       // mu({w <= r})
    std::vector<double> mass_prev;  // mu({w < r})
    std::vector<std::size_t> count;
    std::vector<std::uint8_t> censored;
    double total = 0.0;
};

LevelScan scan_levels(const Field& w, const SampleSpace& s) {
    struct Atom {
        double v, wt;
        std::uint8_t bdry;
    };
    std::vector<Atom> atoms(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(w.values[i] > 0.0))
            throw std::runtime_error("nonpositive_weight: w must be positive everywhere");
        atoms[i] = {w.values[i], s.weights[i], s.boundary_layer[i]};
    }
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.v < b.v; });

    LevelScan scan;
    const bool censoring = s.infinite_measure;
    double cum = 0.0;
    std::size_t cnt = 0;
    bool touched_boundary = false;
    std::size_t i = 0;
    while (i < atoms.size()) {
        const double v = atoms[i].v;
        const double mass_before = cum;
        while (i < atoms.size() && atoms[i].v == v) {
            cum += atoms[i].wt;
            touched_boundary = touched_boundary || (censoring && atoms[i].bdry);
            ++cnt;
            ++i;
        }
        scan.r.push_back(v);
        scan.mass.push_back(cum);
        scan.mass_prev.push_back(mass_before);
        scan.count.push_back(cnt);
        scan.censored.push_back(touched_boundary ? 1 : 0);
    }
    scan.total = cum;
    return scan;
}

double phi_capped(const Profile& profile, double t) {
    if (profile.finite_measure()) t = std::min(t, profile.domain_end());
    return profile.phi(t);
}

}  // namespace

double isoperimetric_constant(const Field& w, const SampleSpace& space, const Profile& profile,
                              const WeightConfig& cfg, bool* censored, bool* unbounded) {
    const LevelScan scan = scan_levels(w, space);
    double sup = 0.0;
    bool any_admissible = false;
    bool any_censored = false;
    for (std::size_t k = 0; k < scan.r.size(); ++k) {
        if (scan.censored[k]) {
            any_censored = true;
            continue;
        }
        if (scan.count[k] < cfg.min_level_cells) continue;
        any_admissible = true;
        sup = std::max(sup, phi_capped(profile, scan.mass[k]) / scan.r[k]);
    }
    // log-spaced fill between min and max weight (the sup lives at attained
    // values; the fill grid only densifies the reported curve)
    if (!scan.r.empty() && cfg.fill_grid > 0) {
        const double lo = scan.r.front(), hi = scan.r.back();
        if (hi > lo) {
            for (std::size_t j = 1; j < cfg.fill_grid; ++j) {
                const double r =
                    lo * std::pow(hi / lo, static_cast<double>(j) / cfg.fill_grid);
                auto it = std::upper_bound(scan.r.begin(), scan.r.end(), r);
                if (it == scan.r.begin()) continue;
                const std::size_t k = static_cast<std::size_t>(it - scan.r.begin()) - 1;
                if (scan.censored[k] || scan.count[k] < cfg.min_level_cells) continue;
                sup = std::max(sup, phi_capped(profile, scan.mass[k]) / r);
            }
        }
    }
    if (censored) *censored = any_censored;
    if (unbounded) *unbounded = !any_admissible && any_censored;
    if (!any_admissible && any_censored) return kInf;
    return sup;
}

double isoperimetric_constant_strict(const Field& w, const SampleSpace& space,
                                     const Profile& profile, const WeightConfig& cfg) {
    const LevelScan scan = scan_levels(w, space);
    double sup = 0.0;
    for (std::size_t k = 0; k < scan.r.size(); ++k) {
        if (scan.censored[k]) continue;
        if (scan.count[k] < cfg.min_level_cells) continue;
        if (scan.mass_prev[k] <= 0.0) continue;
        sup = std::max(sup, phi_capped(profile, scan.mass_prev[k]) / scan.r[k]);
    }
    return sup;
}

namespace {

// Windowed sup of W*(t) Phi(t): the rearrangement route shared by the weight
// norm and the Strichartz multiplier norm.
double windowed_marcinkiewicz(const std::vector<double>& values, const SampleSpace& space,
                              const Profile& profile, const WeightConfig& cfg) {
    struct Atom {
        double v, wt;
        std::uint8_t bdry;
    };
    std::vector<Atom> atoms(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        atoms[i] = {std::fabs(values[i]), space.weights[i], space.boundary_layer[i]};
    // descending |value|; for W = 1/w this is ascending w, so truncation
    // censoring accumulates in the same direction as the level-set route
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.v > b.v; });

    const bool censor = space.infinite_measure;
    double sup = 0.0;
    double cum = 0.0;
    std::size_t cnt = 0;
    bool touched = false;
    std::size_t i = 0;
    while (i < atoms.size()) {
        const double v = atoms[i].v;
        while (i < atoms.size() && atoms[i].v == v) {
            cum += atoms[i].wt;
            touched = touched || (censor && atoms[i].bdry);
            ++cnt;
            ++i;
        }
        // interval of W* with value v has right endpoint cum
        if (censor && touched) continue;
        if (cnt < cfg.min_level_cells) continue;
        if (v == 0.0) continue;
        sup = std::max(sup, v * phi_capped(profile, cum));
    }
    return sup;
}

}  // namespace

double marcinkiewicz_weight_norm(const Field& w, const SampleSpace& space,
                                 const Profile& profile, const WeightConfig& cfg) {
    std::vector<double> recip(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        if (!(w.values[i] > 0.0))
            throw std::runtime_error("nonpositive_weight: w must be positive everywhere");
        recip[i] = 1.0 / w.values[i];
    }
    return windowed_marcinkiewicz(recip, space, profile, cfg);
}

double marcinkiewicz_field_norm(const Field& g, const SampleSpace& space,
                                const Profile& profile, const WeightConfig& cfg) {
    return windowed_marcinkiewicz(g.values, space, profile, cfg);
}

double dt_constant(const Field& w, const SampleSpace& space, const WeightConfig& cfg,
                   bool* unbounded) {
    if (space.kind() != SpaceKind::euclidean_box && space.kind() != SpaceKind::sphere)
        throw std::runtime_error("unsupported_kind: ball growth needs radius-determined balls");
    const LevelScan scan = scan_levels(w, space);
    double sup = 0.0;
    bool any_admissible = false;
    bool any_censored = false;
    for (std::size_t k = 0; k < scan.r.size(); ++k) {
        if (scan.censored[k]) {
            any_censored = true;
            continue;
        }
        if (scan.count[k] < cfg.min_level_cells) continue;
        any_admissible = true;
        sup = std::max(sup, scan.mass[k] / ball_measure(space, scan.r[k]));
    }
    if (unbounded) *unbounded = !any_admissible && any_censored;
    if (!any_admissible && any_censored) return kInf;
    return sup;
}

WeightAnalysis analyze_weight(const Field& w, const SampleSpace& space, const Profile& profile,
                              const WeightConfig& cfg) {
    WeightAnalysis a;
    a.C_iso = isoperimetric_constant(w, space, profile, cfg, &a.censored, &a.unbounded);
    a.M_norm = marcinkiewicz_weight_norm(w, space, profile, cfg);
    if (space.kind() == SpaceKind::euclidean_box || space.kind() == SpaceKind::sphere)
        a.dt_constant = dt_constant(w, space, cfg, &a.dt_unbounded);
    const LevelScan scan = scan_levels(w, space);
    a.level_grid = scan.r;
    return a;
}

RadialDescriptor default_radial(const SampleSpace& space) {
    RadialDescriptor rd;
    switch (space.kind()) {
        case SpaceKind::euclidean_box: {
            const int n = space.spec.n;
            const double beta = catalog::unit_ball_volume(n);
            rd.name = "euclidean_norm";
            rd.rho = [](const SampleSpace& s, std::size_t i) {
                double d2 = 0.0;
                for (int ch = 0; ch < s.embed_dim; ++ch) d2 += s.coord(ch, i) * s.coord(ch, i);
                return std::sqrt(d2);
            };
            rd.sublevel_measure = [beta, n](double s) { return beta * std::pow(s, n); };
            return rd;
        }
        case SpaceKind::half_plane: {
            rd.name = "half_plane_norm";
            rd.rho = [](const SampleSpace& s, std::size_t i) {
                const double x = s.coord(0, i), y = s.coord(1, i);
                return std::sqrt(x * x + y * y);
            };
            rd.sublevel_measure = [](double s) { return 0.5 * kPi * s * s; };
            return rd;
        }
        case SpaceKind::sphere: {
            if (space.spec.n < 2)
                throw std::invalid_argument(
                    "invalid_params: the sphere weight scheme needs n >= 2");
            const int n = space.spec.n;
            rd.name = "latitude";
            rd.rho = [](const SampleSpace& s, std::size_t i) { return s.latitude(i); };
            rd.sublevel_measure = [n](double s) { return catalog::sphere_latitude_cdf(n)(s); };
            return rd;
        }
        case SpaceKind::log_concave_product: {
            const double p = space.spec.p;
            rd.name = "first_coordinate";
            rd.rho = [](const SampleSpace& s, std::size_t i) { return s.coord(0, i); };
            rd.sublevel_measure = [p](double s) {
                return catalog::log_concave_measure(p).cdf(s);
            };
            return rd;
        }
    }
    throw std::invalid_argument("invalid_params: unknown space kind");
}

RadialDescriptor half_plane_k_radial(double k) {
    if (!(k > 0.0)) throw std::invalid_argument("invalid_params: k > 0 required");
    RadialDescriptor rd;
    rd.name = "half_plane_k";
    rd.rho = [](const SampleSpace& s, std::size_t i) {
        const double x = s.coord(0, i), y = s.coord(1, i);
        return std::sqrt(x * x + y * y);
    };
    const double coeff = std::beta(0.5 * (k + 1.0), 0.5) / (k + 1.0);
    rd.sublevel_measure = [coeff, k](double s) { return coeff * std::pow(s, k + 2.0); };
    return rd;
}

namespace {

// g extended past its sampled domain by its final (smallest) value
double eval_g(const StepFunction& g, double t) {
    if (t >= g.domain_end) return g.values.back();
    return g(t);
}

}  // namespace

Field construct_weight(const SampleSpace& space, const StepFunction& g,
                       const RadialDescriptor& radial, const Profile& profile) {
    if (!g.nonincreasing)
        throw std::invalid_argument("construct_weight: g must be given as g* (nonincreasing)");
    for (double v : g.values)
        if (!(v > 0.0))
            throw std::runtime_error("g_violates_condition: g must be positive a.e.");

    // reject g with sup g* Phi diverging at 0 within the grid resolution:
    // the maximizer sitting on the first positive breakpoint and dwarfing the
    // bulk indicates an unbounded sup
    {
        double sup = 0.0, first = 0.0;
        std::vector<double> samples;
        for (std::size_t i = 0; i + 1 < g.breaks.size(); ++i) {
            const double t = g.breaks[i + 1];
            const double s = g.values[i] * phi_capped(profile, t);
            if (i == 0) first = s;
            sup = std::max(sup, s);
            samples.push_back(s);
        }
        if (!samples.empty()) {
            std::nth_element(samples.begin(), samples.begin() + samples.size() / 2,
                             samples.end());
            const double med = samples[samples.size() / 2];
            if (first == sup && sup > 10.0 * med)
                throw std::runtime_error(
                    "g_violates_condition: sup g* Phi diverges within the grid resolution");
        }
    }

    Field w;
    w.values.resize(space.size());
    double prev_m = -kInf;
    std::vector<std::pair<double, double>> rho_sorted(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double rho = radial.rho(space, i);
        const double m = radial.sublevel_measure(rho);
        rho_sorted[i] = {rho, m};
        w.values[i] = 1.0 / eval_g(g, m);
    }
    std::sort(rho_sorted.begin(), rho_sorted.end());
    for (const auto& [rho, m] : rho_sorted) {
        if (m < prev_m - 1e-12 * std::fabs(prev_m))
            throw std::runtime_error("nonmonotone_m: sublevel measure must be nondecreasing");
        prev_m = std::max(prev_m, m);
    }
    return w;
}

StepFunction prototype_g(const Profile& profile, double domain_total, std::size_t grid_points) {
    double cap;  // argument range of g
    if (profile.finite_measure()) {
        cap = profile.domain_end();
    } else {
        if (!(domain_total > 0.0))
            throw std::invalid_argument(
                "prototype_g: infinite-measure profiles need the truncated total");
        cap = domain_total;
    }
    const double half = profile.finite_measure() ? 0.5 * profile.domain_end() : kInf;
    auto g_of = [&](double t) {
        const double m = std::min(t, half);
        return profile.value(m) / m;
    };

    StepFunction g;
    g.nonincreasing = true;
    g.domain_end = cap;
    const double t_min = cap * 1e-8;
    // log-spaced grid; each interval carries its right-endpoint value so that
    // sup g Phi is attained exactly at the breakpoints
    g.breaks.push_back(0.0);
    double prev_value = kInf;
    for (std::size_t j = 0; j < grid_points; ++j) {
        const double t =
            t_min * std::pow(cap / t_min, static_cast<double>(j + 1) / grid_points);
        double v = g_of(std::min(t, cap * (1.0 - 1e-15)));
        v = std::min(v, prev_value);  // guard monotonicity against cache jitter
        if (j == 0) {
            g.values.push_back(v);
        } else {
            if (g.values.back() == v) continue;
            g.breaks.push_back(t_min *
                               std::pow(cap / t_min, static_cast<double>(j) / grid_points));
            g.values.push_back(v);
        }
        prev_value = v;
    }
    return g;
}

NecessaryConditionReport necessary_condition_check(const Field& w, const SampleSpace& space,
                                                   std::vector<double> t_grid) {
    NecessaryConditionReport rep;
    const auto h_seq = default_h_sequence(space);
    for (double t : t_grid) {
        NecessaryConditionRow row;
        row.t = t;
        auto mask = make_mask(space, [&](const SampleSpace&, std::size_t i) {
            return w.values[i] <= t;
        });
        row.measure = measure_of(space, mask);
        if (row.measure <= 0.0) {
            row.excluded = true;
            rep.rows.push_back(row);
            continue;
        }
        const auto mk = minkowski_content(space, mask, h_seq);
        row.content = mk.content;
        if (!(mk.content > 0.0) || mk.degenerate) {
            row.excluded = true;  // degenerate_level_set
            rep.rows.push_back(row);
            continue;
        }
        row.ratio = row.measure / (t * row.content);
        rep.sup_ratio = std::max(rep.sup_ratio, row.ratio);
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace isoperim
