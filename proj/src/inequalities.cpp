#include "isoperim/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "isoperim/quadrature.hpp"

namespace isoperim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_ratio(double lhs, double rhs) {
    if (lhs == 0.0) return 0.0;
    if (rhs == 0.0) return kInf;
    return lhs / rhs;
}

// I(t), zero at the domain endpoints
double profile_or_zero(const Profile& p, double t) {
    if (!(t > 0.0)) return 0.0;
    if (t >= p.domain_end()) return 0.0;
    return p.value(t);
}
}  // namespace

InequalityReport InequalityReport::make(std::string name, double lhs, double rhs, double tol,
                                        double constant_used) {
    InequalityReport r;
    r.name = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.constant_used = constant_used;
    r.tolerance = tol;
    r.ratio = safe_ratio(lhs, rhs);
    r.pass = r.ratio <= 1.0 + tol;
    return r;
}

InequalityReport local_poincare(const SampleSpace& space, const Profile& profile,
                                const Field& f, const std::vector<std::uint8_t>& A,
                                double tol) {
    if (space.infinite_measure)
        throw std::runtime_error("infinite_measure: localized Poincare needs finite measure");
    const double m = median(f, space);
    Field shifted = f;
    for (double& v : shifted.values) v -= m;
    const double lhs = integral_abs_masked(space, shifted, A);
    const double muA = measure_of(space, A);
    const Field grad = gradient_modulus(space, f);
    const double grad_l1 = integral_abs(space, grad);
    double rhs;
    if (muA <= 0.0) {
        rhs = 0.0;
    } else {
        rhs = profile.phi(muA) * grad_l1;
    }
    auto rep = InequalityReport::make("local_poincare", lhs, rhs, tol,
                                      muA > 0.0 ? profile.phi(muA) : 0.0);
    rep.extras["mu_A"] = muA;
    rep.extras["median"] = m;
    return rep;
}

InequalityReport coarea_check(const SampleSpace& space, const Profile& profile,
                              const Field& f, double tol, std::size_t levels) {
    const bool infinite = space.infinite_measure;
    if (infinite && !f.compact_support)
        throw std::runtime_error("coarea_check: compact support required on infinite measure");

    // sorted values with prefix masses: mu({f > s}) by binary search
    std::vector<std::pair<double, double>> atoms(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        const double v = infinite ? std::fabs(f.values[i]) : f.values[i];
        atoms[i] = {v, space.weights[i]};
    }
    std::sort(atoms.begin(), atoms.end());
    std::vector<double> vals(space.size()), cum(space.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < space.size(); ++i) {
        vals[i] = atoms[i].first;
        acc += atoms[i].second;
        cum[i] = acc;
    }
    const double total = acc;
    auto mass_above = [&](double s) {
        // mass of {v > s}
        auto it = std::upper_bound(vals.begin(), vals.end(), s);
        const std::size_t k = static_cast<std::size_t>(it - vals.begin());
        return k == 0 ? total : total - cum[k - 1];
    };

    const double lo = infinite ? 0.0 : vals.front();
    const double hi = vals.back();
    double lhs = 0.0;
    if (hi > lo) {
        const double ds = (hi - lo) / static_cast<double>(levels);
        double prev = profile_or_zero(profile, mass_above(lo));
        for (std::size_t k = 1; k <= levels; ++k) {
            const double s = lo + ds * static_cast<double>(k);
            const double cur = profile_or_zero(profile, mass_above(s));
            lhs += 0.5 * (prev + cur) * ds;
            prev = cur;
        }
    }
    const double rhs = integral_abs(space, gradient_modulus(space, f));
    auto rep = InequalityReport::make("coarea", lhs, rhs, tol);
    rep.extras["range"] = hi - lo;
    return rep;
}

namespace {

struct UncertaintyData {
    double C = 0.0;       // C(w)
    double K1 = 0.0;      // additive gradient coefficient
    double lhs = 0.0;     // ||f||_p
    double grad_p = 0.0;  // ||grad f||_p
    double wf_p = 0.0;    // ||w^alpha f||_p
};

UncertaintyData uncertainty_setup(const SampleSpace& space, const Profile& profile,
                                  const Field& w, const TestFunction& tf, double p,
                                  double alpha, const WeightConfig& wcfg) {
    if (!(p >= 1.0)) throw std::invalid_argument("uncertainty: p >= 1 required");
    if (!(alpha > 0.0)) throw std::invalid_argument("uncertainty: alpha > 0 required");
    Field f = tf.field;
    if (space.infinite_measure) {
        if (!f.compact_support)
            throw std::runtime_error(
                "uncertainty: compact support required on infinite measure");
    } else {
        f = normalized(space, std::move(f), tf.normalization == Normalization::none
                                                ? Normalization::median_zero
                                                : tf.normalization);
    }
    UncertaintyData d;
    bool unbounded = false;
    d.C = isoperimetric_constant(w, space, profile, wcfg, nullptr, &unbounded);
    if (unbounded || std::isinf(d.C))
        throw std::runtime_error("weight_not_isoperimetric: C(w) is infinite");
    d.K1 = p == 1.0 ? 2.0 * d.C : d.C * (2.0 * p + 1.0);
    d.lhs = lp_norm(space, f, p);
    d.grad_p = lp_norm(space, gradient_modulus(space, f), p);
    Field wf;
    wf.values.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        wf.values[i] = std::pow(w.values[i], alpha) * f.values[i];
    d.wf_p = lp_norm(space, wf, p);
    return d;
}

}  // namespace

std::vector<double> default_r_grid(double r_balance, std::size_t count) {
    std::vector<double> grid;
    grid.reserve(count + 1);
    const double lo = r_balance * 1e-2, hi = r_balance * 1e2;
    for (std::size_t j = 0; j < count; ++j)
        grid.push_back(lo * std::pow(hi / lo, static_cast<double>(j) / (count - 1)));
    grid.push_back(r_balance);
    std::sort(grid.begin(), grid.end());
    return grid;
}

InequalityReport uncertainty_additive(const SampleSpace& space, const Profile& profile,
                                      const Field& w, const TestFunction& tf, double p,
                                      double alpha, std::vector<double> r_grid, double tol,
                                      const WeightConfig& wcfg) {
    const UncertaintyData d = uncertainty_setup(space, profile, w, tf, p, alpha, wcfg);
    const double r_bal =
        d.grad_p > 0.0 && d.wf_p > 0.0
            ? std::pow(d.wf_p / (d.K1 * d.grad_p), 1.0 / (1.0 + alpha))
            : 1.0;
    if (r_grid.empty()) r_grid = default_r_grid(r_bal);

    InequalityReport rep;
    rep.name = "uncertainty_additive";
    rep.tolerance = tol;
    rep.constant_used = d.K1;
    rep.lhs = d.lhs;
    rep.pass = true;
    double worst = 0.0;
    double best_rhs = kInf;
    for (double r : r_grid) {
        CurveRow row;
        row.r = r;
        row.lhs = d.lhs;
        row.rhs = d.K1 * r * d.grad_p + 2.0 * std::pow(r, -alpha) * d.wf_p;
        row.ratio = safe_ratio(row.lhs, row.rhs);
        best_rhs = std::min(best_rhs, row.rhs);
        worst = std::max(worst, row.ratio);
        if (row.ratio > 1.0 + tol) rep.pass = false;
        rep.curve.push_back(row);
    }
    rep.rhs = best_rhs;
    rep.ratio = worst;
    rep.extras["C_w"] = d.C;
    rep.extras["grad_norm"] = d.grad_p;
    rep.extras["weighted_norm"] = d.wf_p;
    rep.extras["r_balance"] = r_bal;
    return rep;
}

InequalityReport uncertainty_multiplicative(const SampleSpace& space, const Profile& profile,
                                            const Field& w, const TestFunction& tf, double p,
                                            double alpha, double tol,
                                            const WeightConfig& wcfg) {
    const UncertaintyData d = uncertainty_setup(space, profile, w, tf, p, alpha, wcfg);
    const double base = p == 1.0 ? 2.0 * d.C : d.C * (2.0 * p + 1.0);
    const double e = alpha / (alpha + 1.0);
    const double rhs =
        std::pow(base, e) * std::pow(d.grad_p, e) * std::pow(d.wf_p, 1.0 - e);
    auto rep = InequalityReport::make("uncertainty_multiplicative", d.lhs, rhs, tol,
                                      std::pow(base, e));

    // the balancing radius of the additive bound and the curve minimum there
    const double r_bal =
        d.grad_p > 0.0 && d.wf_p > 0.0
            ? std::pow(d.wf_p / (base * d.grad_p), 1.0 / (1.0 + alpha))
            : 1.0;
    auto grid = default_r_grid(r_bal);
    double best = kInf, best_r = r_bal;
    for (double r : grid) {
        const double v = d.K1 * r * d.grad_p + 2.0 * std::pow(r, -alpha) * d.wf_p;
        if (v < best) {
            best = v;
            best_r = r;
        }
    }
    rep.extras["C_w"] = d.C;
    rep.extras["r_balance"] = r_bal;
    rep.extras["best_additive_rhs"] = best;
    rep.extras["best_additive_r"] = best_r;
    return rep;
}

double hardy_operator(const StepFunction& sf, const Profile& profile, double t) {
    const double upper =
        profile.finite_measure() ? 0.5 * profile.domain_end() : sf.domain_end;
    if (!(t > 0.0) || t >= upper)
        throw std::domain_error("out_of_domain: hardy operator needs 0 < t < mu/2");
    double tail = 0.0;
    for (std::size_t i = 0; i < sf.values.size(); ++i) {
        if (sf.values[i] == 0.0) continue;
        const double lo = std::max(t, sf.breaks[i]);
        const double hi =
            std::min(i + 1 < sf.breaks.size() ? sf.breaks[i + 1] : sf.domain_end, upper);
        if (hi > lo) tail += sf.values[i] * profile.integral_inv(lo, hi);
    }
    return profile.value(t) / t * tail;
}

namespace {

// || h ||_Xbar for h(t) = v * omega(t) per step interval, X in {Lp, Lorentz}
double weighted_step_norm(const StepFunction& sf, const RealFn& omega, double upper,
                          const RiNormSpec& norm) {
    double p, q;
    switch (norm.family) {
        case RiNormSpec::Family::Lp:
            p = norm.p;
            q = norm.p;
            break;
        case RiNormSpec::Family::Lorentz:
            p = norm.p;
            q = norm.q;
            break;
        default:
            throw std::invalid_argument(
                "weighted_step_norm: Lp/Lorentz target norms only");
    }
    if (std::isinf(q)) {
        // sup v omega(t) t^{1/p} over a probe grid per interval
        double m = 0.0;
        for (std::size_t i = 0; i < sf.values.size(); ++i) {
            const double v = sf.values[i];
            if (v == 0.0) continue;
            const double lo = std::max(sf.breaks[i], upper * 1e-14);
            const double hi =
                std::min(i + 1 < sf.breaks.size() ? sf.breaks[i + 1] : sf.domain_end, upper);
            if (!(hi > lo)) continue;
            for (int j = 0; j <= 16; ++j) {
                const double t = lo * std::pow(hi / lo, j / 16.0);
                m = std::max(m, v * omega(t) * std::pow(t, 1.0 / p));
            }
        }
        return m;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < sf.values.size(); ++i) {
        const double v = sf.values[i];
        if (v == 0.0) continue;
        const double lo = sf.breaks[i];
        const double hi =
            std::min(i + 1 < sf.breaks.size() ? sf.breaks[i + 1] : sf.domain_end, upper);
        if (!(hi > lo)) continue;
        // Lp: (v omega)^q dt; Lorentz: (v omega t^{1/p})^q dt/t
        if (norm.family == RiNormSpec::Family::Lp) {
            auto g = [&](double t) { return std::pow(v * omega(t), q); };
            acc += lo == 0.0 ? integrate_graded_left(g, lo, hi, 1e-12)
                             : adaptive_simpson(g, lo, hi, 1e-12);
        } else {
            auto g = [&](double t) {
                return std::pow(v * omega(t) * std::pow(t, 1.0 / p), q) / t;
            };
            acc += lo == 0.0 ? integrate_graded_left(g, lo, hi, 1e-12)
                             : adaptive_simpson(g, lo, hi, 1e-12);
        }
    }
    return std::pow(acc, 1.0 / q);
}

double ri_norm_of_field(const SampleSpace& space, const Field& f, const RiNormSpec& norm) {
    return ri_norm(decreasing_rearrangement(f, space), norm);
}

}  // namespace

double sobolev_fundamental_constant(const Profile& profile, const RiNormSpec& norm) {
    const double upper = profile.finite_measure() ? 0.5 * profile.domain_end() : kInf;
    if (std::isinf(upper))
        throw std::invalid_argument("sobolev_fundamental_constant: finite measure only");
    StepFunction one;
    one.breaks = {0.0};
    one.values = {1.0};
    one.domain_end = upper;
    one.nonincreasing = true;
    auto omega = [&](double t) { return profile.value(t) / t; };
    return weighted_step_norm(one, omega, upper, norm);
}

HardyNormEstimate hardy_operator_norm_estimate(const Profile& profile, const RiNormSpec& norm,
                                               const std::vector<StepFunction>& probes) {
    HardyNormEstimate est;
    double c, alphaexp;
    const bool is_l1 =
        norm.family == RiNormSpec::Family::Lp && norm.p == 1.0 && norm.q == 1.0;
    if (profile.power_law(&c, &alphaexp) && is_l1 && alphaexp > 0.0 && alphaexp < 1.0) {
        // Fubini: int Q~f = (1/(1-alpha)) int f for f >= 0; alpha = 1 - 1/n
        est.value = 1.0 / (1.0 - alphaexp);
        est.closed_form = true;
        return est;
    }
    std::vector<StepFunction> family = probes;
    if (family.empty()) {
        const double upper =
            profile.finite_measure() ? 0.5 * profile.domain_end() : 1.0;
        for (double a : {0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 0.95}) {
            StepFunction chi;
            chi.breaks = {0.0, a * upper};
            chi.values = {1.0, 0.0};
            chi.domain_end = profile.finite_measure() ? profile.domain_end() : 10.0 * upper;
            chi.nonincreasing = true;
            family.push_back(chi);
        }
    }
    const double upper = profile.finite_measure() ? 0.5 * profile.domain_end() : kInf;
    double best = 0.0;
    bool any = false;
    for (const auto& f : family) {
        const double fn = ri_norm(f, norm);
        if (!(fn > 0.0)) continue;
        any = true;
        // || Q~ f ||_Xbar by quadrature on (0, upper)
        const double cap = std::isinf(upper) ? f.domain_end : upper;
        auto qf = [&](double t) { return hardy_operator(f, profile, t); };
        double qn;
        const double pp = norm.p;
        auto integrand = [&](double t) { return std::pow(std::fabs(qf(t)), pp); };
        qn = std::pow(integrate_graded_left(integrand, 0.0, cap * (1.0 - 1e-12), 1e-10),
                      1.0 / pp);
        best = std::max(best, qn / fn);
    }
    est.value = best;
    est.degenerate = !any;
    return est;
}

InequalityReport ri_sobolev(const SampleSpace& space, const Profile& profile,
                            const RiNormSpec& norm, const Field& f, double tol) {
    if (space.infinite_measure && !f.compact_support)
        throw std::runtime_error("ri_sobolev: compact support required on infinite measure");
    const StepFunction fstar = decreasing_rearrangement(f, space);
    const double upper =
        profile.finite_measure() ? 0.5 * profile.domain_end() : fstar.domain_end;
    auto omega = [&](double t) { return profile.value(t) / t; };
    const double lhs = weighted_step_norm(fstar, omega, upper, norm);

    const HardyNormEstimate qe = hardy_operator_norm_estimate(profile, norm);
    if (qe.degenerate)
        throw std::runtime_error("operator_norm_unavailable: empty probe family");
    const double grad_x = ri_norm_of_field(space, gradient_modulus(space, f), norm);
    double rhs = qe.value * grad_x;
    double cxi = 0.0;
    if (profile.finite_measure()) {
        cxi = sobolev_fundamental_constant(profile, norm);
        rhs += 2.0 * cxi / space.total_measure * integral_abs(space, f);
    }
    auto rep = InequalityReport::make("ri_sobolev", lhs, rhs, tol, qe.value);
    rep.note = qe.closed_form ? "operator norm: closed form" : "operator norm: probe estimate";
    rep.extras["hardy_norm"] = qe.value;
    rep.extras["c_XI"] = cxi;
    rep.extras["grad_norm_X"] = grad_x;
    return rep;
}

StrichartzReport strichartz_check(const SampleSpace& space, const Profile& profile,
                                  const RiNormSpec& norm, const Field& f, const Field& g,
                                  double tol, const WeightConfig& wcfg) {
    if (space.infinite_measure && !f.compact_support)
        throw std::runtime_error("strichartz_check: compact support required");
    const double gnorm = marcinkiewicz_field_norm(g, space, profile, wcfg);
    if (!(gnorm < kInf)) throw std::runtime_error("g_norm_infinite");

    StrichartzReport out;

    // (1) Hardy-Littlewood: ||fg||_X <= ||f* g*||_Xbar
    Field fg;
    fg.values.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        fg.values[i] = f.values[i] * g.values[i];
    const double lhs_fg = ri_norm_of_field(space, fg, norm);
    const StepFunction fstar = decreasing_rearrangement(f, space);
    const StepFunction gstar = decreasing_rearrangement(g, space);
    // product step function on merged breakpoints
    StepFunction prod;
    prod.nonincreasing = true;
    prod.domain_end = std::min(fstar.domain_end, gstar.domain_end);
    {
        std::vector<double> merged = fstar.breaks;
        merged.insert(merged.end(), gstar.breaks.begin(), gstar.breaks.end());
        std::sort(merged.begin(), merged.end());
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        for (double b : merged) {
            if (b >= prod.domain_end) break;
            const double v = fstar(b) * gstar(b);
            if (!prod.values.empty() && prod.values.back() == v) continue;
            prod.breaks.push_back(b);
            prod.values.push_back(v);
        }
    }
    const double fg_star_norm = ri_norm(prod, norm);
    out.hardy_littlewood =
        InequalityReport::make("strichartz_hardy_littlewood", lhs_fg, fg_star_norm, tol);

    // (2) extraction: ||f* g*|| <= ||g||_M(Phi) ||f* I(t)/t||
    const double upper =
        profile.finite_measure() ? 0.5 * profile.domain_end() : fstar.domain_end;
    auto omega = [&](double t) { return profile.value(t) / t; };
    double sobolev_lhs = weighted_step_norm(fstar, omega, upper, norm);
    if (profile.finite_measure()) {
        // finite case pays a factor 2 for restricting to (0, mu/2)
        sobolev_lhs *= 2.0;
    }
    out.extraction = InequalityReport::make("strichartz_extraction", fg_star_norm,
                                            gnorm * sobolev_lhs, tol, gnorm);

    // (3) Sobolev step
    const HardyNormEstimate qe = hardy_operator_norm_estimate(profile, norm);
    const double grad_x = ri_norm_of_field(space, gradient_modulus(space, f), norm);
    double sobolev_rhs = qe.value * grad_x;
    if (profile.finite_measure()) {
        const double cxi = sobolev_fundamental_constant(profile, norm);
        sobolev_rhs = 2.0 * (qe.value * grad_x +
                             2.0 * cxi / space.total_measure * integral_abs(space, f));
    }
    out.sobolev =
        InequalityReport::make("strichartz_sobolev", sobolev_lhs, sobolev_rhs, tol, qe.value);

    // composite
    out.composite = InequalityReport::make("strichartz_composite", lhs_fg,
                                           gnorm * sobolev_rhs, tol, gnorm * qe.value);
    out.composite.extras["g_norm"] = gnorm;
    out.composite.extras["hardy_norm"] = qe.value;
    out.pass = out.hardy_littlewood.pass && out.extraction.pass && out.sobolev.pass &&
               out.composite.pass;
    return out;
}

InequalityReport brezis_wainger_report(const SampleSpace& space, const Field& f,
                                       const Field& g) {
    const int n = space.spec.n;
    if (n < 2) throw std::invalid_argument("brezis_wainger: n >= 2 required");
    Field fg;
    fg.values.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        fg.values[i] = f.values[i] * g.values[i];
    const double lhs = lp_norm(space, fg, static_cast<double>(n));
    const double gl = ri_norm(decreasing_rearrangement(g, space),
                              RiNormSpec::LogLorentz(n, space.total_measure));
    const double grad_n =
        lp_norm(space, gradient_modulus(space, f), static_cast<double>(n));
    InequalityReport rep;
    rep.name = "brezis_wainger";
    rep.lhs = lhs;
    rep.rhs = gl * grad_n;
    rep.ratio = safe_ratio(lhs, rep.rhs);
    rep.report_only = true;
    rep.pass = true;
    rep.tolerance = kInf;
    rep.extras["log_lorentz_norm"] = gl;
    rep.extras["empirical_constant"] = rep.ratio;
    return rep;
}

TransferenceReport transference_check(const Profile& profile1, const Profile& profile2,
                                      const SampleSpace& space1, const Field& w,
                                      const TestFunction& tf, double tol,
                                      const WeightConfig& wcfg) {
    // I1 >= I2 on a probe grid
    const double cap = profile1.finite_measure()
                           ? 0.5 * std::min(profile1.domain_end(), profile2.domain_end())
                           : 1e4;
    for (int j = 1; j <= 512; ++j) {
        const double t = cap * 1e-8 * std::pow(1e8, j / 512.0);
        if (profile1.value(t) < profile2.value(t) * (1.0 - 1e-12))
            throw std::runtime_error("profiles_not_ordered: I1 >= I2 fails on the probe grid");
    }

    TransferenceReport out;
    const double n1 = marcinkiewicz_weight_norm(w, space1, profile1, wcfg);
    const double n2 = marcinkiewicz_weight_norm(w, space1, profile2, wcfg);
    out.norm_monotonicity =
        InequalityReport::make("transference_norm_monotonicity", n1, n2, 0.0);
    out.norm_monotonicity.note = "M(Phi1) norm vs M(Phi2) norm of 1/w";

    // multiplicative uncertainty with the Phi2-based constant on space1
    const UncertaintyData d = [&] {
        UncertaintyData dd;
        Field f = tf.field;
        if (!space1.infinite_measure)
            f = normalized(space1, std::move(f), tf.normalization == Normalization::none
                                                     ? Normalization::median_zero
                                                     : tf.normalization);
        else if (!f.compact_support)
            throw std::runtime_error("transference: compact support required");
        bool unbounded = false;
        dd.C = isoperimetric_constant(w, space1, profile2, wcfg, nullptr, &unbounded);
        if (unbounded) throw std::runtime_error("weight_not_isoperimetric");
        dd.lhs = lp_norm(space1, f, 1.0);
        dd.grad_p = lp_norm(space1, gradient_modulus(space1, f), 1.0);
        Field wf;
        wf.values.resize(space1.size());
        for (std::size_t i = 0; i < space1.size(); ++i)
            wf.values[i] = w.values[i] * f.values[i];
        dd.wf_p = lp_norm(space1, wf, 1.0);
        return dd;
    }();
    const double rhs = std::sqrt(2.0 * d.C * d.grad_p * d.wf_p);
    out.uncertainty =
        InequalityReport::make("transference_uncertainty", d.lhs, rhs, tol, 2.0 * d.C);
    out.uncertainty.extras["C_phi2"] = d.C;
    out.pass = out.norm_monotonicity.pass && out.uncertainty.pass;
    return out;
}

}  // namespace isoperim
