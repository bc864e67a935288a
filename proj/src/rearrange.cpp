#include "isoperim/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isoperim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

double StepFunction::operator()(double t) const {
    if (t < 0.0 || breaks.empty()) return 0.0;
    if (t >= domain_end) return 0.0;
    auto it = std::upper_bound(breaks.begin(), breaks.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - breaks.begin());
    return k == 0 ? 0.0 : values[k - 1];
}

double StepFunction::integral(double a, double b) const {
    a = std::max(a, 0.0);
    b = std::min(b, domain_end);
    if (!(b > a) || breaks.empty()) return 0.0;
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double lo = std::max(a, breaks[i]);
        const double hi = std::min(b, i + 1 < breaks.size() ? breaks[i + 1] : domain_end);
        if (hi > lo) {
            if (std::isinf(hi)) return values[i] != 0.0 ? kInf * values[i] : acc;
            acc += values[i] * (hi - lo);
        }
    }
    return acc;
}

void StepFunction::validate() const {
    if (breaks.size() != values.size())
        throw std::logic_error("StepFunction: breaks/values size mismatch");
    if (breaks.empty()) return;
    if (breaks.front() != 0.0) throw std::logic_error("StepFunction: breaks must start at 0");
    for (std::size_t i = 1; i < breaks.size(); ++i)
        if (!(breaks[i] > breaks[i - 1]))
            throw std::logic_error("StepFunction: breaks must increase strictly");
    if (breaks.back() > domain_end)
        throw std::logic_error("StepFunction: last breakpoint beyond domain_end");
    if (nonincreasing)
        for (std::size_t i = 1; i < values.size(); ++i)
            if (values[i] > values[i - 1])
                throw std::logic_error("StepFunction: nonincreasing flag violated");
}

StepFunction rearrange_atoms(std::vector<std::pair<double, double>> atoms) {
    std::sort(atoms.begin(), atoms.end(), [](const auto& a, const auto& b) {
        return a.first > b.first;  // value descending
    });
    StepFunction sf;
    sf.nonincreasing = true;
    double cum = 0.0;
    for (const auto& [v, w] : atoms) {
        if (!sf.values.empty() && sf.values.back() == v) {
            cum += w;
            continue;
        }
        sf.breaks.push_back(cum);
        sf.values.push_back(v);
        cum += w;
    }
    sf.domain_end = cum;
    if (sf.breaks.empty()) {
        sf.breaks.push_back(0.0);
        sf.values.push_back(0.0);
        sf.domain_end = kInf;
    }
    return sf;
}

StepFunction decreasing_rearrangement(const Field& f, const SampleSpace& space) {
    std::vector<std::pair<double, double>> atoms(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        atoms[i] = {std::fabs(f.values[i]), space.weights[i]};
    return rearrange_atoms(std::move(atoms));
}

StepFunction distribution_function(const Field& f, const SampleSpace& space) {
    // mu_f(t) = mass of {|f| > t}; a nonincreasing step function of t whose
    // breakpoints are 0 and the attained |f| values.
    std::vector<std::pair<double, double>> atoms(space.size());
    for (std::size_t i = 0; i < space.size(); ++i)
        atoms[i] = {std::fabs(f.values[i]), space.weights[i]};
    std::sort(atoms.begin(), atoms.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    StepFunction mu;
    mu.nonincreasing = true;
    mu.domain_end = kInf;
    // tail[k] = mass of atoms with value strictly greater than atoms[k].first
    double total = 0.0;
    for (const auto& [v, w] : atoms) total += w;

    std::vector<double> levels;   // distinct values ascending
    std::vector<double> tails;    // mass strictly above each level
    double cum = 0.0;             // mass of values >= current group
    std::size_t i = 0;
    while (i < atoms.size()) {
        const double v = atoms[i].first;
        double group = 0.0;
        while (i < atoms.size() && atoms[i].first == v) group += atoms[i++].second;
        levels.push_back(v);
        tails.push_back(cum);  // mass with value > v (processed groups are larger)
        cum += group;
    }
    std::reverse(levels.begin(), levels.end());
    std::reverse(tails.begin(), tails.end());

    mu.breaks.push_back(0.0);
    if (levels.empty() || levels.front() > 0.0) {
        mu.values.push_back(total);  // on [0, smallest level): everything exceeds t...
    } else {
        mu.values.push_back(tails.front());
    }
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (levels[k] == 0.0) continue;  // handled by the [0, ...) interval
        const double value_after = tails[k];  // mu_f(t) for t in [levels[k], next)
        if (mu.values.back() == value_after) continue;
        mu.breaks.push_back(levels[k]);
        mu.values.push_back(value_after);
    }
    return mu;
}

MaximalAverage::MaximalAverage(StepFunction sf) : sf_(std::move(sf)) {
    if (!sf_.nonincreasing)
        throw std::invalid_argument("MaximalAverage: step function must be nonincreasing");
    cum_.resize(sf_.breaks.size());
    cum_[0] = 0.0;
    for (std::size_t i = 1; i < sf_.breaks.size(); ++i)
        cum_[i] = cum_[i - 1] + sf_.values[i - 1] * (sf_.breaks[i] - sf_.breaks[i - 1]);
}

double MaximalAverage::operator()(double t) const {
    if (!(t > 0.0)) throw std::domain_error("maximal_average: t > 0 required");
    const double tt = std::min(t, sf_.domain_end);
    auto it = std::upper_bound(sf_.breaks.begin(), sf_.breaks.end(), tt);
    const std::size_t k = static_cast<std::size_t>(it - sf_.breaks.begin()) - 1;
    const double part = cum_[k] + sf_.values[k] * (tt - sf_.breaks[k]);
    return part / t;
}

double median(const Field& f, const SampleSpace& space) {
    if (space.infinite_measure)
        throw std::runtime_error("infinite_measure_space: medians need finite total measure");
    std::vector<std::pair<double, double>> atoms(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) atoms[i] = {f.values[i], space.weights[i]};
    std::sort(atoms.begin(), atoms.end());
    const double half = 0.5 * space.total_measure;
    const double fuzz = 1e-12 * space.total_measure;
    double cum = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        cum += atoms[i].second;
        const bool last_of_value = i + 1 == atoms.size() || atoms[i + 1].first != atoms[i].first;
        if (last_of_value && cum >= half - fuzz) return atoms[i].first;
    }
    return atoms.empty() ? 0.0 : atoms.back().first;
}

RiNormSpec RiNormSpec::Lp(double p) {
    RiNormSpec s;
    s.family = Family::Lp;
    s.p = p;
    s.q = p;
    return s;
}

RiNormSpec RiNormSpec::Lorentz(double p, double q) {
    RiNormSpec s;
    s.family = Family::Lorentz;
    s.p = p;
    s.q = q;
    return s;
}

RiNormSpec RiNormSpec::Marcinkiewicz(std::function<double(double)> weight,
                                     std::vector<double> interior_critical) {
    RiNormSpec s;
    s.family = Family::Marcinkiewicz;
    s.weight = std::move(weight);
    s.interior_critical = std::move(interior_critical);
    return s;
}

RiNormSpec RiNormSpec::LogLorentz(int n, double domain_measure) {
    RiNormSpec s;
    s.family = Family::LogLorentz;
    s.n = n;
    s.domain_measure = domain_measure;
    return s;
}

namespace {

double lp_step_norm(const StepFunction& sf, double p) {
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : sf.values) m = std::max(m, std::fabs(v));
        return m;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < sf.values.size(); ++i) {
        const double hi = i + 1 < sf.breaks.size() ? sf.breaks[i + 1] : sf.domain_end;
        if (std::isinf(hi)) {
            if (sf.values[i] != 0.0) return kInf;
            break;
        }
        acc += std::pow(std::fabs(sf.values[i]), p) * (hi - sf.breaks[i]);
    }
    return std::pow(acc, 1.0 / p);
}

double lorentz_step_norm(const StepFunction& sf, double p, double q) {
    if (std::isinf(q)) {
        // sup f*(t) t^{1/p}: right endpoints of intervals
        double m = 0.0;
        for (std::size_t i = 0; i < sf.values.size(); ++i) {
            const double hi = i + 1 < sf.breaks.size() ? sf.breaks[i + 1] : sf.domain_end;
            if (std::isinf(hi)) return sf.values[i] != 0.0 ? kInf : m;
            m = std::max(m, sf.values[i] * std::pow(hi, 1.0 / p));
        }
        return m;
    }
    const double e = q / p;
    double acc = 0.0;
    for (std::size_t i = 0; i < sf.values.size(); ++i) {
        const double hi = i + 1 < sf.breaks.size() ? sf.breaks[i + 1] : sf.domain_end;
        if (std::isinf(hi)) {
            if (sf.values[i] != 0.0) return kInf;
            break;
        }
        acc += std::pow(sf.values[i], q) * (p / q) *
               (std::pow(hi, e) - std::pow(sf.breaks[i], e));
    }
    return std::pow(acc, 1.0 / q);
}

double sup_weight_norm(const StepFunction& sf, const std::function<double(double)>& w,
                       const std::vector<double>& crit, double t_cap) {
    double m = 0.0;
    for (std::size_t i = 0; i < sf.values.size(); ++i) {
        if (sf.values[i] == 0.0) continue;
        double hi = i + 1 < sf.breaks.size() ? sf.breaks[i + 1] : sf.domain_end;
        hi = std::min(hi, t_cap);
        const double lo = sf.breaks[i];
        if (!(hi > lo)) continue;
        if (std::isinf(hi)) return kInf;
        m = std::max(m, sf.values[i] * w(hi));
        if (lo > 0.0) m = std::max(m, sf.values[i] * w(lo));
        for (double c : crit)
            if (c > lo && c < hi) m = std::max(m, sf.values[i] * w(c));
    }
    return m;
}

}  // namespace

double ri_norm(const StepFunction& sf, const RiNormSpec& spec) {
    if (!sf.nonincreasing)
        throw std::invalid_argument("ri_norm: step function must be a rearrangement");
    switch (spec.family) {
        case RiNormSpec::Family::Lp:
            return lp_step_norm(sf, spec.p);
        case RiNormSpec::Family::Lorentz:
            if (std::isinf(spec.p) && std::isinf(spec.q))
                throw std::invalid_argument("unsupported: Lorentz(p = q = inf)");
            return lorentz_step_norm(sf, spec.p, spec.q);
        case RiNormSpec::Family::Marcinkiewicz:
            return sup_weight_norm(sf, spec.weight, spec.interior_critical, kInf);
        case RiNormSpec::Family::LogLorentz: {
            const double om = spec.domain_measure;
            const int n = spec.n;
            auto w = [om, n](double t) {
                return std::pow(t, 1.0 / n) * (1.0 + std::log(om / t));
            };
            // interior maximum of t^{1/n}(1 + log(om/t))
            const std::vector<double> crit = {om * std::exp(1.0 - n)};
            return sup_weight_norm(sf, w, crit, om);
        }
    }
    throw std::logic_error("ri_norm: unknown family");
}

std::pair<double, double> product_partial_integral(const Field& u, const Field& v,
                                                   const SampleSpace& space, double t) {
    Field uv;
    uv.values.resize(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) uv.values[i] = u.values[i] * v.values[i];
    const StepFunction prod = decreasing_rearrangement(uv, space);
    const double lhs = prod.integral_to(t);

    const StepFunction us = decreasing_rearrangement(u, space);
    const StepFunction vs = decreasing_rearrangement(v, space);
    // integrate u* v* over merged breakpoints up to t
    double rhs = 0.0;
    std::size_t iu = 0, iv = 0;
    double pos = 0.0;
    const double end = std::min({t, us.domain_end, vs.domain_end});
    while (pos < end) {
        const double next_u = iu + 1 < us.breaks.size() ? us.breaks[iu + 1] : us.domain_end;
        const double next_v = iv + 1 < vs.breaks.size() ? vs.breaks[iv + 1] : vs.domain_end;
        const double next = std::min({next_u, next_v, end});
        rhs += us.values[iu] * vs.values[iv] * (next - pos);
        if (next == next_u && iu + 1 < us.breaks.size()) ++iu;
        if (next == next_v && iv + 1 < vs.breaks.size()) ++iv;
        if (!(next > pos)) break;
        pos = next;
    }
    return {lhs, rhs};
}

}  // namespace isoperim
