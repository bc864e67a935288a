#include "isoperim/profile.hpp"

#include <cmath>
#include <numbers>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <algorithm>
#include <stdexcept>

#include "isoperim/catalog.hpp"
#include "isoperim/quadrature.hpp"

namespace isoperim {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Profile Profile::euclidean(int n) {
    if (n < 1) throw std::invalid_argument("invalid_params: euclidean profile needs n >= 1");
    Profile p;
    p.kind_ = ProfileKind::euclidean;
    p.n_ = n;
    p.finite_ = false;
    p.domain_end_ = kInf;
    return p;
}

Profile Profile::half_plane() {
    Profile p;
    p.kind_ = ProfileKind::half_plane;
    p.n_ = 2;
    p.finite_ = false;
    p.domain_end_ = kInf;
    return p;
}

Profile Profile::sphere(int n) {
    if (n < 1) throw std::invalid_argument("invalid_params: sphere profile needs n >= 1");
    Profile p;
    p.kind_ = ProfileKind::sphere;
    p.n_ = n;
    p.finite_ = true;
    p.domain_end_ = 1.0;
    catalog::sphere_latitude_cdf(n);  // build the quadrature cache eagerly
    return p;
}

Profile Profile::log_concave(double pexp) {
    if (!(pexp >= 1.0 && pexp <= 2.0))
        throw std::invalid_argument("invalid_params: log_concave profile needs p in [1, 2]");
    Profile p;
    p.kind_ = ProfileKind::log_concave;
    p.n_ = 1;
    p.p_ = pexp;
    p.finite_ = true;
    p.domain_end_ = 1.0;
    catalog::log_concave_measure(pexp);
    return p;
}

Profile Profile::scaled(double factor) const {
    if (!(factor > 0.0)) throw std::invalid_argument("invalid_params: scale factor > 0");
    Profile p = *this;
    p.scale_ = scale_ * factor;
    return p;
}

std::string Profile::id() const {
    std::ostringstream os;
    if (scale_ != 1.0) os << scale_ << "*";
    switch (kind_) {
        case ProfileKind::euclidean: os << "euclidean(" << n_ << ")"; break;
        case ProfileKind::half_plane: os << "half_plane"; break;
        case ProfileKind::sphere: os << "sphere(" << n_ << ")"; break;
        case ProfileKind::log_concave: os << "log_concave(p=" << p_ << ")"; break;
    }
    return os.str();
}

bool Profile::power_law(double* c, double* alpha) const {
    switch (kind_) {
        case ProfileKind::euclidean: {
            const double beta = catalog::unit_ball_volume(n_);
            if (c) *c = scale_ * n_ * std::pow(beta, 1.0 / n_);
            if (alpha) *alpha = 1.0 - 1.0 / n_;
            return true;
        }
        case ProfileKind::half_plane: {
            if (c) *c = scale_ * std::sqrt(catalog::unit_ball_volume(2));
            if (alpha) *alpha = 0.5;
            return true;
        }
        default:
            return false;
    }
}

double Profile::raw_value(double t) const {
    switch (kind_) {
        case ProfileKind::euclidean: {
            const double beta = catalog::unit_ball_volume(n_);
            return n_ * std::pow(beta, 1.0 / n_) * std::pow(t, 1.0 - 1.0 / n_);
        }
        case ProfileKind::half_plane:
            return std::sqrt(catalog::unit_ball_volume(2)) * std::sqrt(t);
        case ProfileKind::sphere: {
            const double ts = std::min(t, 1.0 - t);
            if (ts <= 0.0) return 0.0;
            const auto& cdf = catalog::sphere_latitude_cdf(n_);
            const double theta = cdf.inverse(ts);
            return catalog::sphere_band_density(n_, theta);
        }
        case ProfileKind::log_concave: {
            const double ts = std::min(t, 1.0 - t);
            if (ts <= 0.0) return 0.0;
            const auto& m = catalog::log_concave_measure(p_);
            return m.density(m.quantile(ts));
        }
    }
    throw std::logic_error("profile: unknown kind");
}

double Profile::value(double t) const {
    if (!(t > 0.0) || t >= domain_end_)
        throw std::domain_error("out_of_domain: profile argument outside (0, mu(Omega))");
    return scale_ * raw_value(t);
}

double Profile::phi(double t) const {
    // the min{} cap makes Phi well defined up to the top of the domain
    if (!(t > 0.0) || (finite_ && t > domain_end_ * (1.0 + 1e-9)))
        throw std::domain_error("out_of_domain: phi argument outside (0, mu(Omega))");
    double m = finite_ ? std::min(t, 0.5 * domain_end_) : t;
    const double floor = finite_ ? 1e-14 * domain_end_ : 1e-300;
    m = std::max(m, floor);
    double c, alpha;
    if (power_law(&c, &alpha)) return std::pow(m, 1.0 - alpha) / c;
    return m / (scale_ * raw_value(m));
}

namespace {

// Cached cumulative of 1/I on a log grid: J_k = int_{t0}^{t_k} ds/I(s).
struct InvProfileCumulative {
    std::vector<double> nodes;
    std::vector<double> J;

    double integral(const Profile& p, double a, double b) const {
        auto f = [&p](double s) { return 1.0 / p.value(s); };
        auto eval = [&](double x) {
            auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
            if (it == nodes.begin()) return -adaptive_simpson(f, x, nodes.front(), 1e-12);
            const std::size_t k = static_cast<std::size_t>(it - nodes.begin()) - 1;
            return J[k] + adaptive_simpson(f, nodes[k], x, 1e-13);
        };
        return eval(b) - eval(a);
    }
};

const InvProfileCumulative& inv_profile_cache(const Profile& p) {
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<InvProfileCumulative>> cache;
    std::lock_guard<std::mutex> lock(mu);
    // the scale factor divides out; key on the unscaled profile
    std::ostringstream key;
    key << static_cast<int>(p.kind()) << ":" << p.dim() << ":" << p.exponent();
    auto it = cache.find(key.str());
    if (it == cache.end()) {
        auto c = std::make_unique<InvProfileCumulative>();
        const double upper = p.finite_measure() ? 0.5 * p.domain_end() : 1e6;
        const double t0 = p.finite_measure() ? 1e-12 * p.domain_end() : 1e-12;
        const std::size_t segs = 4096;
        c->nodes.resize(segs + 1);
        c->J.resize(segs + 1);
        const Profile base = p.scale_factor() == 1.0 ? p : p.scaled(1.0 / p.scale_factor());
        auto f = [&base](double s) { return 1.0 / base.value(s); };
        c->nodes[0] = t0;
        c->J[0] = 0.0;
        for (std::size_t k = 1; k <= segs; ++k) {
            c->nodes[k] = t0 * std::pow(upper / t0, static_cast<double>(k) / segs);
            c->J[k] = c->J[k - 1] + adaptive_simpson(f, c->nodes[k - 1], c->nodes[k], 1e-13);
        }
        it = cache.emplace(key.str(), std::move(c)).first;
    }
    return *it->second;
}

}  // namespace

double Profile::integral_inv(double a, double b) const {
    if (!(b > a) || !(a > 0.0)) return 0.0;
    double c, alpha;
    if (power_law(&c, &alpha)) {
        if (alpha == 1.0) return (std::log(b) - std::log(a)) / c;
        const double e = 1.0 - alpha;
        return (std::pow(b, e) - std::pow(a, e)) / (c * e);
    }
    const Profile base = scale_ == 1.0 ? *this : scaled(1.0 / scale_);
    return inv_profile_cache(*this).integral(base, a, b) / scale_;
}

Profile make_profile(const ProfileSpec& spec) {
    switch (spec.kind) {
        case ProfileKind::euclidean: return Profile::euclidean(spec.n);
        case ProfileKind::half_plane: return Profile::half_plane();
        case ProfileKind::sphere: return Profile::sphere(spec.n);
        case ProfileKind::log_concave: return Profile::log_concave(spec.p);
    }
    throw std::invalid_argument("invalid_params: unknown profile kind");
}

Profile profile_for(const SampleSpace& space) {
    switch (space.kind()) {
        case SpaceKind::euclidean_box: return Profile::euclidean(space.spec.n);
        case SpaceKind::half_plane: return Profile::half_plane();
        case SpaceKind::sphere: return Profile::sphere(space.spec.n);
        case SpaceKind::log_concave_product: return Profile::log_concave(space.spec.p);
    }
    throw std::invalid_argument("invalid_params: unknown space kind");
}

ProfileFidelityReport validate_profile_against_space(const Profile& profile,
                                                     const SampleSpace& space,
                                                     double tolerance) {
    ProfileFidelityReport rep;
    rep.tolerance = tolerance;
    const auto h_seq = default_h_sequence(space);

    auto push_row = [&](double param, const std::vector<std::uint8_t>& mask, bool extremal) {
        ProfileFidelityRow row;
        row.set_param = param;
        row.measure = measure_of(space, mask);
        if (row.measure <= 0.0 ||
            (profile.finite_measure() && row.measure >= profile.domain_end()))
            return;
        row.content = minkowski_content(space, mask, h_seq).content;
        row.profile_value = profile.value(row.measure);
        row.ratio = row.content / row.profile_value;
        row.extremal_family = extremal;
        if (row.ratio < 1.0 - tolerance) rep.lower_bound_ok = false;
        if (extremal && row.ratio > 1.0 + tolerance) rep.extremal_ok = false;
        rep.rows.push_back(row);
    };

    switch (space.kind()) {
        case SpaceKind::euclidean_box: {
            for (double r : {0.6, 0.8, 1.0, 1.25, 1.5, 1.75, 2.0}) {
                auto mask = make_mask(space, [r](const SampleSpace& s, std::size_t i) {
                    double d2 = 0.0;
                    for (int ch = 0; ch < s.embed_dim; ++ch)
                        d2 += s.coord(ch, i) * s.coord(ch, i);
                    return d2 <= r * r;
                });
                push_row(r, mask, true);
            }
            for (double a : {0.8, 1.6}) {  // boxes are not extremal
                auto mask = make_mask(space, [a](const SampleSpace& s, std::size_t i) {
                    for (int ch = 0; ch < s.embed_dim; ++ch)
                        if (std::fabs(s.coord(ch, i)) > a) return false;
                    return true;
                });
                push_row(a, mask, false);
            }
            break;
        }
        case SpaceKind::sphere: {
            for (double r : {0.5, 0.7, 0.9, 1.1, 1.3, 1.5, 1.7, 1.9, 2.1, 2.3}) {
                const double zmin = std::cos(r);
                auto mask = make_mask(space, [zmin](const SampleSpace& s, std::size_t i) {
                    return s.coord(s.embed_dim - 1, i) >= zmin;
                });
                push_row(r, mask, true);
            }
            break;
        }
        case SpaceKind::log_concave_product: {
            for (double a : {-1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5}) {
                auto mask = make_mask(space, [a](const SampleSpace& s, std::size_t i) {
                    return s.coord(0, i) <= a;
                });
                push_row(a, mask, space.spec.n == 1);
            }
            break;
        }
        case SpaceKind::half_plane: {
            // the printed half-plane profile is an estimator: lower bound only
            for (double r : {0.8, 1.2, 1.6, 2.0}) {
                auto mask = make_mask(space, [r](const SampleSpace& s, std::size_t i) {
                    const double x = s.coord(0, i), y = s.coord(1, i);
                    return x * x + y * y <= r * r;
                });
                push_row(r, mask, false);
            }
            break;
        }
    }
    return rep;
}

}  // namespace isoperim
