#include "isoperim/catalog.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace isoperim::catalog {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr std::size_t kCdfSegments = 8192;
}  // namespace

double unit_ball_volume(int n) {
    if (n < 1) throw std::invalid_argument("unit_ball_volume: n >= 1 required");
    return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

double sphere_surface(int n) {
    if (n < 0) throw std::invalid_argument("sphere_surface: n >= 0 required");
    return 2.0 * std::pow(kPi, 0.5 * (n + 1)) / std::tgamma(0.5 * (n + 1));
}

double sphere_band_density(int n, double theta) {
    const double ratio = sphere_surface(n - 1) / sphere_surface(n);
    if (n == 1) return ratio;
    return ratio * std::pow(std::cos(theta), n - 1);
}

const CumulativeCache& sphere_latitude_cdf(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CumulativeCache>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) {
        auto fn = [n](double theta) { return sphere_band_density(n, theta); };
        it = cache.emplace(n, std::make_unique<CumulativeCache>(fn, -0.5 * kPi, 0.5 * kPi,
                                                                kCdfSegments, 1e-13))
                 .first;
    }
    return *it->second;
}

double LogConcaveMeasure::density(double x) const {
    return std::exp(-std::pow(std::fabs(x), p) / p) / Z;
}

double default_log_concave_radius(double p) {
    // |x|^p / p = 40 puts the tail mass far below 1e-15
    return std::pow(40.0 * p, 1.0 / p);
}

const LogConcaveMeasure& log_concave_measure(double p, double radius) {
    if (!(p >= 1.0 && p <= 2.0))
        throw std::invalid_argument("log_concave_measure: p must lie in [1, 2]");
    if (radius <= 0.0) radius = default_log_concave_radius(p);

    static std::mutex mu;
    static std::map<std::pair<double, double>, std::unique_ptr<LogConcaveMeasure>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(p, radius);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto m = std::make_unique<LogConcaveMeasure>();
        m->p = p;
        m->radius = radius;
        auto raw = [p](double x) { return std::exp(-std::pow(std::fabs(x), p) / p); };
        // normalize over a wider window so Z carries no truncation bias
        const double zr = std::max(radius, default_log_concave_radius(p)) * 1.25;
        // split at 0: |x|^p has a kink there for p < 2
        m->Z = adaptive_simpson(raw, -zr, 0.0, 0.5e-13) + adaptive_simpson(raw, 0.0, zr, 0.5e-13);
        const double Z = m->Z;
        m->H = CumulativeCache([raw, Z](double x) { return raw(x) / Z; }, -radius, radius,
                               kCdfSegments, 1e-13);
        it = cache.emplace(key, std::move(m)).first;
    }
    return *it->second;
}

}  // namespace isoperim::catalog
