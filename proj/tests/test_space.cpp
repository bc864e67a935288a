#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isoperim/catalog.hpp"
#include "isoperim/space.hpp"

using namespace isoperim;
namespace {
constexpr double kPi = std::numbers::pi;

SampleSpace box2(int res = 64, double hw = 4.0) {
    SpaceSpec s;
    s.kind = SpaceKind::euclidean_box;
    s.n = 2;
    s.halfwidth = hw;
    s.resolution = res;
    return build_space(s);
}
}  // namespace

TEST_CASE("box measures: total, symmetry, weights") {
    const auto s = box2(64);
    CHECK(s.total_measure == doctest::Approx(64.0).epsilon(1e-13));
    CHECK(s.size() == 64u * 64u);
    for (double w : s.weights) CHECK(w > 0.0);
    const double half =
        measure_of(s, PointPred([](const SampleSpace& sp, std::size_t i) {
                       return sp.coord(0, i) > 0.0;
                   }));
    CHECK(half == doctest::Approx(32.0).epsilon(1e-13));
    CHECK(measure_of(s, PointPred([](const SampleSpace&, std::size_t) { return false; })) ==
          0.0);
}

TEST_CASE("metric symmetry and zero diagonal") {
    const auto s = box2(16);
    CHECK(s.distance(3, 3) == 0.0);
    CHECK(s.distance(3, 77) == s.distance(77, 3));

    SpaceSpec sp;
    sp.kind = SpaceKind::sphere;
    sp.n = 2;
    sp.resolution = 16;
    const auto sph = build_space(sp);
    CHECK(sph.distance(0, 0) == 0.0);
    CHECK(sph.distance(5, 40) == sph.distance(40, 5));
    CHECK(sph.distance(5, 40) <= kPi + 1e-12);
}

TEST_CASE("sphere kinds are probability spaces") {
    for (int n : {1, 2}) {
        SpaceSpec sp;
        sp.kind = SpaceKind::sphere;
        sp.n = n;
        sp.resolution = 32;
        const auto s = build_space(sp);
        CHECK(s.total_measure == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(!s.infinite_measure);
    }
}

TEST_CASE("gaussian line: truncated mass and symmetry") {
    SpaceSpec g;
    g.kind = SpaceKind::log_concave_product;
    g.n = 1;
    g.p = 2.0;
    g.truncation = 8.0;
    g.resolution = 4096;
    const auto s = build_space(g);
    CHECK(s.total_measure <= 1.0 + 1e-9);
    CHECK(s.total_measure >= 1.0 - 1e-6);
    const double left = measure_of(s, PointPred([](const SampleSpace& sp, std::size_t i) {
                                       return sp.coord(0, i) <= 0.0;
                                   }));
    CHECK(left == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("log-concave builder rejects bad parameters") {
    SpaceSpec g;
    g.kind = SpaceKind::log_concave_product;
    g.n = 1;
    g.p = 3.0;
    g.resolution = 64;
    CHECK_THROWS_AS(build_space(g), std::invalid_argument);
    g.p = 2.0;
    g.resolution = 4;
    CHECK_THROWS_AS(build_space(g), std::invalid_argument);
    g.resolution = 64;
    g.truncation = 1.0;  // far too small
    CHECK_THROWS_AS(build_space(g), std::runtime_error);
}

TEST_CASE("gradient modulus: analytic passthrough and finite differences") {
    const auto s = box2(64);
    Field cf = constant_field(s, 5.0);
    const Field g0 = gradient_modulus(s, cf);
    for (double v : g0.values) CHECK(v == 0.0);

    Field x1;
    x1.values = s.coords[0];
    const Field g1 = gradient_modulus(s, x1);  // finite differences
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(g1.values[i] == doctest::Approx(1.0).epsilon(1e-10));

    Field norm;
    norm.values.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        norm.values[i] = std::hypot(s.coord(0, i), s.coord(1, i));
    const Field gn = gradient_modulus(s, norm);
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (norm.values[i] < 0.5 || s.boundary_layer[i]) continue;
        CHECK(gn.values[i] <= 1.0 + 2.0 / s.spec.resolution);
        // the stencil is exact where a neighbor direction matches the ray:
        // on the axes and the diagonals
        const double x = std::fabs(s.coord(0, i)), y = std::fabs(s.coord(1, i));
        const bool on_ray = std::min(x, y) < 1e-9 || std::fabs(x - y) < 1e-9;
        if (on_ray) CHECK(gn.values[i] >= 1.0 - 2.0 / s.spec.resolution);
        // off the rays the quotient still sees at least cos(pi/8) of the slope
        CHECK(gn.values[i] >= std::cos(std::numbers::pi / 8.0) - 2.0 / s.spec.resolution);
    }
}

TEST_CASE("1-Lipschitz bound for finite differences") {
    const auto s = box2(32);
    Field f;
    f.values.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        f.values[i] = std::sin(s.coord(0, i)) * 0.5 + 0.5 * s.coord(1, i);  // 1-Lipschitz-ish
    const Field g = gradient_modulus(s, f);
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(g.values[i] <= 1.0 + 4.0 / s.spec.resolution);
}

TEST_CASE("minkowski content: disk, halfspace, empty") {
    const auto s = box2(256);
    const auto h = default_h_sequence(s);

    auto disk = make_mask(s, [](const SampleSpace& sp, std::size_t i) {
        const double x = sp.coord(0, i), y = sp.coord(1, i);
        return x * x + y * y <= 1.0;
    });
    const auto mk = minkowski_content(s, disk, h);
    CHECK(!mk.degenerate);
    CHECK(mk.content == doctest::Approx(2.0 * kPi).epsilon(0.05));

    auto half = make_mask(
        s, [](const SampleSpace& sp, std::size_t i) { return sp.coord(0, i) <= 0.0; });
    CHECK(minkowski_content(s, half, h).content == doctest::Approx(8.0).epsilon(0.05));

    auto empty = make_mask(s, [](const SampleSpace&, std::size_t) { return false; });
    CHECK(minkowski_content(s, empty, h).content == 0.0);

    auto everything = make_mask(s, [](const SampleSpace&, std::size_t) { return true; });
    CHECK(minkowski_content(s, everything, h).content == 0.0);
}

TEST_CASE("minkowski content validates the h sequence") {
    const auto s = box2(32);
    auto disk = make_mask(s, [](const SampleSpace& sp, std::size_t i) {
        return sp.coord(0, i) * sp.coord(0, i) + sp.coord(1, i) * sp.coord(1, i) <= 1.0;
    });
    std::vector<double> bad = {0.5, 0.6, 0.7};  // increasing
    CHECK_THROWS_AS(minkowski_content(s, disk, bad), std::invalid_argument);
    std::vector<double> tiny = {0.5, 0.4, 1e-6};  // below 2*spacing
    CHECK_THROWS_AS(minkowski_content(s, disk, tiny), std::invalid_argument);
    std::vector<double> two = {0.5, 0.4};
    CHECK_THROWS_AS(minkowski_content(s, disk, two), std::invalid_argument);
}

TEST_CASE("S^1 arc content is 1/pi") {
    SpaceSpec sp;
    sp.kind = SpaceKind::sphere;
    sp.n = 1;
    sp.resolution = 512;
    const auto s = build_space(sp);
    auto arc = make_mask(s, [](const SampleSpace& ss, std::size_t i) {
        return ss.coord(0, i) > 0.0;  // half circle
    });
    const auto mk = minkowski_content(s, arc, default_h_sequence(s));
    CHECK(mk.content == doctest::Approx(1.0 / kPi).epsilon(0.05));
}

TEST_CASE("ball measure: formulas and unsupported kinds") {
    const auto s = box2(16);
    CHECK(ball_measure(s, 1.0) == doctest::Approx(kPi).epsilon(1e-13));
    CHECK(ball_measure(s, 0.0) == 0.0);

    SpaceSpec sp;
    sp.kind = SpaceKind::sphere;
    sp.n = 2;
    sp.resolution = 16;
    const auto sph = build_space(sp);
    for (double r : {0.3, 1.0, 2.0})
        CHECK(ball_measure(sph, r) ==
              doctest::Approx(0.5 * (1.0 - std::cos(r))).epsilon(1e-8));

    SpaceSpec g;
    g.kind = SpaceKind::log_concave_product;
    g.n = 1;
    g.resolution = 64;
    const auto line = build_space(g);
    CHECK_THROWS_AS(ball_measure(line, 1.0), std::runtime_error);
}

TEST_CASE("half plane: area and boundary marking") {
    SpaceSpec h;
    h.kind = SpaceKind::half_plane;
    h.halfwidth = 4.0;
    h.resolution = 64;
    const auto s = build_space(h);
    CHECK(s.total_measure == doctest::Approx(32.0).epsilon(1e-12));
    // cells on the wall y ~ 0 are not truncation boundary
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (std::fabs(s.coord(1, i)) < 0.07 && std::fabs(s.coord(0, i)) < 3.5)
            CHECK(!s.boundary_layer[i]);
    }
}

TEST_CASE("catalog constants") {
    CHECK(catalog::unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(catalog::unit_ball_volume(2) == doctest::Approx(kPi));
    CHECK(catalog::unit_ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0));
    CHECK(catalog::sphere_surface(1) == doctest::Approx(2.0 * kPi));
    CHECK(catalog::sphere_surface(2) == doctest::Approx(4.0 * kPi));
    // Z for the Gaussian: sqrt(2 pi)
    const auto& m = catalog::log_concave_measure(2.0);
    CHECK(m.Z == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-12));
    // Laplace: Z = 2
    const auto& l = catalog::log_concave_measure(1.0);
    CHECK(l.Z == doctest::Approx(2.0).epsilon(1e-12));
}
