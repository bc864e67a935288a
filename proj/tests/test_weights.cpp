#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isoperim/catalog.hpp"
#include "isoperim/weights.hpp"

using namespace isoperim;
namespace {
constexpr double kPi = std::numbers::pi;

SampleSpace box2(int res = 256) {
    SpaceSpec s;
    s.kind = SpaceKind::euclidean_box;
    s.n = 2;
    s.halfwidth = 4.0;
    s.resolution = res;
    return build_space(s);
}

Field abs_field(const SampleSpace& s, double scale = 1.0) {
    Field w;
    w.values.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        w.values[i] = scale * std::hypot(s.coord(0, i), s.embed_dim > 1 ? s.coord(1, i) : 0.0);
    return w;
}
}  // namespace

TEST_CASE("C(|x|) on the plane is 1/2 within 5 percent") {
    const auto s = box2();
    const auto prof = Profile::euclidean(2);
    bool censored = false, unbounded = false;
    const double C = isoperimetric_constant(abs_field(s), s, prof, {}, &censored, &unbounded);
    CHECK(C == doctest::Approx(0.5).epsilon(0.05));
    CHECK(!unbounded);
    CHECK(censored);  // level sets past the box edge are truncation-censored
}

TEST_CASE("marcinkiewicz route agrees with the level-set route (lmar)") {
    const auto s = box2();
    const auto prof = Profile::euclidean(2);
    const auto a = analyze_weight(abs_field(s), s, prof);
    CHECK(std::fabs(a.C_iso - a.M_norm) / a.M_norm <= 0.02);
    CHECK(a.M_norm == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("constant weight on a truncated infinite space is flagged unbounded") {
    const auto s = box2(64);
    const auto prof = Profile::euclidean(2);
    bool censored = false, unbounded = false;
    const double C =
        isoperimetric_constant(constant_field(s, 2.0), s, prof, {}, &censored, &unbounded);
    CHECK(unbounded);
    CHECK(std::isinf(C));
    bool dtu = false;
    const double d = dt_constant(constant_field(s, 2.0), s, {}, &dtu);
    CHECK(dtu);
    CHECK(std::isinf(d));
}

TEST_CASE("nonpositive weights are rejected") {
    const auto s = box2(16);
    Field w = abs_field(s);
    w.values[7] = 0.0;
    CHECK_THROWS_AS(isoperimetric_constant(w, s, Profile::euclidean(2)), std::runtime_error);
    CHECK_THROWS_AS(marcinkiewicz_weight_norm(w, s, Profile::euclidean(2)),
                    std::runtime_error);
}

TEST_CASE("dt constants: |x| saturates, 2|x| gives 1/4") {
    const auto s = box2();
    CHECK(dt_constant(abs_field(s), s) == doctest::Approx(1.0).epsilon(0.05));
    CHECK(dt_constant(abs_field(s, 2.0), s) == doctest::Approx(0.25).epsilon(0.05));
    SpaceSpec g;
    g.kind = SpaceKind::log_concave_product;
    g.n = 1;
    g.resolution = 64;
    const auto line = build_space(g);
    CHECK_THROWS_AS(dt_constant(constant_field(line, 1.0), line), std::runtime_error);
}

TEST_CASE("prototype g: nonincreasing, sup g Phi = 1, asymptote") {
    const auto prof = Profile::log_concave(2.0);
    const auto g = prototype_g(prof, 1.0);
    REQUIRE(g.nonincreasing);
    for (std::size_t i = 1; i < g.values.size(); ++i) CHECK(g.values[i] <= g.values[i - 1]);
    double sup = 0.0;
    for (std::size_t i = 0; i + 1 < g.breaks.size(); ++i)
        sup = std::max(sup, g.values[i] * prof.phi(g.breaks[i + 1]));
    CHECK(sup == doctest::Approx(1.0).epsilon(1e-9));
    // g near t = 1e-4 is about sqrt(2 log 1e4)
    CHECK(g(1e-4) == doctest::Approx(std::sqrt(2.0 * std::log(1e4))).epsilon(0.10));

    const auto e2 = Profile::euclidean(2);
    const auto ge = prototype_g(e2, 64.0);
    // I(t)/t = 2 sqrt(pi) / sqrt(t)
    CHECK(ge(1.0) == doctest::Approx(2.0 * std::sqrt(kPi)).epsilon(0.01));
    CHECK(ge(4.0) == doctest::Approx(std::sqrt(kPi)).epsilon(0.01));
}

TEST_CASE("construct_weight reproduces the paper's radial formulas") {
    const auto s = box2(128);
    const auto prof = Profile::euclidean(2);
    const auto g = prototype_g(prof, s.total_measure);
    const Field w = construct_weight(s, g, default_radial(s), prof);
    // w(x) = 1/g*(pi |x|^2)
    for (std::size_t i = 0; i < s.size(); i += 997) {
        const double m = kPi * (s.coord(0, i) * s.coord(0, i) + s.coord(1, i) * s.coord(1, i));
        const double expect = 1.0 / (m >= g.domain_end ? g.values.back() : g(m));
        CHECK(w.values[i] == doctest::Approx(expect).epsilon(1e-12));
    }
    // (1/w)* matches g* at mid-quantiles
    Field recip;
    recip.values.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) recip.values[i] = 1.0 / w.values[i];
    const auto rs = decreasing_rearrangement(recip, s);
    for (int k = 20; k <= 80; k += 10) {
        const double t = s.total_measure * k / 100.0;
        CHECK(rs(t) == doctest::Approx(g(t)).epsilon(0.05));
    }
}

TEST_CASE("construct_weight rejects divergent g and non-monotone m") {
    const auto s = box2(32);
    const auto prof = Profile::euclidean(2);
    // g(t) ~ t^{-1} violates sup g Phi < inf on R^2 (Phi ~ sqrt t)
    StepFunction bad;
    bad.nonincreasing = true;
    bad.domain_end = s.total_measure;
    bad.breaks.push_back(0.0);
    const double tmin = 1e-10;
    bad.values.push_back(1.0 / tmin);
    for (int j = 1; j < 512; ++j) {
        const double t = tmin * std::pow(s.total_measure / tmin, j / 512.0);
        bad.breaks.push_back(t);
        bad.values.push_back(1.0 / t);
    }
    CHECK_THROWS_WITH_AS(construct_weight(s, bad, default_radial(s), prof),
                         doctest::Contains("g_violates_condition"), std::runtime_error);

    RadialDescriptor rd = default_radial(s);
    rd.sublevel_measure = [](double v) { return std::cos(3.0 * v); };  // not monotone
    const auto g = prototype_g(prof, s.total_measure);
    CHECK_THROWS_WITH_AS(construct_weight(s, g, rd, prof),
                         doctest::Contains("nonmonotone_m"), std::runtime_error);
}

TEST_CASE("gaussian construct_weight uses H and yields half-line level sets") {
    SpaceSpec g;
    g.kind = SpaceKind::log_concave_product;
    g.n = 1;
    g.resolution = 2048;
    g.truncation = 8.0;
    const auto line = build_space(g);
    const auto prof = Profile::log_concave(2.0);
    const auto proto = prototype_g(prof, 1.0);
    const Field w = construct_weight(line, proto, default_radial(line), prof);
    const auto& H = catalog::log_concave_measure(2.0);
    for (std::size_t i = 0; i < line.size(); i += 211) {
        const double m = H.cdf(line.coord(0, i));
        const double expect = 1.0 / (m >= proto.domain_end ? proto.values.back() : proto(m));
        CHECK(w.values[i] == doctest::Approx(expect).epsilon(1e-10));
    }
    for (std::size_t i = 1; i < line.size(); ++i)
        CHECK(w.values[i] >= w.values[i - 1] - 1e-12);  // increasing => half-line level sets
}

TEST_CASE("half-plane radial descriptors") {
    SpaceSpec h;
    h.kind = SpaceKind::half_plane;
    h.halfwidth = 4.0;
    h.resolution = 64;
    const auto s = build_space(h);
    const auto rd = default_radial(s);
    CHECK(rd.sublevel_measure(2.0) == doctest::Approx(0.5 * kPi * 4.0));
    // the experimental k-scheme at k -> 0 approaches B(1/2,1/2) s^2 = pi s^2
    const auto rk = half_plane_k_radial(1e-9);
    CHECK(rk.sublevel_measure(1.0) == doctest::Approx(kPi).epsilon(1e-6));
}

TEST_CASE("monotone weights have nested level sets") {
    const auto s = box2(64);
    const auto prof = Profile::euclidean(2);
    Field w1 = abs_field(s);
    Field w2 = abs_field(s);
    for (auto& v : w2.values) v += 0.7;
    const double C1 = isoperimetric_constant(w1, s, prof);
    const double C2 = isoperimetric_constant(w2, s, prof);
    CHECK(C2 <= C1 + 1e-12);
}

TEST_CASE("necessary condition ratios: |x| flat at 1/2, |x|^2 grows") {
    const auto s = box2(128);
    const auto rep = necessary_condition_check(abs_field(s), s, {0.8, 1.2, 1.6});
    for (const auto& row : rep.rows) {
        REQUIRE(!row.excluded);
        CHECK(row.ratio == doctest::Approx(0.5).epsilon(0.06));
    }
    Field wsq;
    wsq.values.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double r2 = s.coord(0, i) * s.coord(0, i) + s.coord(1, i) * s.coord(1, i);
        wsq.values[i] = r2;
    }
    const auto rep2 = necessary_condition_check(wsq, s, {0.25, 1.0});
    REQUIRE(rep2.rows.size() == 2);
    CHECK(rep2.rows[0].ratio > rep2.rows[1].ratio);  // 1/(2 sqrt t) decreases in t
    CHECK(rep2.rows[0].ratio == doctest::Approx(1.0).epsilon(0.10));
    CHECK(rep2.rows[1].ratio == doctest::Approx(0.5).epsilon(0.10));
    // empty level sets are excluded
    const auto rep3 = necessary_condition_check(abs_field(s), s, {1e-9});
    REQUIRE(rep3.rows.size() == 1);
    CHECK(rep3.rows[0].excluded);
}

TEST_CASE("strict and closed level-set constants agree within a cell") {
    SpaceSpec sp;
    sp.kind = SpaceKind::sphere;
    sp.n = 2;
    sp.resolution = 96;
    const auto s = build_space(sp);
    const auto prof = Profile::sphere(2);
    Field w;
    w.values.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        w.values[i] = 0.2 + std::acos(std::min(1.0, std::max(-1.0, s.coord(2, i))));
    const double closed = isoperimetric_constant(w, s, prof);
    const double strict = isoperimetric_constant_strict(w, s, prof);
    CHECK(strict <= closed + 1e-12);
    CHECK(std::fabs(closed - strict) / closed <= 0.02);
}
