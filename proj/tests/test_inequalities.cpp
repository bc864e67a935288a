#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "isoperim/inequalities.hpp"

using namespace isoperim;
namespace {
constexpr double kPi = std::numbers::pi;

const SampleSpace& box2() {
    static const SampleSpace s = [] {
        SpaceSpec sp;
        sp.kind = SpaceKind::euclidean_box;
        sp.n = 2;
        sp.halfwidth = 4.0;
        sp.resolution = 256;
        return build_space(sp);
    }();
    return s;
}

const SampleSpace& sphere2() {
    static const SampleSpace s = [] {
        SpaceSpec sp;
        sp.kind = SpaceKind::sphere;
        sp.n = 2;
        sp.resolution = 96;
        return build_space(sp);
    }();
    return s;
}

const SampleSpace& gauss_line() {
    static const SampleSpace s = [] {
        SpaceSpec sp;
        sp.kind = SpaceKind::log_concave_product;
        sp.n = 1;
        sp.resolution = 4096;
        sp.truncation = 8.0;
        return build_space(sp);
    }();
    return s;
}

Field abs_field(const SampleSpace& s) {
    Field w;
    w.values.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        w.values[i] = std::hypot(s.coord(0, i), s.embed_dim > 1 ? s.coord(1, i) : 0.0);
    return w;
}
}  // namespace

TEST_CASE("tent closed-form integrals") {
    const auto& s = box2();
    const Field f = radial_tent(s, 1.0);
    CHECK(integral_abs(s, f) == doctest::Approx(kPi / 3.0).epsilon(0.02));
    CHECK(integral_abs(s, gradient_modulus(s, f)) == doctest::Approx(kPi).epsilon(0.02));
    Field wf;
    wf.values.resize(s.size());
    const Field w = abs_field(s);
    for (std::size_t i = 0; i < s.size(); ++i) wf.values[i] = w.values[i] * f.values[i];
    CHECK(integral_abs(s, wf) == doctest::Approx(kPi / 6.0).epsilon(0.02));
    // L2 values
    CHECK(lp_norm(s, f, 2.0) == doctest::Approx(std::sqrt(kPi / 6.0)).epsilon(0.02));
    CHECK(lp_norm(s, wf, 2.0) == doctest::Approx(std::sqrt(kPi / 30.0)).epsilon(0.02));
}

TEST_CASE("local poincare: constants, A = Omega reduction, random caps") {
    const auto& s = sphere2();
    const auto prof = Profile::sphere(2);
    const Field f = coordinate_field(s, 2);
    auto all = make_mask(s, [](const SampleSpace&, std::size_t) { return true; });
    const auto rep = local_poincare(s, prof, f, all);
    CHECK(rep.pass);
    // A = Omega: the constant is mu/(2 I(mu/2)) = 1/(2 * 1/2) = 1
    CHECK(rep.constant_used == doctest::Approx(1.0).epsilon(1e-9));

    auto cap = make_mask(s, [](const SampleSpace& sp, std::size_t i) {
        return sp.coord(2, i) >= 0.4;
    });
    const auto rep2 = local_poincare(s, prof, f, cap);
    CHECK(rep2.pass);
    CHECK(rep2.ratio <= 1.05);

    const auto rep3 = local_poincare(s, prof, constant_field(s, 7.0), cap, 0.0);
    CHECK(rep3.lhs == 0.0);
    CHECK(rep3.pass);

    CHECK_THROWS_AS(local_poincare(box2(), Profile::euclidean(2), radial_tent(box2(), 1.0),
                                   all),
                    std::runtime_error);
}

TEST_CASE("coarea: tent equality witness and compact support requirement") {
    const auto& s = box2();
    const auto prof = Profile::euclidean(2);
    const auto rep = coarea_check(s, prof, radial_tent(s, 1.0));
    CHECK(rep.lhs == doctest::Approx(kPi).epsilon(0.05));
    CHECK(rep.rhs == doctest::Approx(kPi).epsilon(0.02));
    CHECK(rep.ratio >= 0.95);
    CHECK(rep.ratio <= 1.0 + 1e-9);

    Field not_compact = constant_field(s, 1.0);
    CHECK_THROWS_AS(coarea_check(s, prof, not_compact), std::runtime_error);

    // constant on a finite space: 0 <= 0
    const auto repc = coarea_check(sphere2(), Profile::sphere(2),
                                   constant_field(sphere2(), 3.0), 0.0);
    CHECK(repc.lhs == 0.0);
    CHECK(repc.pass);
}

TEST_CASE("uncertainty additive p=1: closed-form tent case") {
    const auto& s = box2();
    TestFunction tf;
    tf.field = radial_tent(s, 1.0);
    const auto rep = uncertainty_additive(s, Profile::euclidean(2), abs_field(s), tf, 1.0, 1.0);
    CHECK(rep.pass);
    REQUIRE(rep.curve.size() >= 256);
    for (const auto& row : rep.curve) CHECK(row.lhs <= row.rhs * (1.0 + 0.05));
    CHECK(rep.extras.at("C_w") == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("uncertainty additive p=2 uses D = C(2p+1)") {
    const auto& s = box2();
    TestFunction tf;
    tf.field = radial_tent(s, 1.0);
    const auto rep = uncertainty_additive(s, Profile::euclidean(2), abs_field(s), tf, 2.0, 1.0);
    CHECK(rep.pass);
    CHECK(rep.constant_used ==
          doctest::Approx(5.0 * rep.extras.at("C_w")).epsilon(1e-12));
}

TEST_CASE("uncertainty multiplicative: pi/3 <= pi/sqrt(6)") {
    const auto& s = box2();
    TestFunction tf;
    tf.field = radial_tent(s, 1.0);
    const auto rep =
        uncertainty_multiplicative(s, Profile::euclidean(2), abs_field(s), tf, 1.0, 1.0);
    CHECK(rep.pass);
    CHECK(rep.lhs == doctest::Approx(kPi / 3.0).epsilon(0.02));
    CHECK(rep.rhs == doctest::Approx(kPi / std::sqrt(6.0)).epsilon(0.05));
    // zero function: trivial pass
    TestFunction zero;
    zero.field = constant_field(s, 0.0);
    zero.field.compact_support = true;
    const auto repz =
        uncertainty_multiplicative(s, Profile::euclidean(2), abs_field(s), zero, 1.0, 1.0);
    CHECK(repz.pass);
    CHECK(repz.lhs == 0.0);
}

TEST_CASE("uncertainty rejects non-isoperimetric weights") {
    const auto& s = box2();
    TestFunction tf;
    tf.field = radial_tent(s, 1.0);
    CHECK_THROWS_WITH_AS(
        uncertainty_additive(s, Profile::euclidean(2), constant_field(s, 1.0), tf, 1.0, 1.0),
        doctest::Contains("weight_not_isoperimetric"), std::runtime_error);
}

TEST_CASE("hardy operator closed forms, linearity, domain errors") {
    StepFunction chi;
    chi.breaks = {0.0, 1.0};
    chi.values = {1.0, 0.0};
    chi.domain_end = 64.0;
    chi.nonincreasing = true;
    const auto e2 = Profile::euclidean(2);
    for (double t : {0.04, 0.25, 0.81})
        CHECK(hardy_operator(chi, e2, t) ==
              doctest::Approx(2.0 * (1.0 / std::sqrt(t) - 1.0)).epsilon(1e-12));
    const auto s1 = Profile::sphere(1);
    StepFunction half;
    half.breaks = {0.0, 0.5};
    half.values = {1.0, 0.0};
    half.domain_end = 1.0;
    half.nonincreasing = true;
    for (double t : {0.1, 0.3})
        CHECK(hardy_operator(half, s1, t) == doctest::Approx((0.5 - t) / t).epsilon(1e-8));
    StepFunction zero;
    zero.breaks = {0.0};
    zero.values = {0.0};
    zero.domain_end = 1.0;
    zero.nonincreasing = true;
    CHECK(hardy_operator(zero, s1, 0.2) == 0.0);
    CHECK_THROWS_AS(hardy_operator(half, s1, 0.6), std::domain_error);
}

TEST_CASE("hardy operator norm: closed form n' and probe estimates") {
    const auto e2 = Profile::euclidean(2);
    const auto est = hardy_operator_norm_estimate(e2, RiNormSpec::Lp(1.0));
    CHECK(est.closed_form);
    CHECK(est.value == doctest::Approx(2.0));
    const auto e3 = hardy_operator_norm_estimate(Profile::euclidean(3), RiNormSpec::Lp(1.0));
    CHECK(e3.value == doctest::Approx(1.5));

    const auto sphere_l2 =
        hardy_operator_norm_estimate(Profile::sphere(2), RiNormSpec::Lp(2.0));
    CHECK(!sphere_l2.closed_form);
    CHECK(sphere_l2.value > 0.0);
}

TEST_CASE("ri_sobolev equality witness: tent with X = L1 gives 2 pi") {
    const auto& s = box2();
    const auto rep = ri_sobolev(s, Profile::euclidean(2), RiNormSpec::Lp(1.0),
                                radial_tent(s, 1.0));
    CHECK(rep.pass);
    CHECK(rep.lhs == doctest::Approx(2.0 * kPi).epsilon(0.02));
    CHECK(rep.rhs == doctest::Approx(2.0 * kPi).epsilon(0.02));
    CHECK(rep.extras.at("hardy_norm") == doctest::Approx(2.0));
}

TEST_CASE("sobolev fundamental constant c_{X,I}") {
    // sphere(2), X = L1: int_0^{1/2} I(t)/t dt = int sqrt((1-t)/t) dt
    const double got = sobolev_fundamental_constant(Profile::sphere(2), RiNormSpec::Lp(1.0));
    // closed form: int_0^{1/2} sqrt((1-t)/t) dt = (pi + 2) / 4
    CHECK(got == doctest::Approx((kPi + 2.0) / 4.0).epsilon(1e-6));
}

TEST_CASE("strichartz chain equality witness") {
    const auto& s = box2();
    Field g;
    g.values.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        g.values[i] = 1.0 / std::hypot(s.coord(0, i), s.coord(1, i));
    const auto rep = strichartz_check(s, Profile::euclidean(2), RiNormSpec::Lp(1.0),
                                      radial_tent(s, 1.0), g);
    CHECK(rep.hardy_littlewood.pass);
    CHECK(rep.extraction.pass);
    CHECK(rep.sobolev.pass);
    CHECK(rep.composite.pass);
    CHECK(rep.hardy_littlewood.lhs == doctest::Approx(kPi).epsilon(0.05));
    CHECK(rep.composite.ratio >= 0.95);
    CHECK(rep.composite.ratio <= 1.0 + 1e-9);
    CHECK(rep.composite.extras.at("g_norm") == doctest::Approx(0.5).epsilon(0.05));
}

TEST_CASE("brezis-wainger is report-only with finite ratios") {
    const auto& s = box2();
    const auto rep = brezis_wainger_report(s, radial_tent(s, 1.5), constant_field(s, 1.0));
    CHECK(rep.report_only);
    CHECK(rep.pass);
    CHECK(rep.ratio > 0.0);
    CHECK(std::isfinite(rep.ratio));
    const auto repz =
        brezis_wainger_report(s, constant_field(s, 0.0), constant_field(s, 1.0));
    CHECK(repz.ratio == 0.0);
}

TEST_CASE("transference: ordering required, scaling exact") {
    const auto& s = gauss_line();
    const auto g1 = Profile::log_concave(2.0);
    const auto g2 = g1.scaled(0.9);
    const auto proto = prototype_g(g1, 1.0);
    const Field w = construct_weight(s, proto, default_radial(s), g1);
    TestFunction tf;
    tf.field = mollified_indicator(s, 1.0, 0.5);
    tf.normalization = Normalization::median_zero;
    const auto rep = transference_check(g1, g2, s, w, tf);
    CHECK(rep.norm_monotonicity.pass);
    CHECK(rep.uncertainty.pass);
    CHECK(rep.pass);
    // reversed order must throw
    CHECK_THROWS_WITH_AS(transference_check(g2, g1, s, w, tf),
                         doctest::Contains("profiles_not_ordered"), std::runtime_error);
    // I2 = I1: both checks degenerate
    const auto repeq = transference_check(g1, g1, s, w, tf);
    CHECK(repeq.norm_monotonicity.lhs ==
          doctest::Approx(repeq.norm_monotonicity.rhs).epsilon(1e-14));
}
