// Acceptance suite: every criterion printed as one pass/fail line, with the
// stated tolerances and runtime budgets pinned in the assertions.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "isoperim/catalog.hpp"
#include "isoperim/inequalities.hpp"
#include "isoperim/kernels.hpp"
#include "isoperim/profile.hpp"
#include "isoperim/rearrange.hpp"
#include "isoperim/suite.hpp"
#include "isoperim/testfunctions.hpp"
#include "isoperim/weights.hpp"

using namespace isoperim;

namespace {

constexpr double kPi = std::numbers::pi;

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

void verdict(int criterion, bool pass, const std::string& what, double secs) {
    std::printf("[criterion %02d] %s  %s  (%.1fs)\n", criterion, pass ? "PASS" : "FAIL",
                what.c_str(), secs);
    std::fflush(stdout);
}

const SampleSpace& box2() {
    static const SampleSpace s = [] {
        SpaceSpec sp;
        sp.kind = SpaceKind::euclidean_box;
        sp.n = 2;
        sp.halfwidth = 4.0;
        sp.resolution = 256;
        sp.seed = 42;
        return build_space(sp);
    }();
    return s;
}

const SampleSpace& sphere2() {
    static const SampleSpace s = [] {
        SpaceSpec sp;
        sp.kind = SpaceKind::sphere;
        sp.n = 2;
        sp.resolution = 128;
        sp.seed = 42;
        return build_space(sp);
    }();
    return s;
}

const SampleSpace& gauss_line() {
    static const SampleSpace s = [] {
        SpaceSpec sp;
        sp.kind = SpaceKind::log_concave_product;
        sp.n = 1;
        sp.p = 2.0;
        sp.truncation = 8.0;
        sp.resolution = 4096;
        sp.seed = 42;
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

SampleSpace atom_space(std::vector<double> weights) {
    SampleSpace s;
    s.spec.kind = SpaceKind::euclidean_box;
    s.spec.n = 1;
    s.spec.resolution = static_cast<int>(weights.size());
    s.embed_dim = 1;
    const std::size_t n = weights.size();
    s.coords.assign(1, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) s.coords[0][i] = static_cast<double>(i);
    s.weights = std::move(weights);
    s.total_measure = kern::sum(s.weights);
    s.neighbors.resize(n);
    s.boundary_layer.assign(n, 0);
    s.grid_spacing = 1.0;
    return s;
}

}  // namespace

TEST_CASE("criterion 1: C(|x|) on R^2 equals 1/2 within 5 percent") {
    Stopwatch sw;
    const double C = isoperimetric_constant(abs_field(box2()), box2(), Profile::euclidean(2));
    const bool pass = std::fabs(C - 0.5) <= 0.05 * 0.5 && sw.seconds() < 30.0;
    std::ostringstream os;
    os << "C(|x|) = " << C << " vs oracle 0.5";
    verdict(1, pass, os.str(), sw.seconds());
    CHECK(C == doctest::Approx(0.5).epsilon(0.05));
    CHECK(sw.seconds() < 30.0);
}

TEST_CASE("criterion 2: lmar cross-check on |x| and 20 constructed weights") {
    Stopwatch sw;
    double worst = 0.0;
    {
        const auto a = analyze_weight(abs_field(box2()), box2(), Profile::euclidean(2));
        worst = std::max(worst, std::fabs(a.C_iso - a.M_norm) / a.M_norm);
    }
    struct Case {
        const SampleSpace* s;
        Profile p;
    };
    const std::vector<Case> cases = {{&box2(), Profile::euclidean(2)},
                                     {&sphere2(), Profile::sphere(2)},
                                     {&gauss_line(), Profile::log_concave(2.0)}};
    int built = 0;
    for (const auto& cs : cases) {
        const StepFunction proto = prototype_g(cs.p, cs.s->total_measure);
        for (double th : {1.0, 0.85, 0.7}) {
            for (double sc : {0.75, 1.0, 1.5}) {
                if (built >= 20) break;
                StepFunction g = proto;
                for (auto& v : g.values) v = sc * std::pow(v, th);
                const Field w = construct_weight(*cs.s, g, default_radial(*cs.s), cs.p);
                const auto a = analyze_weight(w, *cs.s, cs.p);
                worst = std::max(worst, std::fabs(a.C_iso - a.M_norm) / a.M_norm);
                ++built;
            }
        }
    }
    const bool pass = worst <= 0.02 && built >= 20 && sw.seconds() < 120.0;
    std::ostringstream os;
    os << "max |C - M|/M = " << worst << " over " << (built + 1) << " weights";
    verdict(2, pass, os.str(), sw.seconds());
    CHECK(worst <= 0.02);
    CHECK(built >= 20);
    CHECK(sw.seconds() < 120.0);
}

TEST_CASE("criterion 3: sphere profile vs closed form on a 512 grid") {
    Stopwatch sw;
    const auto p = Profile::sphere(2);
    double worst = 0.0;
    for (int k = 1; k <= 512; ++k) {
        const double t = k / 513.0;
        worst = std::max(worst, std::fabs(p.value(t) - std::sqrt(t * (1.0 - t))));
    }
    const bool pass = worst <= 1e-6 && sw.seconds() < 5.0;
    std::ostringstream os;
    os << "max |I - sqrt(t(1-t))| = " << worst;
    verdict(3, pass, os.str(), sw.seconds());
    CHECK(worst <= 1e-6);
    CHECK(sw.seconds() < 5.0);
}

TEST_CASE("criterion 4: gaussian profile center value and symmetry") {
    Stopwatch sw;
    const auto g = Profile::log_concave(2.0);
    const double dev_half = std::fabs(g.value(0.5) - 1.0 / std::sqrt(2.0 * kPi));
    double dev_sym = 0.0;
    for (int k = 1; k <= 128; ++k) {
        const double t = 0.5 * k / 129.0;
        dev_sym = std::max(dev_sym, std::fabs(g.value(t) - g.value(1.0 - t)));
    }
    const bool pass = dev_half <= 1e-8 && dev_sym <= 1e-9 && sw.seconds() < 5.0;
    std::ostringstream os;
    os << "|I(1/2) - 1/sqrt(2pi)| = " << dev_half << ", symmetry dev = " << dev_sym;
    verdict(4, pass, os.str(), sw.seconds());
    CHECK(dev_half <= 1e-8);
    CHECK(dev_sym <= 1e-9);
    CHECK(sw.seconds() < 5.0);
}

TEST_CASE("criterion 5: localized Poincare on 20+ (f, A) pairs") {
    Stopwatch sw;
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    int pairs = 0, failures = 0;
    double worst = 0.0;

    const auto& sph = sphere2();
    const auto psph = Profile::sphere(2);
    std::vector<Field> sph_fs = {coordinate_field(sph, 2), coordinate_field(sph, 0),
                                 cap_mollifier(sph, 0.6, 0.5), geodesic_tent(sph, 1.2)};
    for (const auto& f : sph_fs)
        for (int k = 0; k < 3; ++k) {
            const double zcut = -0.6 + 1.2 * U(rng);
            auto A = make_mask(sph, [zcut](const SampleSpace& s, std::size_t i) {
                return s.coord(s.embed_dim - 1, i) >= zcut;
            });
            const auto rep = local_poincare(sph, psph, f, A, 0.05);
            worst = std::max(worst, rep.ratio);
            if (!rep.pass) ++failures;
            ++pairs;
        }

    const auto& gl = gauss_line();
    const auto pg = Profile::log_concave(2.0);
    std::vector<Field> line_fs = {coordinate_field(gl, 0), gaussian_bump(gl, 0.7),
                                  mollified_indicator(gl, 1.0, 0.5),
                                  mollified_indicator(gl, 0.5, 1.0)};
    for (const auto& f : line_fs)
        for (int k = 0; k < 2; ++k) {
            const double a = -1.5 + 3.0 * U(rng);
            auto A = make_mask(gl, [a](const SampleSpace& s, std::size_t i) {
                return s.coord(0, i) <= a;
            });
            const auto rep = local_poincare(gl, pg, f, A, 0.05);
            worst = std::max(worst, rep.ratio);
            if (!rep.pass) ++failures;
            ++pairs;
        }

    const bool pass = pairs >= 20 && failures == 0 && worst <= 1.05 && sw.seconds() < 60.0;
    std::ostringstream os;
    os << pairs << " pairs, max ratio " << worst << ", " << failures << " failures";
    verdict(5, pass, os.str(), sw.seconds());
    CHECK(pairs >= 20);
    CHECK(failures == 0);
    CHECK(worst <= 1.05);
    CHECK(sw.seconds() < 60.0);
}

TEST_CASE("criterion 6: coarea on 10+ functions per space with the tent witness") {
    Stopwatch sw;
    int failures = 0;
    double worst = 0.0;
    auto track = [&](const InequalityReport& r) {
        worst = std::max(worst, r.ratio);
        if (r.ratio > 1.05) ++failures;
    };
    const auto& s = box2();
    const auto pe = Profile::euclidean(2);
    int nbox = 0;
    for (double R : {0.8, 1.0, 1.5, 2.0, 2.5})
        for (double off : {0.0, 0.7}) {
            track(coarea_check(s, pe, radial_tent(s, R, off, -off)));
            ++nbox;
        }
    const auto& sph = sphere2();
    const auto ps = Profile::sphere(2);
    int nsph = 0;
    track(coarea_check(sph, ps, coordinate_field(sph, 2)));
    track(coarea_check(sph, ps, coordinate_field(sph, 0)));
    nsph += 2;
    for (double r0 : {0.4, 0.8, 1.2})
        for (double ramp : {0.3, 0.6}) {
            track(coarea_check(sph, ps, cap_mollifier(sph, r0, ramp)));
            ++nsph;
        }
    track(coarea_check(sph, ps, geodesic_tent(sph, 1.0)));
    track(coarea_check(sph, ps, geodesic_tent(sph, 1.6)));
    nsph += 2;
    const auto& gl = gauss_line();
    const auto pg = Profile::log_concave(2.0);
    int ngl = 0;
    track(coarea_check(gl, pg, coordinate_field(gl, 0)));
    ++ngl;
    for (double a : {0.5, 1.0, 1.5})
        for (double ramp : {0.25, 0.5, 1.0}) {
            track(coarea_check(gl, pg, mollified_indicator(gl, a, ramp)));
            ++ngl;
        }
    track(coarea_check(gl, pg, gaussian_bump(gl, 0.8)));
    ++ngl;

    const auto eq = coarea_check(s, pe, radial_tent(s, 1.0));
    const bool eq_ok = eq.ratio >= 0.95 && eq.ratio <= 1.0 + 1e-9;
    const bool pass = nbox >= 10 && nsph >= 10 && ngl >= 10 && failures == 0 && eq_ok &&
                      sw.seconds() < 60.0;
    std::ostringstream os;
    os << nbox + nsph + ngl << " functions, max ratio " << worst << ", tent "
       << eq.ratio;
    verdict(6, pass, os.str(), sw.seconds());
    CHECK(failures == 0);
    CHECK(eq_ok);
    CHECK(nbox >= 10);
    CHECK(nsph >= 10);
    CHECK(ngl >= 10);
    CHECK(sw.seconds() < 60.0);
}

TEST_CASE("criterion 7: uncertainty closed forms and curves") {
    Stopwatch sw;
    const auto& s = box2();
    const auto pe = Profile::euclidean(2);
    const Field w = abs_field(s);
    const Field f = radial_tent(s, 1.0);

    const double l1 = integral_abs(s, f);
    const double g1 = integral_abs(s, gradient_modulus(s, f));
    Field wf;
    wf.values.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) wf.values[i] = w.values[i] * f.values[i];
    const double b1 = integral_abs(s, wf);
    const bool triple_ok = std::fabs(l1 - kPi / 3.0) <= 0.02 * kPi / 3.0 &&
                           std::fabs(g1 - kPi) <= 0.02 * kPi &&
                           std::fabs(b1 - kPi / 6.0) <= 0.02 * kPi / 6.0;

    TestFunction tf;
    tf.field = f;
    const auto mult = uncertainty_multiplicative(s, pe, w, tf, 1.0, 1.0);
    const bool mult_ok = mult.pass && mult.lhs <= kPi / std::sqrt(6.0) * 1.02;

    const auto add1 = uncertainty_additive(s, pe, w, tf, 1.0, 1.0);
    bool curve_ok = add1.pass && add1.curve.size() >= 256;
    const auto add2 = uncertainty_additive(s, pe, w, tf, 2.0, 1.0);
    const bool p2_ok =
        add2.pass &&
        std::fabs(add2.constant_used - 5.0 * add2.extras.at("C_w")) < 1e-12;

    const bool pass = triple_ok && mult_ok && curve_ok && p2_ok && sw.seconds() < 60.0;
    std::ostringstream os;
    os << "(||f||, ||grad||, ||wf||) = (" << l1 << ", " << g1 << ", " << b1 << ")";
    verdict(7, pass, os.str(), sw.seconds());
    CHECK(triple_ok);
    CHECK(mult_ok);
    CHECK(curve_ok);
    CHECK(p2_ok);
    CHECK(sw.seconds() < 60.0);
}

TEST_CASE("criterion 8: rearrangement oracle equivalence and Hardy-Littlewood") {
    Stopwatch sw;
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> W(0.01, 1.0), V(-5.0, 5.0), T(0.0, 1.0);

    // sort-based f* vs inversion of mu_f
    double worst_inv = 0.0;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<double> ws(200);
        for (auto& w : ws) w = W(rng);
        const auto s = atom_space(ws);
        Field f;
        f.values.resize(200);
        for (auto& v : f.values) v = V(rng);
        const auto fs = decreasing_rearrangement(f, s);
        const auto mu = distribution_function(f, s);
        for (std::size_t k = 0; k < fs.breaks.size(); ++k) {
            // inf{t : mu_f(t) <= b} evaluated on the step structure
            double inv = 0.0;
            if (!(mu.values.front() <= fs.breaks[k])) {
                inv = mu.breaks.back();
                for (std::size_t i = 1; i < mu.breaks.size(); ++i)
                    if (mu.values[i] <= fs.breaks[k]) {
                        inv = mu.breaks[i];
                        break;
                    }
            }
            worst_inv = std::max(worst_inv, std::fabs(inv - fs.values[k]));
        }
    }

    int violations = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<double> ws(50);
        for (auto& w : ws) w = W(rng);
        const auto s = atom_space(ws);
        Field u, v;
        u.values.resize(50);
        v.values.resize(50);
        for (auto& x : u.values) x = V(rng);
        for (auto& x : v.values) x = V(rng);
        const auto [lhs, rhs] = product_partial_integral(u, v, s, T(rng) * s.total_measure);
        if (lhs > rhs + 1e-12) ++violations;
    }
    const bool pass = worst_inv <= 1e-12 && violations == 0 && sw.seconds() < 30.0;
    std::ostringstream os;
    os << "max inversion deviation " << worst_inv << ", HL violations " << violations
       << "/1000";
    verdict(8, pass, os.str(), sw.seconds());
    CHECK(worst_inv <= 1e-12);
    CHECK(violations == 0);
    CHECK(sw.seconds() < 30.0);
}

TEST_CASE("criterion 9: r.i. Sobolev equality witness with X = L1") {
    Stopwatch sw;
    const auto rep = ri_sobolev(box2(), Profile::euclidean(2), RiNormSpec::Lp(1.0),
                                radial_tent(box2(), 1.0));
    const bool lhs_ok = std::fabs(rep.lhs - 2.0 * kPi) <= 0.02 * 2.0 * kPi;
    const bool rhs_ok = std::fabs(rep.rhs - 2.0 * kPi) <= 0.02 * 2.0 * kPi;
    const bool norm_ok = std::fabs(rep.extras.at("hardy_norm") - 2.0) < 1e-12;
    const bool pass = lhs_ok && rhs_ok && norm_ok && sw.seconds() < 30.0;
    std::ostringstream os;
    os << "lhs = " << rep.lhs << ", rhs = " << rep.rhs << " vs 2 pi = " << 2.0 * kPi;
    verdict(9, pass, os.str(), sw.seconds());
    CHECK(lhs_ok);
    CHECK(rhs_ok);
    CHECK(norm_ok);
    CHECK(sw.seconds() < 30.0);
}

TEST_CASE("criterion 10: Strichartz chain equality witness") {
    Stopwatch sw;
    const auto& s = box2();
    Field g;
    g.values.resize(s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        g.values[i] = 1.0 / std::hypot(s.coord(0, i), s.coord(1, i));
    const auto rep = strichartz_check(s, Profile::euclidean(2), RiNormSpec::Lp(1.0),
                                      radial_tent(s, 1.0), g);
    const bool links_ok = rep.hardy_littlewood.pass && rep.extraction.pass && rep.sobolev.pass;
    const bool comp_ok = rep.composite.ratio >= 0.95 && rep.composite.ratio <= 1.0 + 1e-9;
    const bool pass = links_ok && comp_ok && sw.seconds() < 30.0;
    std::ostringstream os;
    os << "composite ratio " << rep.composite.ratio << " (links "
       << rep.hardy_littlewood.ratio << ", " << rep.extraction.ratio << ", "
       << rep.sobolev.ratio << ")";
    verdict(10, pass, os.str(), sw.seconds());
    CHECK(links_ok);
    CHECK(comp_ok);
    CHECK(sw.seconds() < 30.0);
}

TEST_CASE("criterion 11: transference from the scaled Gaussian profile") {
    Stopwatch sw;
    const auto& s = gauss_line();
    const auto g1 = Profile::log_concave(2.0);
    const auto g2 = g1.scaled(0.9);
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> U(0.5, 2.0);
    int exact = 0;
    for (int k = 0; k < 20; ++k) {
        Field wk;
        wk.values.resize(s.size());
        const double a = U(rng), b = U(rng);
        for (std::size_t i = 0; i < s.size(); ++i) {
            const double x = s.coord(0, i);
            wk.values[i] = 0.2 + a * std::fabs(x) + b * x * x;
        }
        const double n1 = marcinkiewicz_weight_norm(wk, s, g1);
        const double n2 = marcinkiewicz_weight_norm(wk, s, g2);
        if (n1 <= n2) ++exact;
    }
    const auto proto = prototype_g(g1, 1.0);
    const Field w = construct_weight(s, proto, default_radial(s), g1);
    TestFunction tf;
    tf.field = mollified_indicator(s, 1.0, 0.5);
    tf.normalization = Normalization::median_zero;
    const auto rep = transference_check(g1, g2, s, w, tf);
    const bool pass = exact == 20 && rep.pass && sw.seconds() < 60.0;
    std::ostringstream os;
    os << exact << "/20 fields exactly monotone, uncertainty ratio "
       << rep.uncertainty.ratio;
    verdict(11, pass, os.str(), sw.seconds());
    CHECK(exact == 20);
    CHECK(rep.pass);
    CHECK(sw.seconds() < 60.0);
}

#ifdef ISOPERIM_CLI_PATH
namespace {
std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    REQUIRE_MESSAGE(static_cast<bool>(is), "missing ", path);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}
}  // namespace

TEST_CASE("criterion 12: byte-identical reports across runs and job counts") {
    Stopwatch sw;
    const std::string cli = ISOPERIM_CLI_PATH;
    auto run = [&](const std::string& out, int jobs) {
        std::ostringstream cmd;
        cmd << cli << " verify --suite all --seed 42 --jobs " << jobs << " --out " << out
            << " > " << out << ".log 2>&1";
        return std::system(cmd.str().c_str());
    };
    const int rc1 = run("acc_run1", 1);
    const int rc2 = run("acc_run2", 1);
    const int rc3 = run("acc_run3", 8);
    const std::string r1 = slurp("acc_run1/report.json");
    const std::string r2 = slurp("acc_run2/report.json");
    const std::string r3 = slurp("acc_run3/report.json");
    const bool identical = r1 == r2 && r1 == r3;
    const bool clean = rc1 == 0 && rc2 == 0 && rc3 == 0;
    const bool pass = identical && clean && sw.seconds() < 600.0;
    std::ostringstream os;
    os << "3 runs (jobs 1,1,8), exit codes " << rc1 << "/" << rc2 << "/" << rc3
       << (identical ? ", reports byte-identical" : ", reports DIFFER");
    verdict(12, pass, os.str(), sw.seconds());
    CHECK(clean);
    CHECK(identical);
    CHECK(sw.seconds() < 600.0);
}
#endif
