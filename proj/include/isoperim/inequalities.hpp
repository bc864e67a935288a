#pragma once

// Verifiers for the inequalities: localized Poincare, coarea, additive and
// multiplicative uncertainty, the isoperimetric Hardy operator, r.i. Sobolev,
// the Strichartz chain, transference, and the Brezis-Wainger ratio report.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isoperim/profile.hpp"
#include "isoperim/rearrange.hpp"
#include "isoperim/space.hpp"
#include "isoperim/testfunctions.hpp"
#include "isoperim/weights.hpp"

namespace isoperim {

struct CurveRow {
    double r = 0.0, lhs = 0.0, rhs = 0.0, ratio = 0.0;
};

struct Provenance {
    std::uint64_t seed = 0;
    int resolution = 0;
    double tolerance = 0.0;
    std::string space_id;
    std::string profile_id;
};

struct InequalityReport {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double constant_used = 0.0;
    double ratio = 0.0;
    bool pass = false;
    bool report_only = false;
    double tolerance = 0.05;
    std::string note;
    std::map<std::string, double> extras;
    std::vector<CurveRow> curve;
    Provenance prov;

    static InequalityReport make(std::string name, double lhs, double rhs, double tol,
                                 double constant_used = 0.0);
};

// int_A |f - m(f)| d mu <= Phi(mu(A)) int |grad f| d mu.
InequalityReport local_poincare(const SampleSpace& space, const Profile& profile,
                                const Field& f, const std::vector<std::uint8_t>& A,
                                double tol = 0.05);

// int I(mu({f > s})) ds <= int |grad f| d mu; s-quadrature over the attained
// range (absolute-value form on infinite-measure kinds, compact support
// required there).
InequalityReport coarea_check(const SampleSpace& space, const Profile& profile,
                              const Field& f, double tol = 0.05, std::size_t levels = 1024);

// ||f||_p <= K1 r ||grad f||_p + 2 r^{-alpha} ||w^alpha f||_p per grid r, with
// K1 = 2 C(w) at p = 1 and C(w)(2p+1) for p > 1.
InequalityReport uncertainty_additive(const SampleSpace& space, const Profile& profile,
                                      const Field& w, const TestFunction& tf, double p,
                                      double alpha, std::vector<double> r_grid = {},
                                      double tol = 0.05,
                                      const WeightConfig& wcfg = {});

// The balanced multiplicative form; also reports the additive-curve minimum.
InequalityReport uncertainty_multiplicative(const SampleSpace& space, const Profile& profile,
                                            const Field& w, const TestFunction& tf, double p,
                                            double alpha, double tol = 0.05,
                                            const WeightConfig& wcfg = {});

// Q~ f(t) = (I(t)/t) int_t^{mu/2} f(s)/I(s) ds on step functions.
double hardy_operator(const StepFunction& sf, const Profile& profile, double t);

struct HardyNormEstimate {
    double value = 0.0;
    bool closed_form = false;
    bool degenerate = false;
};

// Operator norm on X-bar: n' in closed form for power profiles with L^1,
// otherwise a probe-family lower estimate.
HardyNormEstimate hardy_operator_norm_estimate(const Profile& profile, const RiNormSpec& norm,
                                               const std::vector<StepFunction>& probes = {});

// ||f* I(t)/t chi_(0,mu/2)||_Xbar <= ||Q~|| ||grad f||_X + (2 c_{X,I}/mu) ||f||_1.
InequalityReport ri_sobolev(const SampleSpace& space, const Profile& profile,
                            const RiNormSpec& norm, const Field& f, double tol = 0.05);

// c_{X,I} = ||(I(t)/t) chi_(0,mu/2)||_Xbar.
double sobolev_fundamental_constant(const Profile& profile, const RiNormSpec& norm);

struct StrichartzReport {
    InequalityReport hardy_littlewood;  // ||fg||_X <= ||f* g*||_Xbar
    InequalityReport extraction;        // ||f* g*|| <= ||g||_M(Phi) ||f* I/t||
    InequalityReport sobolev;           // ||f* I/t|| <= ||Q~|| ||grad f||_X (+ L1 term)
    InequalityReport composite;         // ||fg||_X <= ||g||_M(Phi) ||Q~|| ||grad f||_X (+...)
    bool pass = false;
};

StrichartzReport strichartz_check(const SampleSpace& space, const Profile& profile,
                                  const RiNormSpec& norm, const Field& f, const Field& g,
                                  double tol = 0.05, const WeightConfig& wcfg = {});

// ||fg||_n / (||g||_{L_log(n,inf)} ||grad f||_n); no pass/fail, the sharp
// constant is not specified.
InequalityReport brezis_wainger_report(const SampleSpace& space, const Field& f,
                                       const Field& g);

struct TransferenceReport {
    InequalityReport norm_monotonicity;  // ||1/w||_{M(Phi1)} <= ||1/w||_{M(Phi2)}
    InequalityReport uncertainty;        // multiplicative with the Phi2 constant
    bool pass = false;
};

// Requires I1 >= I2 on a probe grid (throws profiles_not_ordered otherwise).
TransferenceReport transference_check(const Profile& profile1, const Profile& profile2,
                                      const SampleSpace& space1, const Field& w,
                                      const TestFunction& tf, double tol = 0.05,
                                      const WeightConfig& wcfg = {});

// default log grid around the balancing radius for the uncertainty curve
std::vector<double> default_r_grid(double r_balance, std::size_t count = 256);

}  // namespace isoperim
