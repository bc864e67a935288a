#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "isoperim/kernels.hpp"

using namespace isoperim;

namespace {

std::vector<double> random_vec(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
    std::uniform_real_distribution<double> U(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = U(rng);
    return v;
}

}  // namespace

TEST_CASE("scalar and avx2 backends agree bit for bit") {
    const auto& sc = kern::scalar_backend();
#if defined(__x86_64__) || defined(_M_X64)
    const auto* ax = kern::avx2_backend();
    if (!ax || !__builtin_cpu_supports("avx2")) {
        MESSAGE("avx2 unavailable; equivalence trivially skipped");
        return;
    }
    std::mt19937_64 rng(20240809);
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 64u, 1000u, 4097u}) {
        auto x = random_vec(rng, n, -10.0, 10.0);
        auto y = random_vec(rng, n, 0.01, 5.0);
        std::vector<std::uint8_t> m(n);
        for (auto& b : m) b = rng() & 1;

        CHECK(sc.sum(x.data(), n) == ax->sum(x.data(), n));
        CHECK(sc.dot(x.data(), y.data(), n) == ax->dot(x.data(), y.data(), n));
        CHECK(sc.abs_dot(x.data(), y.data(), n) == ax->abs_dot(x.data(), y.data(), n));
        CHECK(sc.sq_dot(x.data(), y.data(), n) == ax->sq_dot(x.data(), y.data(), n));
        CHECK(sc.masked_sum(y.data(), m.data(), n) == ax->masked_sum(y.data(), m.data(), n));
        for (double t : {-5.0, 0.0, 1.5}) {
            CHECK(sc.sum_where_leq(x.data(), y.data(), t, n) ==
                  ax->sum_where_leq(x.data(), y.data(), t, n));
            CHECK(sc.sum_abs_where_gt(x.data(), y.data(), t, n) ==
                  ax->sum_abs_where_gt(x.data(), y.data(), t, n));
        }
        CHECK(sc.max_abs(x.data(), n) == ax->max_abs(x.data(), n));
        if (n > 0) {
            CHECK(sc.min_sq_dist_2d(0.3, -0.7, x.data(), y.data(), n) ==
                  ax->min_sq_dist_2d(0.3, -0.7, x.data(), y.data(), n));
            auto z = random_vec(rng, n, -2.0, 2.0);
            CHECK(sc.min_sq_dist_3d(0.3, -0.7, 1.1, x.data(), y.data(), z.data(), n) ==
                  ax->min_sq_dist_3d(0.3, -0.7, 1.1, x.data(), y.data(), z.data(), n));
        }
    }
#else
    MESSAGE("non-x86 build; only the scalar backend exists");
    (void)sc;
#endif
}

TEST_CASE("kernel results match naive reference semantics") {
    std::mt19937_64 rng(7);
    const std::size_t n = 999;
    auto x = random_vec(rng, n, -4.0, 4.0);
    auto w = random_vec(rng, n, 0.0, 2.0);

    double naive_sum = 0.0, naive_dot = 0.0, naive_abs = 0.0, naive_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        naive_sum += x[i];
        naive_dot += x[i] * w[i];
        naive_abs += std::fabs(x[i]) * w[i];
        naive_sq += x[i] * x[i] * w[i];
    }
    CHECK(kern::sum(x) == doctest::Approx(naive_sum).epsilon(1e-13));
    CHECK(kern::dot(x, w) == doctest::Approx(naive_dot).epsilon(1e-13));
    CHECK(kern::abs_dot(x, w) == doctest::Approx(naive_abs).epsilon(1e-13));
    CHECK(kern::sq_dot(x, w) == doctest::Approx(naive_sq).epsilon(1e-13));

    double leq = 0.0, gt = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] <= 0.5) leq += w[i];
        if (std::fabs(x[i]) > 0.5) gt += w[i];
    }
    CHECK(kern::sum_where_leq(x, w, 0.5) == doctest::Approx(leq).epsilon(1e-13));
    CHECK(kern::sum_abs_where_gt(x, w, 0.5) == doctest::Approx(gt).epsilon(1e-13));

    double best = 1e300;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = 0.2 - x[i], dy = -0.4 - w[i];
        best = std::min(best, dx * dx + dy * dy);
    }
    CHECK(kern::min_sq_dist_2d(0.2, -0.4, x, w) == doctest::Approx(best).epsilon(1e-14));
}

TEST_CASE("edge cases: empty inputs") {
    std::vector<double> empty;
    CHECK(kern::sum(empty) == 0.0);
    CHECK(kern::max_abs(empty) == 0.0);
    CHECK(std::isinf(kern::min_sq_dist_2d(0, 0, empty, empty)));
}

TEST_CASE("force_backend switches and rejects unknown names") {
    kern::force_backend("scalar");
    CHECK(kern::active_backend() == "scalar");
    CHECK_THROWS_AS(kern::force_backend("sse9"), std::invalid_argument);
    kern::force_backend("auto");
}
