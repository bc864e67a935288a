#include "isoperim/kernels.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace isoperim::kern {

namespace {

// Scalar reference kernels. The 4-accumulator blocking mirrors the AVX2
// lane layout so both backends produce bit-identical results.

double sum_scalar(const double* x, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc[0] += x[i + 0];
        acc[1] += x[i + 1];
        acc[2] += x[i + 2];
        acc[3] += x[i + 3];
    }
    double r = (acc[0] + acc[2]) + (acc[1] + acc[3]);
    for (; i < n; ++i) r += x[i];
    return r;
}

double dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc[0] += x[i + 0] * y[i + 0];
        acc[1] += x[i + 1] * y[i + 1];
        acc[2] += x[i + 2] * y[i + 2];
        acc[3] += x[i + 3] * y[i + 3];
    }
    double r = (acc[0] + acc[2]) + (acc[1] + acc[3]);
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

double abs_dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc[0] += std::fabs(x[i + 0]) * y[i + 0];
        acc[1] += std::fabs(x[i + 1]) * y[i + 1];
        acc[2] += std::fabs(x[i + 2]) * y[i + 2];
        acc[3] += std::fabs(x[i + 3]) * y[i + 3];
    }
    double r = (acc[0] + acc[2]) + (acc[1] + acc[3]);
    for (; i < n; ++i) r += std::fabs(x[i]) * y[i];
    return r;
}

double sq_dot_scalar(const double* x, const double* y, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc[0] += x[i + 0] * x[i + 0] * y[i + 0];
        acc[1] += x[i + 1] * x[i + 1] * y[i + 1];
        acc[2] += x[i + 2] * x[i + 2] * y[i + 2];
        acc[3] += x[i + 3] * x[i + 3] * y[i + 3];
    }
    double r = (acc[0] + acc[2]) + (acc[1] + acc[3]);
    for (; i < n; ++i) r += x[i] * x[i] * y[i];
    return r;
}

double masked_sum_scalar(const double* w, const std::uint8_t* m, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc[0] += m[i + 0] ? w[i + 0] : 0.0;
        acc[1] += m[i + 1] ? w[i + 1] : 0.0;
        acc[2] += m[i + 2] ? w[i + 2] : 0.0;
        acc[3] += m[i + 3] ? w[i + 3] : 0.0;
    }
    double r = (acc[0] + acc[2]) + (acc[1] + acc[3]);
    for (; i < n; ++i) r += m[i] ? w[i] : 0.0;
    return r;
}

double sum_where_leq_scalar(const double* v, const double* w, double t, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc[0] += v[i + 0] <= t ? w[i + 0] : 0.0;
        acc[1] += v[i + 1] <= t ? w[i + 1] : 0.0;
        acc[2] += v[i + 2] <= t ? w[i + 2] : 0.0;
        acc[3] += v[i + 3] <= t ? w[i + 3] : 0.0;
    }
    double r = (acc[0] + acc[2]) + (acc[1] + acc[3]);
    for (; i < n; ++i) r += v[i] <= t ? w[i] : 0.0;
    return r;
}

double sum_abs_where_gt_scalar(const double* v, const double* w, double t, std::size_t n) {
    double acc[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc[0] += std::fabs(v[i + 0]) > t ? w[i + 0] : 0.0;
        acc[1] += std::fabs(v[i + 1]) > t ? w[i + 1] : 0.0;
        acc[2] += std::fabs(v[i + 2]) > t ? w[i + 2] : 0.0;
        acc[3] += std::fabs(v[i + 3]) > t ? w[i + 3] : 0.0;
    }
    double r = (acc[0] + acc[2]) + (acc[1] + acc[3]);
    for (; i < n; ++i) r += std::fabs(v[i]) > t ? w[i] : 0.0;
    return r;
}

double max_abs_scalar(const double* x, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(x[i]));
    return m;
}

double min_sq_dist_2d_scalar(double qx, double qy, const double* xs, const double* ys,
                             std::size_t n) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = qx - xs[i];
        const double dy = qy - ys[i];
        const double d = dx * dx + dy * dy;
        if (d < best) best = d;
    }
    return best;
}

double min_sq_dist_3d_scalar(double qx, double qy, double qz, const double* xs,
                             const double* ys, const double* zs, std::size_t n) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = qx - xs[i];
        const double dy = qy - ys[i];
        const double dz = qz - zs[i];
        const double d = (dx * dx + dy * dy) + dz * dz;
        if (d < best) best = d;
    }
    return best;
}

double min_sq_box_dist_2d_scalar(double qx, double qy, const double* xs, const double* ys,
                                 double half, std::size_t n) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::max(std::fabs(qx - xs[i]) - half, 0.0);
        const double dy = std::max(std::fabs(qy - ys[i]) - half, 0.0);
        const double d = dx * dx + dy * dy;
        if (d < best) best = d;
    }
    return best;
}

double min_sq_box_dist_3d_scalar(double qx, double qy, double qz, const double* xs,
                                 const double* ys, const double* zs, double half,
                                 std::size_t n) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::max(std::fabs(qx - xs[i]) - half, 0.0);
        const double dy = std::max(std::fabs(qy - ys[i]) - half, 0.0);
        const double dz = std::max(std::fabs(qz - zs[i]) - half, 0.0);
        const double d = (dx * dx + dy * dy) + dz * dz;
        if (d < best) best = d;
    }
    return best;
}

const Backend kScalar = {
    "scalar",
    sum_scalar,
    dot_scalar,
    abs_dot_scalar,
    sq_dot_scalar,
    masked_sum_scalar,
    sum_where_leq_scalar,
    sum_abs_where_gt_scalar,
    max_abs_scalar,
    min_sq_dist_2d_scalar,
    min_sq_dist_3d_scalar,
    min_sq_box_dist_2d_scalar,
    min_sq_box_dist_3d_scalar,
};

const Backend* pick_auto() {
#if defined(__x86_64__) || defined(_M_X64)
    if (const Backend* b = avx2_backend(); b && __builtin_cpu_supports("avx2")) return b;
#endif
    return &kScalar;
}

const Backend* pick_initial() {
    if (const char* env = std::getenv("ISOPERIM_KERNELS")) {
        std::string_view want(env);
        if (want == "scalar") return &kScalar;
#if defined(__x86_64__) || defined(_M_X64)
        if (want == "avx2") {
            if (const Backend* b = avx2_backend(); b && __builtin_cpu_supports("avx2")) return b;
        }
#endif
        // unknown or unavailable: fall through to auto
    }
    return pick_auto();
}

const Backend*& current() {
    static const Backend* b = pick_initial();
    return b;
}

}  // namespace

const Backend& scalar_backend() { return kScalar; }

std::string_view active_backend() { return current()->name; }

void force_backend(std::string_view name) {
    if (name == "scalar") {
        current() = &kScalar;
        return;
    }
    if (name == "auto") {
        current() = pick_auto();
        return;
    }
#if defined(__x86_64__) || defined(_M_X64)
    if (name == "avx2") {
        if (const Backend* b = avx2_backend(); b && __builtin_cpu_supports("avx2")) {
            current() = b;
            return;
        }
        throw std::invalid_argument("kernels: avx2 backend unavailable on this CPU");
    }
#endif
    throw std::invalid_argument("kernels: unknown backend '" + std::string(name) + "'");
}

double sum(std::span<const double> x) { return current()->sum(x.data(), x.size()); }

double dot(std::span<const double> x, std::span<const double> y) {
    return current()->dot(x.data(), y.data(), x.size());
}

double abs_dot(std::span<const double> x, std::span<const double> y) {
    return current()->abs_dot(x.data(), y.data(), x.size());
}

double sq_dot(std::span<const double> x, std::span<const double> y) {
    return current()->sq_dot(x.data(), y.data(), x.size());
}

double masked_sum(std::span<const double> w, std::span<const std::uint8_t> mask) {
    return current()->masked_sum(w.data(), mask.data(), w.size());
}

double sum_where_leq(std::span<const double> v, std::span<const double> w, double r) {
    return current()->sum_where_leq(v.data(), w.data(), r, v.size());
}

double sum_abs_where_gt(std::span<const double> v, std::span<const double> w, double t) {
    return current()->sum_abs_where_gt(v.data(), w.data(), t, v.size());
}

double max_abs(std::span<const double> x) { return current()->max_abs(x.data(), x.size()); }

double min_sq_dist_2d(double qx, double qy, std::span<const double> xs,
                      std::span<const double> ys) {
    return current()->min_sq_dist_2d(qx, qy, xs.data(), ys.data(), xs.size());
}

double min_sq_dist_3d(double qx, double qy, double qz, std::span<const double> xs,
                      std::span<const double> ys, std::span<const double> zs) {
    return current()->min_sq_dist_3d(qx, qy, qz, xs.data(), ys.data(), zs.data(), xs.size());
}

double min_sq_box_dist_2d(double qx, double qy, std::span<const double> xs,
                          std::span<const double> ys, double half) {
    return current()->min_sq_box_dist_2d(qx, qy, xs.data(), ys.data(), half, xs.size());
}

double min_sq_box_dist_3d(double qx, double qy, double qz, std::span<const double> xs,
                          std::span<const double> ys, std::span<const double> zs,
                          double half) {
    return current()->min_sq_box_dist_3d(qx, qy, qz, xs.data(), ys.data(), zs.data(), half,
                                         xs.size());
}

}  // namespace isoperim::kern
