// AVX2 kernel variants. Compiled with -mavx2 -ffp-contract=off; no FMA is
// used so that every lane performs the same mul/add sequence as the scalar
// reference and the results match bit for bit.

#include "isoperim/kernels.hpp"

#if defined(ISOPERIM_HAVE_AVX2) && (defined(__x86_64__) || defined(_M_X64))

#include <immintrin.h>

#include <cmath>
#include <limits>

namespace isoperim::kern {

namespace {

inline double hsum(__m256d v) {
    // (l0+l2) + (l1+l3), matching the scalar accumulator combine
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(s) + _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
}

inline double hmin(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_min_pd(lo, hi);
    return std::min(_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s)));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    __m128d s = _mm_max_pd(lo, hi);
    return std::max(_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s)));
}

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

double sum_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i];
    return r;
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d p = _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_add_pd(acc, p);
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

double abs_dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_and_pd(_mm256_loadu_pd(x + i), kAbsMask);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(a, _mm256_loadu_pd(y + i)));
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += std::fabs(x[i]) * y[i];
    return r;
}

double sq_dot_avx2(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_loadu_pd(x + i);
        __m256d p = _mm256_mul_pd(_mm256_mul_pd(a, a), _mm256_loadu_pd(y + i));
        acc = _mm256_add_pd(acc, p);
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i] * x[i] * y[i];
    return r;
}

double masked_sum_avx2(const double* w, const std::uint8_t* m, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        // expand 4 mask bytes into lane masks: nonzero byte -> all-ones lane
        __m128i bytes = _mm_cvtsi32_si128(*reinterpret_cast<const int*>(m + i));
        __m256i lanes = _mm256_cvtepu8_epi64(bytes);
        __m256d keep = _mm256_castsi256_pd(
            _mm256_cmpgt_epi64(lanes, _mm256_setzero_si256()));
        acc = _mm256_add_pd(acc, _mm256_and_pd(_mm256_loadu_pd(w + i), keep));
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += m[i] ? w[i] : 0.0;
    return r;
}

double sum_where_leq_avx2(const double* v, const double* w, double t, std::size_t n) {
    const __m256d tv = _mm256_set1_pd(t);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d keep = _mm256_cmp_pd(_mm256_loadu_pd(v + i), tv, _CMP_LE_OQ);
        acc = _mm256_add_pd(acc, _mm256_and_pd(_mm256_loadu_pd(w + i), keep));
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += v[i] <= t ? w[i] : 0.0;
    return r;
}

double sum_abs_where_gt_avx2(const double* v, const double* w, double t, std::size_t n) {
    const __m256d tv = _mm256_set1_pd(t);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_and_pd(_mm256_loadu_pd(v + i), kAbsMask);
        __m256d keep = _mm256_cmp_pd(a, tv, _CMP_GT_OQ);
        acc = _mm256_add_pd(acc, _mm256_and_pd(_mm256_loadu_pd(w + i), keep));
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += std::fabs(v[i]) > t ? w[i] : 0.0;
    return r;
}

double max_abs_avx2(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_max_pd(acc, _mm256_and_pd(_mm256_loadu_pd(x + i), kAbsMask));
    double r = hmax(acc);
    for (; i < n; ++i) r = std::max(r, std::fabs(x[i]));
    return r;
}

double min_sq_dist_2d_avx2(double qx, double qy, const double* xs, const double* ys,
                           std::size_t n) {
    const __m256d qxv = _mm256_set1_pd(qx);
    const __m256d qyv = _mm256_set1_pd(qy);
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d dx = _mm256_sub_pd(qxv, _mm256_loadu_pd(xs + i));
        __m256d dy = _mm256_sub_pd(qyv, _mm256_loadu_pd(ys + i));
        __m256d d = _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy));
        best = _mm256_min_pd(best, d);
    }
    double r = hmin(best);
    for (; i < n; ++i) {
        const double dx = qx - xs[i];
        const double dy = qy - ys[i];
        r = std::min(r, dx * dx + dy * dy);
    }
    return r;
}

double min_sq_dist_3d_avx2(double qx, double qy, double qz, const double* xs,
                           const double* ys, const double* zs, std::size_t n) {
    const __m256d qxv = _mm256_set1_pd(qx);
    const __m256d qyv = _mm256_set1_pd(qy);
    const __m256d qzv = _mm256_set1_pd(qz);
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d dx = _mm256_sub_pd(qxv, _mm256_loadu_pd(xs + i));
        __m256d dy = _mm256_sub_pd(qyv, _mm256_loadu_pd(ys + i));
        __m256d dz = _mm256_sub_pd(qzv, _mm256_loadu_pd(zs + i));
        __m256d d = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                  _mm256_mul_pd(dz, dz));
        best = _mm256_min_pd(best, d);
    }
    double r = hmin(best);
    for (; i < n; ++i) {
        const double dx = qx - xs[i];
        const double dy = qy - ys[i];
        const double dz = qz - zs[i];
        r = std::min(r, (dx * dx + dy * dy) + dz * dz);
    }
    return r;
}

double min_sq_box_dist_2d_avx2(double qx, double qy, const double* xs, const double* ys,
                               double half, std::size_t n) {
    const __m256d qxv = _mm256_set1_pd(qx);
    const __m256d qyv = _mm256_set1_pd(qy);
    const __m256d hv = _mm256_set1_pd(half);
    const __m256d zero = _mm256_setzero_pd();
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d dx = _mm256_and_pd(_mm256_sub_pd(qxv, _mm256_loadu_pd(xs + i)), kAbsMask);
        __m256d dy = _mm256_and_pd(_mm256_sub_pd(qyv, _mm256_loadu_pd(ys + i)), kAbsMask);
        dx = _mm256_max_pd(_mm256_sub_pd(dx, hv), zero);
        dy = _mm256_max_pd(_mm256_sub_pd(dy, hv), zero);
        best = _mm256_min_pd(best, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
    }
    double r = hmin(best);
    for (; i < n; ++i) {
        const double dx = std::max(std::fabs(qx - xs[i]) - half, 0.0);
        const double dy = std::max(std::fabs(qy - ys[i]) - half, 0.0);
        r = std::min(r, dx * dx + dy * dy);
    }
    return r;
}

double min_sq_box_dist_3d_avx2(double qx, double qy, double qz, const double* xs,
                               const double* ys, const double* zs, double half,
                               std::size_t n) {
    const __m256d qxv = _mm256_set1_pd(qx);
    const __m256d qyv = _mm256_set1_pd(qy);
    const __m256d qzv = _mm256_set1_pd(qz);
    const __m256d hv = _mm256_set1_pd(half);
    const __m256d zero = _mm256_setzero_pd();
    __m256d best = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d dx = _mm256_and_pd(_mm256_sub_pd(qxv, _mm256_loadu_pd(xs + i)), kAbsMask);
        __m256d dy = _mm256_and_pd(_mm256_sub_pd(qyv, _mm256_loadu_pd(ys + i)), kAbsMask);
        __m256d dz = _mm256_and_pd(_mm256_sub_pd(qzv, _mm256_loadu_pd(zs + i)), kAbsMask);
        dx = _mm256_max_pd(_mm256_sub_pd(dx, hv), zero);
        dy = _mm256_max_pd(_mm256_sub_pd(dy, hv), zero);
        dz = _mm256_max_pd(_mm256_sub_pd(dz, hv), zero);
        __m256d d = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)),
                                  _mm256_mul_pd(dz, dz));
        best = _mm256_min_pd(best, d);
    }
    double r = hmin(best);
    for (; i < n; ++i) {
        const double dx = std::max(std::fabs(qx - xs[i]) - half, 0.0);
        const double dy = std::max(std::fabs(qy - ys[i]) - half, 0.0);
        const double dz = std::max(std::fabs(qz - zs[i]) - half, 0.0);
        r = std::min(r, (dx * dx + dy * dy) + dz * dz);
    }
    return r;
}

const Backend kAvx2 = {
    "avx2",
    sum_avx2,
    dot_avx2,
    abs_dot_avx2,
    sq_dot_avx2,
    masked_sum_avx2,
    sum_where_leq_avx2,
    sum_abs_where_gt_avx2,
    max_abs_avx2,
    min_sq_dist_2d_avx2,
    min_sq_dist_3d_avx2,
    min_sq_box_dist_2d_avx2,
    min_sq_box_dist_3d_avx2,
};

}  // namespace

const Backend* avx2_backend() { return &kAvx2; }

}  // namespace isoperim::kern

#elif defined(__x86_64__) || defined(_M_X64)

namespace isoperim::kern {
const Backend* avx2_backend() { return nullptr; }
}  // namespace isoperim::kern

#endif
