#pragma once

// Data-parallel reduction kernels used by the measure/integral layer.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected at runtime. Both variants reduce in the same blocked order
// (4 interleaved accumulators, horizontal combine (a0+a2)+(a1+a3), then the
// scalar tail), so their results are bit-identical. Equivalence is asserted
// in tests/test_kernels.cpp.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace isoperim::kern {

// Sum of x.
double sum(std::span<const double> x);

// Sum of x[i]*y[i].
double dot(std::span<const double> x, std::span<const double> y);

// Sum of |x[i]|*y[i].
double abs_dot(std::span<const double> x, std::span<const double> y);

// Sum of x[i]^2*y[i].
double sq_dot(std::span<const double> x, std::span<const double> y);

// Sum of w[i] over indices with mask[i] != 0.
double masked_sum(std::span<const double> w, std::span<const std::uint8_t> mask);

// Sum of w[i] over indices with v[i] <= r  (weight level sets {w <= r}).
double sum_where_leq(std::span<const double> v, std::span<const double> w, double r);

// Sum of w[i] over indices with |v[i]| > t  (distribution functions).
double sum_abs_where_gt(std::span<const double> v, std::span<const double> w, double t);

// max |x[i]|; 0 for empty input.
double max_abs(std::span<const double> x);

// min over i of (qx-xs[i])^2 + (qy-ys[i])^2; +inf for empty input.
double min_sq_dist_2d(double qx, double qy,
                      std::span<const double> xs, std::span<const double> ys);

// 3-D variant.
double min_sq_dist_3d(double qx, double qy, double qz,
                      std::span<const double> xs, std::span<const double> ys,
                      std::span<const double> zs);

// min over i of the squared distance from q to the axis-aligned square cell
// centered at (xs[i], ys[i]) with half-width `half`; +inf for empty input.
double min_sq_box_dist_2d(double qx, double qy, std::span<const double> xs,
                          std::span<const double> ys, double half);

// cubic-cell variant.
double min_sq_box_dist_3d(double qx, double qy, double qz, std::span<const double> xs,
                          std::span<const double> ys, std::span<const double> zs,
                          double half);

// Name of the dispatched backend ("scalar" or "avx2").
std::string_view active_backend();

// Force a backend: "scalar", "avx2" or "auto". Throws std::invalid_argument
// for unknown names or if the requested backend is unavailable on this CPU.
// Intended for tests and the ISOPERIM_KERNELS environment variable.
void force_backend(std::string_view name);

struct Backend {
    const char* name;
    double (*sum)(const double*, std::size_t);
    double (*dot)(const double*, const double*, std::size_t);
    double (*abs_dot)(const double*, const double*, std::size_t);
    double (*sq_dot)(const double*, const double*, std::size_t);
    double (*masked_sum)(const double*, const std::uint8_t*, std::size_t);
    double (*sum_where_leq)(const double*, const double*, double, std::size_t);
    double (*sum_abs_where_gt)(const double*, const double*, double, std::size_t);
    double (*max_abs)(const double*, std::size_t);
    double (*min_sq_dist_2d)(double, double, const double*, const double*, std::size_t);
    double (*min_sq_dist_3d)(double, double, double, const double*, const double*,
                             const double*, std::size_t);
    double (*min_sq_box_dist_2d)(double, double, const double*, const double*, double,
                                 std::size_t);
    double (*min_sq_box_dist_3d)(double, double, double, const double*, const double*,
                                 const double*, double, std::size_t);
};

const Backend& scalar_backend();
#if defined(__x86_64__) || defined(_M_X64)
const Backend* avx2_backend();  // nullptr if not compiled in
#endif

}  // namespace isoperim::kern
