#include "velsps/simd/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define VELSPS_HAVE_AVX2 1
#include <immintrin.h>
#endif

#include <cmath>
#include <limits>

namespace velsps::simd {

#ifdef VELSPS_HAVE_AVX2
namespace {

__attribute__((target("avx2"))) inline double hmin(__m256d v) {
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, v);
    double m = lanes[0];
    for (int i = 1; i < 4; ++i)
        if (lanes[i] < m) m = lanes[i];
    return m;
}

__attribute__((target("avx2"))) double min_sq_distance_avx2(const double* p, const double* set,
                                                            std::size_t n, std::size_t stride,
                                                            std::size_t dim) {
    double best = std::numeric_limits<double>::infinity();
    __m256d vbest = _mm256_set1_pd(best);
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = 0; k < dim; ++k) {
            __m256d d = _mm256_sub_pd(_mm256_set1_pd(p[k]), _mm256_loadu_pd(set + k * stride + j));
            acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
        }
        vbest = _mm256_min_pd(acc, vbest);
    }
    best = hmin(vbest);
    for (; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t k = 0; k < dim; ++k) {
            double d = p[k] - set[k * stride + j];
            acc = acc + d * d;
        }
        if (acc < best) best = acc;
    }
    return best;
}

__attribute__((target("avx2"))) double min_l1_distance_avx2(const double* p, const double* set,
                                                            std::size_t n, std::size_t stride,
                                                            std::size_t dim, std::size_t skip) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
    __m256d vbest = inf;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t k = 0; k < dim; ++k) {
            __m256d d = _mm256_sub_pd(_mm256_set1_pd(p[k]), _mm256_loadu_pd(set + k * stride + j));
            acc = _mm256_add_pd(acc, _mm256_andnot_pd(sign_mask, d));
        }
        if (skip >= j && skip < j + 4) {
            alignas(32) double lanes[4];
            _mm256_store_pd(lanes, acc);
            lanes[skip - j] = std::numeric_limits<double>::infinity();
            acc = _mm256_load_pd(lanes);
        }
        vbest = _mm256_min_pd(acc, vbest);
    }
    double best = hmin(vbest);
    for (; j < n; ++j) {
        if (j == skip) continue;
        double acc = 0.0;
        for (std::size_t k = 0; k < dim; ++k) acc = acc + std::fabs(p[k] - set[k * stride + j]);
        if (acc < best) best = acc;
    }
    return best;
}

__attribute__((target("avx2"))) void ar1_update_avx2(double* x, const double* e, std::size_t n,
                                                     double rho, double s) {
    const __m256d vr = _mm256_set1_pd(rho);
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d a = _mm256_mul_pd(vr, _mm256_loadu_pd(x + i));
        __m256d b = _mm256_mul_pd(vs, _mm256_loadu_pd(e + i));
        _mm256_storeu_pd(x + i, _mm256_add_pd(a, b));
    }
    for (; i < n; ++i) x[i] = rho * x[i] + s * e[i];
}

const Kernels kAvx2{"avx2", &min_sq_distance_avx2, &min_l1_distance_avx2, &ar1_update_avx2};

}  // namespace

const Kernels* avx2_kernels() { return &kAvx2; }
bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }

#else

const Kernels* avx2_kernels() { return nullptr; }
bool cpu_has_avx2() { return false; }

#endif

}  // namespace velsps::simd
