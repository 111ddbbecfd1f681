// AVX2 variants of the batch kernels. Compiled with -mavx2 -mfma; execution is
// gated at runtime by the dispatcher.

#include "shapesphere/batch.hpp"

#if defined(__AVX2__)

#include <immintrin.h>

#include <cmath>

namespace shapesphere::batch {

namespace {

inline __m256d pair_distance2(__m256d x, __m256d y, double bx, double by) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    __m256d dotp = _mm256_fmadd_pd(y, _mm256_set1_pd(by), _mm256_mul_pd(x, _mm256_set1_pd(bx)));
    return _mm256_mul_pd(two, _mm256_sub_pd(one, dotp));
}

void u_star_avx2(const PotentialCoefficients& c, const double* px, const double* py,
                 const double* pz, std::size_t n, double* value, double* gx, double* gy,
                 double* gz) {
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d x = _mm256_loadu_pd(px + j);
        const __m256d y = _mm256_loadu_pd(py + j);
        const __m256d z = _mm256_loadu_pd(pz + j);
        __m256d u = _mm256_setzero_pd();
        __m256d Bx = _mm256_setzero_pd();
        __m256d By = _mm256_setzero_pd();
        for (int i = 0; i < 3; ++i) {
            const __m256d d2 = pair_distance2(x, y, c.bx[i], c.by[i]);
            const __m256d d = _mm256_sqrt_pd(d2);
            const __m256d ki = _mm256_set1_pd(c.k[i]);
            const __m256d inv = _mm256_div_pd(ki, d);
            u = _mm256_add_pd(u, inv);
            const __m256d inv3 = _mm256_div_pd(inv, d2); // k_i / d^3
            Bx = _mm256_fmadd_pd(inv3, _mm256_set1_pd(c.bx[i]), Bx);
            By = _mm256_fmadd_pd(inv3, _mm256_set1_pd(c.by[i]), By);
        }
        _mm256_storeu_pd(value + j, u);
        if (gx) {
            const __m256d bp = _mm256_fmadd_pd(By, y, _mm256_mul_pd(Bx, x));
            _mm256_storeu_pd(gx + j, _mm256_fnmadd_pd(bp, x, Bx));
            _mm256_storeu_pd(gy + j, _mm256_fnmadd_pd(bp, y, By));
            _mm256_storeu_pd(gz + j, _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(bp, z)));
        }
    }
    if (j < n)
        u_star_batch_scalar()(c, px + j, py + j, pz + j, n - j, value + j, gx ? gx + j : nullptr,
                              gy ? gy + j : nullptr, gz ? gz + j : nullptr);
}

void kg_avx2(const double* px, const double* py, const double* pz, std::size_t n, double* kg) {
    const double kconst = std::sqrt(2.0) / 3.0;
    const double bx[3] = {0.5, 0.5, -1.0};
    const double by[3] = {-std::sqrt(3.0) / 2.0, std::sqrt(3.0) / 2.0, 0.0};
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
        const __m256d x = _mm256_loadu_pd(px + j);
        const __m256d y = _mm256_loadu_pd(py + j);
        const __m256d z = _mm256_loadu_pd(pz + j);
        __m256d e[3], d2v[3];
        __m256d Bx = _mm256_setzero_pd(), By = _mm256_setzero_pd();
        for (int i = 0; i < 3; ++i) {
            const __m256d d2 = pair_distance2(x, y, bx[i], by[i]);
            d2v[i] = d2;
            const __m256d d = _mm256_sqrt_pd(d2);
            e[i] = _mm256_div_pd(_mm256_set1_pd(1.0), _mm256_mul_pd(d2, d));
            const __m256d ke = _mm256_mul_pd(_mm256_set1_pd(kconst), e[i]);
            Bx = _mm256_fmadd_pd(ke, _mm256_set1_pd(bx[i]), Bx);
            By = _mm256_fmadd_pd(ke, _mm256_set1_pd(by[i]), By);
        }
        const __m256d bp = _mm256_fmadd_pd(By, y, _mm256_mul_pd(Bx, x));
        const __m256d gxv = _mm256_fnmadd_pd(bp, x, Bx);
        const __m256d gyv = _mm256_fnmadd_pd(bp, y, By);
        const __m256d gzv = _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(bp, z));
        const __m256d gn2 = _mm256_fmadd_pd(
            gzv, gzv, _mm256_fmadd_pd(gyv, gyv, _mm256_mul_pd(gxv, gxv)));
        const __m256d gn = _mm256_sqrt_pd(gn2);
        const __m256d gn3 = _mm256_mul_pd(gn2, gn);

        // p x B (B in the equator plane)
        const __m256d cx = _mm256_sub_pd(_mm256_setzero_pd(), _mm256_mul_pd(z, By));
        const __m256d cy = _mm256_mul_pd(z, Bx);
        const __m256d cz = _mm256_fmsub_pd(x, By, _mm256_mul_pd(y, Bx));

        __m256d f[3];
        for (int i = 0; i < 3; ++i) {
            const __m256d qx = _mm256_sub_pd(_mm256_setzero_pd(),
                                             _mm256_mul_pd(z, _mm256_set1_pd(by[i])));
            const __m256d qy = _mm256_mul_pd(z, _mm256_set1_pd(bx[i]));
            const __m256d qz = _mm256_fmsub_pd(x, _mm256_set1_pd(by[i]),
                                               _mm256_mul_pd(y, _mm256_set1_pd(bx[i])));
            const __m256d dotq =
                _mm256_fmadd_pd(cz, qz, _mm256_fmadd_pd(cy, qy, _mm256_mul_pd(cx, qx)));
            const __m256d d5 =
                _mm256_mul_pd(_mm256_mul_pd(d2v[i], d2v[i]), _mm256_sqrt_pd(d2v[i]));
            f[i] = _mm256_div_pd(
                _mm256_mul_pd(_mm256_set1_pd(3.0 * std::sqrt(2.0)), dotq), d5);
        }
        __m256d atilde = _mm256_fmsub_pd(e[0], f[1], _mm256_mul_pd(e[1], f[0]));
        atilde = _mm256_add_pd(atilde, _mm256_fmsub_pd(e[1], f[2], _mm256_mul_pd(e[2], f[1])));
        atilde = _mm256_add_pd(atilde, _mm256_fmsub_pd(e[2], f[0], _mm256_mul_pd(e[0], f[2])));
        const __m256d result = _mm256_div_pd(
            _mm256_mul_pd(_mm256_mul_pd(_mm256_set1_pd(std::sqrt(6.0) / 18.0), z), atilde),
            gn3);
        _mm256_storeu_pd(kg + j, result);
    }
    if (j < n) gradient_curvature_batch_scalar()(px + j, py + j, pz + j, n - j, kg + j);
}

} // namespace

UStarBatchFn u_star_batch_avx2() { return &u_star_avx2; }
KgBatchFn gradient_curvature_batch_avx2() { return &kg_avx2; }

} // namespace shapesphere::batch

#else

namespace shapesphere::batch {
UStarBatchFn u_star_batch_avx2() { return nullptr; }
KgBatchFn gradient_curvature_batch_avx2() { return nullptr; }
} // namespace shapesphere::batch

#endif
