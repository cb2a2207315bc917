#include "pptbounds/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#endif

// AVX2/FMA kernels. This translation unit is compiled with -mavx2 -mfma;
// nothing here runs unless the dispatcher saw AVX2+FMA in CPUID.

namespace pptbounds::kernels::detail {

#if defined(__AVX2__) && defined(__FMA__)

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(const double *x, const double *y, std::size_t n) {
    __m256d s0 = _mm256_setzero_pd();
    __m256d s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd();
    __m256d s3 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
        s1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), s1);
        s2 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 8), _mm256_loadu_pd(y + i + 8), s2);
        s3 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 12), _mm256_loadu_pd(y + i + 12), s3);
    }
    for (; i + 4 <= n; i += 4)
        s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
    double tail = 0.0;
    for (; i < n; ++i)
        tail += x[i] * y[i];
    return hsum(_mm256_add_pd(_mm256_add_pd(s0, s1), _mm256_add_pd(s2, s3))) + tail;
}

void axpy_avx2(double a, const double *x, double *y, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256d y0 = _mm256_loadu_pd(y + i);
        __m256d y1 = _mm256_loadu_pd(y + i + 4);
        y0 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), y0);
        y1 = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), y1);
        _mm256_storeu_pd(y + i, y0);
        _mm256_storeu_pd(y + i + 4, y1);
    }
    for (; i < n; ++i)
        y[i] += a * x[i];
}

void scal_avx2(double a, double *x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i)
        x[i] *= a;
}

// 2x4 register tile over rows of A and B, vectorized along k. A and B rows
// are contiguous (row-major, k innermost), so no packing step is needed.
void gemm_nt_sub_avx2(double *c, std::size_t ldc, const double *a,
                      std::size_t lda, const double *b, std::size_t ldb,
                      std::size_t m, std::size_t n, std::size_t k) {
    std::size_t i = 0;
    for (; i + 2 <= m; i += 2) {
        const double *a0 = a + i * lda;
        const double *a1 = a0 + lda;
        double *c0 = c + i * ldc;
        double *c1 = c0 + ldc;
        std::size_t j = 0;
        for (; j + 4 <= n; j += 4) {
            const double *b0 = b + j * ldb;
            const double *b1 = b0 + ldb;
            const double *b2 = b1 + ldb;
            const double *b3 = b2 + ldb;
            __m256d s00 = _mm256_setzero_pd(), s01 = _mm256_setzero_pd();
            __m256d s02 = _mm256_setzero_pd(), s03 = _mm256_setzero_pd();
            __m256d s10 = _mm256_setzero_pd(), s11 = _mm256_setzero_pd();
            __m256d s12 = _mm256_setzero_pd(), s13 = _mm256_setzero_pd();
            std::size_t p = 0;
            for (; p + 4 <= k; p += 4) {
                const __m256d va0 = _mm256_loadu_pd(a0 + p);
                const __m256d va1 = _mm256_loadu_pd(a1 + p);
                const __m256d vb0 = _mm256_loadu_pd(b0 + p);
                const __m256d vb1 = _mm256_loadu_pd(b1 + p);
                const __m256d vb2 = _mm256_loadu_pd(b2 + p);
                const __m256d vb3 = _mm256_loadu_pd(b3 + p);
                s00 = _mm256_fmadd_pd(va0, vb0, s00);
                s01 = _mm256_fmadd_pd(va0, vb1, s01);
                s02 = _mm256_fmadd_pd(va0, vb2, s02);
                s03 = _mm256_fmadd_pd(va0, vb3, s03);
                s10 = _mm256_fmadd_pd(va1, vb0, s10);
                s11 = _mm256_fmadd_pd(va1, vb1, s11);
                s12 = _mm256_fmadd_pd(va1, vb2, s12);
                s13 = _mm256_fmadd_pd(va1, vb3, s13);
            }
            double t00 = hsum(s00), t01 = hsum(s01), t02 = hsum(s02), t03 = hsum(s03);
            double t10 = hsum(s10), t11 = hsum(s11), t12 = hsum(s12), t13 = hsum(s13);
            for (; p < k; ++p) {
                t00 += a0[p] * b0[p];
                t01 += a0[p] * b1[p];
                t02 += a0[p] * b2[p];
                t03 += a0[p] * b3[p];
                t10 += a1[p] * b0[p];
                t11 += a1[p] * b1[p];
                t12 += a1[p] * b2[p];
                t13 += a1[p] * b3[p];
            }
            c0[j] -= t00;
            c0[j + 1] -= t01;
            c0[j + 2] -= t02;
            c0[j + 3] -= t03;
            c1[j] -= t10;
            c1[j + 1] -= t11;
            c1[j + 2] -= t12;
            c1[j + 3] -= t13;
        }
        for (; j < n; ++j) {
            c0[j] -= dot_avx2(a0, b + j * ldb, k);
            c1[j] -= dot_avx2(a1, b + j * ldb, k);
        }
    }
    for (; i < m; ++i) {
        const double *ai = a + i * lda;
        double *ci = c + i * ldc;
        for (std::size_t j = 0; j < n; ++j)
            ci[j] -= dot_avx2(ai, b + j * ldb, k);
    }
}

} // namespace

const KernelTable avx2_table = {dot_avx2, axpy_avx2, scal_avx2,
                                gemm_nt_sub_avx2};

#else

// Built without AVX2 target support: the dispatcher never selects this
// table (avx2_available() is false), but the symbol must exist.
const KernelTable avx2_table = {nullptr, nullptr, nullptr, nullptr};

#endif

} // namespace pptbounds::kernels::detail
