#include "pptbounds/kernels.hpp"

// Reference kernels. Plain loops, no intrinsics; these define the
// semantics the AVX2 variants are tested against.

namespace pptbounds::kernels::detail {

namespace {

double dot_scalar(const double *x, const double *y, std::size_t n) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += x[i] * y[i];
        s1 += x[i + 1] * y[i + 1];
        s2 += x[i + 2] * y[i + 2];
        s3 += x[i + 3] * y[i + 3];
    }
    for (; i < n; ++i)
        s0 += x[i] * y[i];
    return (s0 + s1) + (s2 + s3);
}

void axpy_scalar(double a, const double *x, double *y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        y[i] += a * x[i];
}

void scal_scalar(double a, double *x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        x[i] *= a;
}

void gemm_nt_sub_scalar(double *c, std::size_t ldc, const double *a,
                        std::size_t lda, const double *b, std::size_t ldb,
                        std::size_t m, std::size_t n, std::size_t k) {
    for (std::size_t i = 0; i < m; ++i) {
        const double *ai = a + i * lda;
        double *ci = c + i * ldc;
        for (std::size_t j = 0; j < n; ++j)
            ci[j] -= dot_scalar(ai, b + j * ldb, k);
    }
}

} // namespace

const KernelTable scalar_table = {dot_scalar, axpy_scalar, scal_scalar,
                                  gemm_nt_sub_scalar};

} // namespace pptbounds::kernels::detail
