#ifndef PPTBOUNDS_KERNELS_HPP
#define PPTBOUNDS_KERNELS_HPP

#include <cstddef>

// Double-precision kernels behind the dense linear algebra. Every entry
// point has a scalar reference implementation and an AVX2/FMA variant;
// the active one is picked once at startup from CPUID. The two variants
// are equivalence-tested against each other in tests/test_kernels.cpp.
namespace pptbounds::kernels {

enum class Isa { scalar, avx2 };

// Instruction set the dispatch table currently points at.
Isa active_isa();
const char *isa_name(Isa isa);

// Test hooks. force_isa throws BadParameterError if the requested set is
// not available on this machine.
void force_isa(Isa isa);
void reset_isa();

// sum_i x[i]*y[i]
double dot(const double *x, const double *y, std::size_t n);

// y += a*x
void axpy(double a, const double *x, double *y, std::size_t n);

// x *= a
void scal(double a, double *x, std::size_t n);

// C -= A * B^T with row-major operands: C is m x n (leading dimension
// ldc), A is m x k (lda), B is n x k (ldb). This is the update kernel of
// the blocked Cholesky factorization.
void gemm_nt_sub(double *c, std::size_t ldc, const double *a, std::size_t lda,
                 const double *b, std::size_t ldb, std::size_t m, std::size_t n,
                 std::size_t k);

namespace detail {

struct KernelTable {
    double (*dot)(const double *, const double *, std::size_t);
    void (*axpy)(double, const double *, double *, std::size_t);
    void (*scal)(double, double *, std::size_t);
    void (*gemm_nt_sub)(double *, std::size_t, const double *, std::size_t,
                        const double *, std::size_t, std::size_t, std::size_t,
                        std::size_t);
};

extern const KernelTable scalar_table;
extern const KernelTable avx2_table; // valid only if avx2_available()
bool avx2_available();

} // namespace detail

} // namespace pptbounds::kernels

#endif
