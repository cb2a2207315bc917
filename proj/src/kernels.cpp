#include "pptbounds/kernels.hpp"

#include "pptbounds/errors.hpp"

namespace pptbounds::kernels {

namespace detail {

bool avx2_available() {
#if defined(__GNUC__) && (defined(__x86_64__) || defined(_M_X64))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") &&
           avx2_table.dot != nullptr;
#else
    return false;
#endif
}

} // namespace detail

namespace {

struct Dispatch {
    Isa isa;
    const detail::KernelTable *table;
    Dispatch() { reset(); }
    void reset() {
        if (detail::avx2_available()) {
            isa = Isa::avx2;
            table = &detail::avx2_table;
        } else {
            isa = Isa::scalar;
            table = &detail::scalar_table;
        }
    }
};

Dispatch &dispatch() {
    static Dispatch d;
    return d;
}

} // namespace

Isa active_isa() { return dispatch().isa; }

const char *isa_name(Isa isa) {
    switch (isa) {
    case Isa::scalar:
        return "scalar";
    case Isa::avx2:
        return "avx2";
    }
    return "?";
}

void force_isa(Isa isa) {
    if (isa == Isa::avx2 && !detail::avx2_available())
        throw BadParameterError("force_isa: avx2 not available on this cpu");
    dispatch().isa = isa;
    dispatch().table = isa == Isa::avx2 ? &detail::avx2_table : &detail::scalar_table;
}

void reset_isa() { dispatch().reset(); }

double dot(const double *x, const double *y, std::size_t n) {
    return dispatch().table->dot(x, y, n);
}

void axpy(double a, const double *x, double *y, std::size_t n) {
    dispatch().table->axpy(a, x, y, n);
}

void scal(double a, double *x, std::size_t n) {
    dispatch().table->scal(a, x, n);
}

void gemm_nt_sub(double *c, std::size_t ldc, const double *a, std::size_t lda,
                 const double *b, std::size_t ldb, std::size_t m, std::size_t n,
                 std::size_t k) {
    dispatch().table->gemm_nt_sub(c, ldc, a, lda, b, ldb, m, n, k);
}

} // namespace pptbounds::kernels
