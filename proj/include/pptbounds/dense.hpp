#ifndef PPTBOUNDS_DENSE_HPP
#define PPTBOUNDS_DENSE_HPP

#include <cstddef>
#include <vector>

#include "pptbounds/complex_matrix.hpp"

namespace pptbounds {

// Dense real matrix, row-major. Working type of the SDP solver (all cone
// blocks are real symmetric once complex data has been realified).
struct RealMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<double> a;

    RealMatrix() = default;
    RealMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}
    static RealMatrix identity(std::size_t n);

    double &operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
    double *row(std::size_t i) { return a.data() + i * cols; }
    const double *row(std::size_t i) const { return a.data() + i * cols; }

    RealMatrix &operator+=(const RealMatrix &o);
    RealMatrix &operator-=(const RealMatrix &o);
    RealMatrix &operator*=(double s);
    RealMatrix transpose() const;
    double trace() const;
    double max_abs() const;
    double frobenius() const;
    void symmetrize(); // (M + M^T)/2 in place
};

RealMatrix matmul(const RealMatrix &a, const RealMatrix &b);

// Blocked in-place Cholesky of a symmetric positive definite matrix
// (full storage; only the lower triangle is read). On success the lower
// triangle holds L with m = L L^T and the strict upper triangle is
// zeroed. Returns false if a pivot is not strictly positive.
bool cholesky_in_place(RealMatrix &m);

// Solve L L^T x = b in place given the Cholesky factor.
void cholesky_solve(const RealMatrix &l, double *x);

// (L L^T)^{-1}, symmetric.
RealMatrix cholesky_inverse(const RealMatrix &l);

// Eigenvalues of a symmetric matrix, descending.
std::vector<double> sym_eigenvalues(const RealMatrix &m);
double sym_min_eigenvalue(const RealMatrix &m);

ComplexMatrix to_complex(const RealMatrix &m);
RealMatrix real_part(const ComplexMatrix &m);

} // namespace pptbounds

#endif
