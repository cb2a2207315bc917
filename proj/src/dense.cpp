#include "pptbounds/dense.hpp"

#include <cmath>

#include "pptbounds/eig.hpp"
#include "pptbounds/errors.hpp"
#include "pptbounds/kernels.hpp"

namespace pptbounds {

RealMatrix RealMatrix::identity(std::size_t n) {
    RealMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

RealMatrix &RealMatrix::operator+=(const RealMatrix &o) {
    if (rows != o.rows || cols != o.cols)
        throw DimensionMismatchError("real matrix +=: shape mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] += o.a[i];
    return *this;
}

RealMatrix &RealMatrix::operator-=(const RealMatrix &o) {
    if (rows != o.rows || cols != o.cols)
        throw DimensionMismatchError("real matrix -=: shape mismatch");
    for (std::size_t i = 0; i < a.size(); ++i)
        a[i] -= o.a[i];
    return *this;
}

RealMatrix &RealMatrix::operator*=(double s) {
    kernels::scal(s, a.data(), a.size());
    return *this;
}

RealMatrix RealMatrix::transpose() const {
    RealMatrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

double RealMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < std::min(rows, cols); ++i)
        t += (*this)(i, i);
    return t;
}

double RealMatrix::max_abs() const {
    double m = 0.0;
    for (double v : a)
        m = std::max(m, std::abs(v));
    return m;
}

double RealMatrix::frobenius() const {
    return std::sqrt(kernels::dot(a.data(), a.data(), a.size()));
}

void RealMatrix::symmetrize() {
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = i + 1; j < cols; ++j) {
            const double v = 0.5 * ((*this)(i, j) + (*this)(j, i));
            (*this)(i, j) = v;
            (*this)(j, i) = v;
        }
}

RealMatrix matmul(const RealMatrix &a, const RealMatrix &b) {
    if (a.cols != b.rows)
        throw DimensionMismatchError("real matmul: inner dimension mismatch");
    RealMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double *ci = c.row(i);
        const double *ai = a.row(i);
        for (std::size_t k = 0; k < a.cols; ++k)
            if (ai[k] != 0.0)
                kernels::axpy(ai[k], b.row(k), ci, b.cols);
    }
    return c;
}

bool cholesky_in_place(RealMatrix &m) {
    if (m.rows != m.cols)
        throw DimensionMismatchError("cholesky: matrix not square");
    const std::size_t n = m.rows;
    constexpr std::size_t nb = 96;

    for (std::size_t j0 = 0; j0 < n; j0 += nb) {
        const std::size_t jb = std::min(nb, n - j0);
        // Fold in the history of the whole block column in one gemm.
        if (j0 > 0)
            kernels::gemm_nt_sub(&m(j0, j0), n, &m(j0, 0), n, &m(j0, 0), n,
                                 n - j0, jb, j0);
        // Factor the diagonal block and the panel below it, unblocked
        // within the block column.
        for (std::size_t j = j0; j < j0 + jb; ++j) {
            const double *lj = m.row(j) + j0;
            double d = m(j, j) - kernels::dot(lj, lj, j - j0);
            if (!(d > 0.0))
                return false;
            d = std::sqrt(d);
            m(j, j) = d;
            const double inv = 1.0 / d;
            for (std::size_t i = j + 1; i < n; ++i)
                m(i, j) = (m(i, j) - kernels::dot(m.row(i) + j0, lj, j - j0)) * inv;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            m(i, j) = 0.0;
    return true;
}

void cholesky_solve(const RealMatrix &l, double *x) {
    const std::size_t n = l.rows;
    for (std::size_t i = 0; i < n; ++i)
        x[i] = (x[i] - kernels::dot(l.row(i), x, i)) / l(i, i);
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t k = i + 1; k < n; ++k)
            s -= l(k, i) * x[k];
        x[i] = s / l(i, i);
    }
}

RealMatrix cholesky_inverse(const RealMatrix &l) {
    const std::size_t n = l.rows;
    RealMatrix inv(n, n);
    std::vector<double> col(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(col.begin(), col.end(), 0.0);
        col[j] = 1.0;
        cholesky_solve(l, col.data());
        for (std::size_t i = 0; i < n; ++i)
            inv(i, j) = col[i];
    }
    inv.symmetrize();
    return inv;
}

std::vector<double> sym_eigenvalues(const RealMatrix &m) {
    return eig_hermitian_values(to_complex(m));
}

double sym_min_eigenvalue(const RealMatrix &m) {
    const auto vals = sym_eigenvalues(m);
    return vals.empty() ? 0.0 : vals.back();
}

ComplexMatrix to_complex(const RealMatrix &m) {
    ComplexMatrix c(m.rows, m.cols);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j)
            c(i, j) = m(i, j);
    return c;
}

RealMatrix real_part(const ComplexMatrix &m) {
    RealMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            r(i, j) = m(i, j).real();
    return r;
}

} // namespace pptbounds
