#include "pptbounds/complex_matrix.hpp"

#include <cmath>
#include <cstdlib>

#include "pptbounds/errors.hpp"

namespace pptbounds {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatchError("matrix +=: shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i)
        a_[i] += o.a_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o) {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatchError("matrix -=: shape mismatch");
    for (std::size_t i = 0; i < a_.size(); ++i)
        a_[i] -= o.a_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cdouble s) {
    for (auto &v : a_)
        v *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(j, i) = (*this)(i, j);
    return m;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < a_.size(); ++i)
        m.a_[i] = std::conj(a_[i]);
    return m;
}

cdouble ComplexMatrix::trace() const {
    cdouble t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
        t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto &v : a_)
        m = std::max(m, std::abs(v));
    return m;
}

double ComplexMatrix::max_abs_imag() const {
    double m = 0.0;
    for (const auto &v : a_)
        m = std::max(m, std::abs(v.imag()));
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    if (!square())
        return max_abs();
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    return square() && hermiticity_defect() <= tol;
}

bool ComplexMatrix::all_finite() const {
    for (const auto &v : a_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            return false;
    return true;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix &o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatchError("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a_.size(); ++i)
        m = std::max(m, std::abs(a_[i] - o.a_[i]));
    return m;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(cdouble s, ComplexMatrix a) {
    a *= s;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows())
        throw DimensionMismatchError("matrix *: inner dimension mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cdouble *ci = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cdouble aik = a(i, k);
            if (aik == cdouble(0.0))
                continue;
            const cdouble *bk = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                ci[j] += aik * bk[j];
        }
    }
    return c;
}

ComplexMatrix outer(const std::vector<cdouble> &u, const std::vector<cdouble> &v,
                    cdouble s) {
    ComplexMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j)
            m(i, j) = s * u[i] * std::conj(v[j]);
    return m;
}

} // namespace pptbounds
