#ifndef PPTBOUNDS_COMPLEX_MATRIX_HPP
#define PPTBOUNDS_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace pptbounds {

using cdouble = std::complex<double>;

// Dense complex matrix, row-major. The substrate for every operator in
// the library.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cdouble &operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cdouble &operator()(std::size_t i, std::size_t j) const {
        return a_[i * cols_ + j];
    }
    cdouble *row(std::size_t i) { return a_.data() + i * cols_; }
    const cdouble *row(std::size_t i) const { return a_.data() + i * cols_; }
    std::vector<cdouble> &data() { return a_; }
    const std::vector<cdouble> &data() const { return a_; }

    ComplexMatrix &operator+=(const ComplexMatrix &o);
    ComplexMatrix &operator-=(const ComplexMatrix &o);
    ComplexMatrix &operator*=(cdouble s);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;
    cdouble trace() const;

    double max_abs() const;
    double max_abs_imag() const;
    // max |(M - M†)_{ij}|; 0 for the empty matrix.
    double hermiticity_defect() const;
    bool is_hermitian(double tol) const;
    bool all_finite() const;

    // max |(this - o)_{ij}|
    double max_abs_diff(const ComplexMatrix &o) const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cdouble> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(cdouble s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

// |u><v| scaled: s * u v†
ComplexMatrix outer(const std::vector<cdouble> &u, const std::vector<cdouble> &v,
                    cdouble s = 1.0);

} // namespace pptbounds

#endif
