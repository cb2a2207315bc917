#include "pptbounds/herm_basis.hpp"

#include <cmath>

#include "pptbounds/errors.hpp"

namespace pptbounds {

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

HermBasis::HermBasis(std::size_t n, bool complex_path, bool traceless)
    : n_(n), complex_(complex_path), traceless_(traceless) {
    if (n == 0)
        throw BadParameterError("herm basis: empty dimension");
}

std::size_t HermBasis::count() const {
    const std::size_t diag = traceless_ ? n_ - 1 : n_;
    const std::size_t off = n_ * (n_ - 1) / 2;
    return diag + off + (complex_ ? off : 0);
}

std::vector<HermBasis::CEntry> HermBasis::complex_entries(std::size_t p) const {
    const std::size_t ndiag = traceless_ ? n_ - 1 : n_;
    const std::size_t noff = n_ * (n_ - 1) / 2;
    std::vector<CEntry> out;
    if (p < ndiag) {
        if (!traceless_) {
            out.push_back({p, p, 1.0});
        } else {
            // diag(1,..,1,-j,0,..)/√(j(j+1)) with j = p+1 leading ones
            const std::size_t j = p + 1;
            const double s = 1.0 / std::sqrt(static_cast<double>(j) * (j + 1));
            for (std::size_t i = 0; i < j; ++i)
                out.push_back({i, i, s});
            out.push_back({j, j, -s * static_cast<double>(j)});
        }
        return out;
    }
    std::size_t q = p - ndiag;
    const bool imag_part = q >= noff;
    if (imag_part)
        q -= noff;
    // q-th pair (i, j), i < j, lexicographic
    std::size_t i = 0, run = n_ - 1;
    while (q >= run) {
        q -= run;
        ++i;
        --run;
    }
    const std::size_t j = i + 1 + q;
    if (!imag_part) {
        out.push_back({i, j, kInvSqrt2});
        out.push_back({j, i, kInvSqrt2});
    } else {
        out.push_back({i, j, cdouble(0.0, kInvSqrt2)});
        out.push_back({j, i, cdouble(0.0, -kInvSqrt2)});
    }
    return out;
}

SparseSym HermBasis::to_solver(std::vector<CEntry> entries) const {
    SparseSym sp;
    if (!complex_) {
        for (const auto &e : entries) {
            if (e.row > e.col)
                continue;
            if (e.value.real() != 0.0)
                sp.add(static_cast<int>(e.row), static_cast<int>(e.col),
                       e.value.real());
        }
        return sp;
    }
    // The list carries both (r,c,v) and (c,r,v̄); emit only positions that
    // are canonical (row <= col) in the 2n realified layout so each
    // unordered pair lands exactly once.
    for (const auto &e : entries) {
        const double re = e.value.real(), im = e.value.imag();
        const std::size_t r = e.row, c = e.col;
        if (r <= c && re != 0.0) {
            sp.add(static_cast<int>(r), static_cast<int>(c), re);
            sp.add(static_cast<int>(n_ + r), static_cast<int>(n_ + c), re);
        }
        if (im != 0.0)
            sp.add(static_cast<int>(r), static_cast<int>(n_ + c), -im);
    }
    return sp;
}

SparseSym HermBasis::element(std::size_t p) const { return to_solver(complex_entries(p)); }

SparseSym HermBasis::element_pt(std::size_t p, std::size_t dim_a,
                                std::size_t dim_b) const {
    if (dim_a * dim_b != n_)
        throw DimensionMismatchError("herm basis: dims do not match n");
    auto entries = complex_entries(p);
    for (auto &e : entries) {
        const std::size_t ra = e.row / dim_b, rb = e.row % dim_b;
        const std::size_t ca = e.col / dim_b, cb = e.col % dim_b;
        e.row = ra * dim_b + cb;
        e.col = ca * dim_b + rb;
    }
    return to_solver(std::move(entries));
}

double HermBasis::trace(std::size_t p) const {
    double t = 0.0;
    for (const auto &e : complex_entries(p))
        if (e.row == e.col)
            t += e.value.real();
    return t;
}

ComplexMatrix HermBasis::element_matrix(std::size_t p) const {
    ComplexMatrix m(n_, n_);
    for (const auto &e : complex_entries(p))
        m(e.row, e.col) += e.value;
    return m;
}

std::vector<double> HermBasis::coefficients(const ComplexMatrix &h) const {
    if (h.rows() != n_ || h.cols() != n_)
        throw DimensionMismatchError("herm basis: coefficient input shape");
    std::vector<double> c(count(), 0.0);
    for (std::size_t p = 0; p < count(); ++p) {
        cdouble s = 0.0;
        for (const auto &e : complex_entries(p))
            s += e.value * h(e.col, e.row); // tr(B_p H)
        c[p] = s.real();
    }
    return c;
}

ComplexMatrix HermBasis::assemble(const double *coeff) const {
    ComplexMatrix h(n_, n_);
    for (std::size_t p = 0; p < count(); ++p) {
        if (coeff[p] == 0.0)
            continue;
        for (const auto &e : complex_entries(p))
            h(e.row, e.col) += coeff[p] * e.value;
    }
    return h;
}

RealMatrix solver_matrix(const ComplexMatrix &h, bool complex_path) {
    if (complex_path)
        return realify_hermitian(h);
    RealMatrix r = real_part(h);
    r.symmetrize();
    return r;
}

SparseSym sparse_from_dense(const RealMatrix &m, double drop_below) {
    SparseSym sp;
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = i; j < m.cols; ++j) {
            const double v = 0.5 * (m(i, j) + m(j, i));
            if (std::abs(v) > drop_below)
                sp.add(static_cast<int>(i), static_cast<int>(j), v);
        }
    return sp;
}

} // namespace pptbounds
