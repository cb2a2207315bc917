#include "pptbounds/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "pptbounds/errors.hpp"

namespace pptbounds {

namespace {

constexpr double kHermTol = 1e-10;

double pythag(double a, double b) { return std::hypot(a, b); }

// Implicit-shift QL on a real symmetric tridiagonal (d, e), e[i] coupling
// d[i] and d[i+1], e[n-1] a zero sentinel. Rotations are forwarded to
// `rotate(i, c, s)` so the caller can accumulate eigenvectors. Returns
// false if an eigenvalue fails to converge within 50 sweeps.
template <typename Rotate>
bool tridiagonal_ql(std::vector<double> &d, std::vector<double> &e, Rotate &&rotate) {
    const int n = static_cast<int>(d.size());
    if (n == 0)
        return true;
    e[n - 1] = 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd + 1e-300)
                    break;
            }
            if (m != l) {
                if (iter++ == 50)
                    return false;
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = pythag(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool underflow = false;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = pythag(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        underflow = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    rotate(i, c, s);
                }
                if (underflow)
                    continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    return true;
}

struct Tridiagonal {
    std::vector<double> d;   // diagonal
    std::vector<double> e;   // |subdiagonal|, e[n-1] sentinel
    ComplexMatrix q;         // accumulated unitary (empty if !vectors)
};

// Reduce Hermitian h to real symmetric tridiagonal form by Householder
// reflections; complex subdiagonal phases are absorbed into a diagonal
// unitary applied to q.
Tridiagonal tridiagonalize(const ComplexMatrix &h, bool vectors) {
    const std::size_t n = h.rows();
    ComplexMatrix a = h;
    Tridiagonal out;
    out.d.assign(n, 0.0);
    out.e.assign(n, 0.0);
    if (vectors)
        out.q = ComplexMatrix::identity(n);
    if (n == 0)
        return out;

    std::vector<cdouble> esub(n, 0.0); // complex subdiagonal values
    std::vector<cdouble> v(n), p(n), w(n), qv(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1; // size of the trailing column
        double xnorm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            xnorm2 += std::norm(a(k + 1 + i, k));
        const double xnorm = std::sqrt(xnorm2);
        if (xnorm <= 1e-300) {
            esub[k] = a(k + 1, k);
            continue;
        }
        const cdouble x0 = a(k + 1, k);
        const cdouble phase = std::abs(x0) > 0.0 ? x0 / std::abs(x0) : cdouble(1.0);
        const cdouble alpha = -phase * xnorm;

        double vnorm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            v[i] = a(k + 1 + i, k);
            if (i == 0)
                v[i] -= alpha;
            vnorm2 += std::norm(v[i]);
        }
        esub[k] = alpha;
        if (vnorm2 <= 1e-300)
            continue;
        const double beta = 2.0 / vnorm2;

        // p = beta * A22 * v ; w = p - (beta/2)(v†p) v ; A22 -= v w† + w v†
        cdouble vtp = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            cdouble s = 0.0;
            const cdouble *arow = a.row(k + 1 + i) + (k + 1);
            for (std::size_t j = 0; j < m; ++j)
                s += arow[j] * v[j];
            p[i] = beta * s;
            vtp += std::conj(v[i]) * p[i];
        }
        const cdouble kfac = 0.5 * beta * vtp;
        for (std::size_t i = 0; i < m; ++i)
            w[i] = p[i] - kfac * v[i];
        for (std::size_t i = 0; i < m; ++i) {
            cdouble *arow = a.row(k + 1 + i) + (k + 1);
            const cdouble vi = v[i], wi = w[i];
            for (std::size_t j = 0; j < m; ++j)
                arow[j] -= vi * std::conj(w[j]) + wi * std::conj(v[j]);
        }
        a(k + 1, k) = alpha;
        for (std::size_t i = 1; i < m; ++i)
            a(k + 1 + i, k) = 0.0;

        if (vectors) {
            // Q <- Q (I - beta v v†), touching columns k+1..n-1.
            for (std::size_t r = 0; r < n; ++r) {
                cdouble s = 0.0;
                const cdouble *qrow = out.q.row(r) + (k + 1);
                for (std::size_t j = 0; j < m; ++j)
                    s += qrow[j] * v[j];
                qv[r] = beta * s;
            }
            for (std::size_t r = 0; r < n; ++r) {
                cdouble *qrow = out.q.row(r) + (k + 1);
                const cdouble s = qv[r];
                for (std::size_t j = 0; j < m; ++j)
                    qrow[j] -= s * std::conj(v[j]);
            }
        }
    }
    if (n >= 2)
        esub[n - 2] = a(n - 1, n - 2);

    for (std::size_t i = 0; i < n; ++i)
        out.d[i] = a(i, i).real();

    // Phase the subdiagonal real and non-negative: T' = D† T D.
    cdouble dk = 1.0;
    std::vector<cdouble> dphase(n, 1.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double mag = std::abs(esub[k]);
        out.e[k] = mag;
        if (mag > 1e-300)
            dk *= esub[k] / mag;
        dphase[k + 1] = dk;
    }
    if (vectors)
        for (std::size_t j = 0; j < n; ++j) {
            if (dphase[j] == cdouble(1.0))
                continue;
            for (std::size_t r = 0; r < n; ++r)
                out.q(r, j) *= dphase[j];
        }
    return out;
}

void check_hermitian(const ComplexMatrix &m) {
    if (!m.square())
        throw NotHermitianError("eig_hermitian: matrix not square");
    const double scale = std::max(1.0, m.max_abs());
    if (m.hermiticity_defect() > kHermTol * scale)
        throw NotHermitianError("eig_hermitian: symmetry check failed");
}

} // namespace

EigResult eig_hermitian(const ComplexMatrix &m, bool compute_vectors) {
    check_hermitian(m);
    const std::size_t n = m.rows();
    // Work on the exactly Hermitian part.
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));

    Tridiagonal t = tridiagonalize(h, compute_vectors);
    bool ok;
    if (compute_vectors) {
        ComplexMatrix &q = t.q;
        ok = tridiagonal_ql(t.d, t.e, [&q, n](int i, double c, double s) {
            for (std::size_t r = 0; r < n; ++r) {
                const cdouble f = q(r, i + 1);
                q(r, i + 1) = s * q(r, i) + c * f;
                q(r, i) = c * q(r, i) - s * f;
            }
        });
    } else {
        ok = tridiagonal_ql(t.d, t.e, [](int, double, double) {});
    }
    if (!ok)
        throw NoConvergenceError("eig_hermitian: QL iteration budget exhausted");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&t](std::size_t a, std::size_t b) { return t.d[a] > t.d[b]; });

    EigResult res;
    res.eigenvalues.resize(n);
    for (std::size_t j = 0; j < n; ++j)
        res.eigenvalues[j] = t.d[idx[j]];
    if (compute_vectors) {
        res.eigenvectors = ComplexMatrix(n, n);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < n; ++r)
                res.eigenvectors(r, j) = t.q(r, idx[j]);
    }
    return res;
}

std::vector<double> eig_hermitian_values(const ComplexMatrix &m) {
    return eig_hermitian(m, false).eigenvalues;
}

double trace_norm(const ComplexMatrix &m) {
    double s = 0.0;
    for (double lam : eig_hermitian_values(m))
        s += std::abs(lam);
    return s;
}

double op_norm(const ComplexMatrix &m) {
    double s = 0.0;
    for (double lam : eig_hermitian_values(m))
        s = std::max(s, std::abs(lam));
    return s;
}

double min_eigenvalue(const ComplexMatrix &m) {
    const auto vals = eig_hermitian_values(m);
    return vals.empty() ? 0.0 : vals.back();
}

} // namespace pptbounds
