#include "pptbounds/density.hpp"

#include <cmath>
#include <limits>

#include "pptbounds/eig.hpp"
#include "pptbounds/errors.hpp"

namespace pptbounds {

DensityMatrix::DensityMatrix(BipartiteOperator op, StateTolerances tol)
    : op_(std::move(op)), tol_(tol) {
    const ComplexMatrix &m = op_.matrix;
    if (m.hermiticity_defect() > tol_.hermiticity)
        throw ValidationError("hermitian", "density matrix: not Hermitian within tolerance");
    const double tr_err = std::abs(m.trace() - cdouble(1.0));
    if (tr_err > tol_.trace)
        throw ValidationError("trace", "density matrix: trace differs from 1 by " +
                                           std::to_string(tr_err));
    if (min_eigenvalue(m) < -tol_.psd)
        throw ValidationError("psd", "density matrix: negative eigenvalue beyond tolerance");
}

SupportProjector::SupportProjector(BipartiteOperator op) : op_(std::move(op)), rank_(0) {
    const ComplexMatrix &m = op_.matrix;
    if (m.hermiticity_defect() > 1e-10)
        throw ValidationError("hermitian", "projector: not Hermitian within tolerance");
    if (op_norm(m * m - m) > 1e-10)
        throw ValidationError("idempotent", "projector: P^2 != P within tolerance");
    for (double lam : eig_hermitian_values(m)) {
        if (std::abs(lam - 1.0) <= 1e-10)
            ++rank_;
        else if (std::abs(lam) > 1e-10)
            throw ValidationError("spectrum", "projector: eigenvalue not in {0,1}");
    }
}

ComplexMatrix SupportProjector::range_basis() const {
    const EigResult eg = eig_hermitian(op_.matrix);
    ComplexMatrix u(dim(), rank_);
    for (std::size_t j = 0; j < rank_; ++j)
        for (std::size_t r = 0; r < dim(); ++r)
            u(r, j) = eg.eigenvectors(r, j);
    return u;
}

ComplexMatrix SupportProjector::complement_basis() const {
    const EigResult eg = eig_hermitian(op_.matrix);
    const std::size_t q = dim() - rank_;
    ComplexMatrix u(dim(), q);
    for (std::size_t j = 0; j < q; ++j)
        for (std::size_t r = 0; r < dim(); ++r)
            u(r, j) = eg.eigenvectors(r, rank_ + j);
    return u;
}

SupportProjector support_projector(const DensityMatrix &rho, double cutoff) {
    if (cutoff <= 0.0)
        throw BadParameterError("support_projector: cutoff must be positive");
    const EigResult eg = eig_hermitian(rho.matrix());
    const double lmax = eg.eigenvalues.empty() ? 0.0 : eg.eigenvalues.front();
    if (lmax <= 1e-14)
        throw ZeroStateError("support_projector: state is numerically zero");
    const std::size_t n = rho.dim();
    ComplexMatrix p(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        if (eg.eigenvalues[k] <= cutoff * lmax)
            break;
        for (std::size_t i = 0; i < n; ++i) {
            const cdouble vi = eg.eigenvectors(i, k);
            for (std::size_t j = 0; j < n; ++j)
                p(i, j) += vi * std::conj(eg.eigenvectors(j, k));
        }
    }
    return SupportProjector({rho.dim_a(), rho.dim_b(), std::move(p)});
}

double relative_entropy(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim_a() != sigma.dim_a() || rho.dim_b() != sigma.dim_b())
        throw DimensionMismatchError("relative_entropy: dimension mismatch");
    const std::size_t n = rho.dim();
    const EigResult er = eig_hermitian(rho.matrix());
    const EigResult es = eig_hermitian(sigma.matrix());

    const double lmax_s = es.eigenvalues.empty() ? 0.0 : std::abs(es.eigenvalues.front());
    const double cut_s = 1e-12 * std::max(1.0, lmax_s);

    // Support test: tr((1-Π_σ)ρ) must vanish.
    double outside = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (es.eigenvalues[k] > cut_s)
            continue;
        cdouble quad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cdouble t = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                t += rho.matrix()(i, j) * es.eigenvectors(j, k);
            quad += std::conj(es.eigenvectors(i, k)) * t;
        }
        outside += quad.real();
    }
    if (outside > 1e-9)
        return std::numeric_limits<double>::infinity();

    const double ln2 = std::log(2.0);
    double s = 0.0;
    for (double p : er.eigenvalues)
        if (p > 1e-15)
            s += p * std::log(p) / ln2;
    for (std::size_t k = 0; k < n; ++k) {
        const double q = es.eigenvalues[k];
        if (q <= cut_s)
            continue;
        cdouble quad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cdouble t = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                t += rho.matrix()(i, j) * es.eigenvectors(j, k);
            quad += std::conj(es.eigenvectors(i, k)) * t;
        }
        s -= quad.real() * std::log(q) / ln2;
    }
    return s;
}

BipartiteOperator pinch(const BipartiteOperator &tau, const SupportProjector &p) {
    if (tau.dim_a != p.dim_a() || tau.dim_b != p.dim_b())
        throw DimensionMismatchError("pinch: dimension mismatch");
    const ComplexMatrix &pm = p.matrix();
    const ComplexMatrix q = ComplexMatrix::identity(tau.dim()) - pm;
    ComplexMatrix out = pm * tau.matrix * pm + q * tau.matrix * q;
    return {tau.dim_a, tau.dim_b, std::move(out)};
}

} // namespace pptbounds
