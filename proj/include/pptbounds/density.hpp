#ifndef PPTBOUNDS_DENSITY_HPP
#define PPTBOUNDS_DENSITY_HPP

#include "pptbounds/bipartite.hpp"

namespace pptbounds {

struct StateTolerances {
    double hermiticity = 1e-10;
    double psd = 1e-10;
    double trace = 1e-10;
};

// Validated quantum state: Hermitian, positive semidefinite and unit trace
// within the stored tolerances.
class DensityMatrix {
  public:
    DensityMatrix(BipartiteOperator op, StateTolerances tol = {});

    const BipartiteOperator &op() const { return op_; }
    const ComplexMatrix &matrix() const { return op_.matrix; }
    std::size_t dim_a() const { return op_.dim_a; }
    std::size_t dim_b() const { return op_.dim_b; }
    std::size_t dim() const { return op_.dim(); }
    const StateTolerances &tolerances() const { return tol_; }

  private:
    BipartiteOperator op_;
    StateTolerances tol_;
};

// Orthogonal projector: Hermitian, idempotent, eigenvalues in {0,1}.
class SupportProjector {
  public:
    // Validates ‖P²−P‖_∞ ≤ 1e-10 and that the spectrum splits into `rank`
    // ones and dim−rank zeros at the same tolerance.
    explicit SupportProjector(BipartiteOperator op);

    const BipartiteOperator &op() const { return op_; }
    const ComplexMatrix &matrix() const { return op_.matrix; }
    std::size_t dim_a() const { return op_.dim_a; }
    std::size_t dim_b() const { return op_.dim_b; }
    std::size_t dim() const { return op_.dim(); }
    std::size_t rank() const { return rank_; }

    // Orthonormal basis of the range (columns), and of the orthogonal
    // complement. Recomputed from the stored matrix.
    ComplexMatrix range_basis() const;
    ComplexMatrix complement_basis() const;

  private:
    BipartiteOperator op_;
    std::size_t rank_;
};

// Projection onto the span of eigenvectors with eigenvalue above
// cutoff·λ_max. Throws ZeroStateError if the state is numerically zero.
SupportProjector support_projector(const DensityMatrix &rho, double cutoff = 1e-10);

// Quantum relative entropy S(ρ‖σ) in bits; +inf when supp(ρ) ⊄ supp(σ)
// (support test at 1e-9 on tr((1−Π_σ)ρ)).
double relative_entropy(const DensityMatrix &rho, const DensityMatrix &sigma);

// PτP + (1−P)τ(1−P)
BipartiteOperator pinch(const BipartiteOperator &tau, const SupportProjector &p);

} // namespace pptbounds

#endif
