#ifndef PPTBOUNDS_HERM_BASIS_HPP
#define PPTBOUNDS_HERM_BASIS_HPP

#include "pptbounds/complex_matrix.hpp"
#include "pptbounds/lmi.hpp"

namespace pptbounds {

// Orthonormal coefficient basis for a Hermitian matrix variable entering
// the real-cone solver. For exactly-real problem data the real symmetric
// basis suffices (n(n+1)/2 elements, solver blocks of size n); genuinely
// complex data takes the full Hermitian basis (n² elements) with every
// constraint matrix realified to 2n x 2n.
//
// With `traceless` set, the diagonal directions are replaced by the n-1
// orthonormal traceless combinations diag(1,..,1,-j,0,..)/√(j(j+1)); the
// span is then {H Hermitian : tr H = 0}, which is how trace-normalized
// variables (σ = I/n + Σ c_p B_p) are parametrized.
class HermBasis {
  public:
    HermBasis(std::size_t n, bool complex_path, bool traceless = false);

    std::size_t n() const { return n_; }
    std::size_t count() const;
    bool complex_path() const { return complex_; }
    std::size_t solver_dim() const { return complex_ ? 2 * n_ : n_; }

    // Basis element p as a dense Hermitian matrix.
    ComplexMatrix element_matrix(std::size_t p) const;
    // Solver-space sparse representation of B_p.
    SparseSym element(std::size_t p) const;
    // Solver-space sparse representation of B_p^{T_B} on dim_a ⊗ dim_b.
    SparseSym element_pt(std::size_t p, std::size_t dim_a, std::size_t dim_b) const;
    double trace(std::size_t p) const;

    // c_p = tr(B_p H), real for Hermitian H.
    std::vector<double> coefficients(const ComplexMatrix &h) const;
    // Σ_p coeff[p] B_p.
    ComplexMatrix assemble(const double *coeff) const;

  private:
    struct CEntry {
        std::size_t row, col;
        cdouble value;
    };
    // Full (both-orders) complex entry list of element p.
    std::vector<CEntry> complex_entries(std::size_t p) const;
    SparseSym to_solver(std::vector<CEntry> entries) const;

    std::size_t n_;
    bool complex_;
    bool traceless_;
};

// Solver-space form of a dense Hermitian data matrix (realified when the
// basis runs on the complex path).
RealMatrix solver_matrix(const ComplexMatrix &h, bool complex_path);

// Collect the nonzeros of a dense symmetric matrix.
SparseSym sparse_from_dense(const RealMatrix &m, double drop_below = 0.0);

} // namespace pptbounds

#endif
