#ifndef PPTBOUNDS_EIG_HPP
#define PPTBOUNDS_EIG_HPP

#include <vector>

#include "pptbounds/complex_matrix.hpp"

namespace pptbounds {

struct EigResult {
    std::vector<double> eigenvalues; // descending
    ComplexMatrix eigenvectors;      // column j pairs with eigenvalues[j]
};

// Hermitian eigendecomposition: m = V diag(λ) V†. Reduction to real
// symmetric tridiagonal form by complex Householder reflections with a
// diagonal phase similarity, then implicit-shift QL with Wilkinson shift.
// Throws NotHermitianError if the symmetry check fails and
// NoConvergenceError if any eigenvalue needs more than 50 QL sweeps.
EigResult eig_hermitian(const ComplexMatrix &m, bool compute_vectors = true);

// Eigenvalues only (descending), same algorithm without accumulating V.
std::vector<double> eig_hermitian_values(const ComplexMatrix &m);

// Σ|λ_i| of the Hermitian spectrum.
double trace_norm(const ComplexMatrix &m);

// max|λ_i| of the Hermitian spectrum.
double op_norm(const ComplexMatrix &m);

// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix &m);

} // namespace pptbounds

#endif
