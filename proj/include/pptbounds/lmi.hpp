#ifndef PPTBOUNDS_LMI_HPP
#define PPTBOUNDS_LMI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "pptbounds/dense.hpp"

namespace pptbounds {

// Sparse real symmetric matrix: entry (r, c, v) with r <= c sets
// M[r][c] = M[c][r] = v. Entries are unique after canonicalization.
struct SparseSym {
    struct Entry {
        int row, col;
        double value;
    };
    std::vector<Entry> entries;

    void add(int r, int c, double v);
    bool empty() const { return entries.empty(); }
    // Accumulate coeff * M into dense d (full symmetric write).
    void add_to(RealMatrix &d, double coeff) const;
    // tr(M * d) for arbitrary dense d (not necessarily symmetric).
    double inner(const RealMatrix &d) const;
    RealMatrix to_dense(std::size_t n) const;
};

// Block-structured linear matrix inequality in the form
//   maximize  b·y   s.t.   C_k - Σ_i y_i A_{k,i}  ⪰ 0   for every block k.
struct LmiBlock {
    RealMatrix c;
    std::vector<SparseSym> a; // one (possibly empty) matrix per variable
};

struct LmiProblem {
    int num_vars = 0;
    std::vector<double> objective; // b
    std::vector<LmiBlock> blocks;

    // Shape and symmetry checks (1e-12 on C); throws BadParameterError.
    void validate() const;
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, NumericalTrouble };
const char *to_string(SolveStatus s);

struct SdpSolution {
    SolveStatus status = SolveStatus::NumericalTrouble;
    double primal_value = 0.0; // b·y
    double dual_value = 0.0;   // Σ_k tr(C_k X_k)
    std::vector<double> y;
    std::vector<RealMatrix> slack_blocks;       // S_k = C_k - Σ y_i A_{k,i}
    std::vector<RealMatrix> dual_matrix_blocks; // X_k
    double gap = 0.0;
    int iterations = 0;
};

// Residuals recomputed from scratch; deliberately a separate code path
// from the solver (eigenvalue checks instead of Cholesky).
struct FeasibilityReport {
    double slack_min_eigenvalue = 0.0;   // min over blocks of λmin(C - Σ y A)
    double slack_mismatch = 0.0;         // max |stored slack - recomputed|
    double dual_min_eigenvalue = 0.0;    // min over blocks of λmin(X)
    double dual_residual = 0.0;          // max_i |b_i - Σ tr(A_{k,i} X_k)|
    double objective_mismatch = 0.0;     // |b·y - primal_value|
    double gap = 0.0;                    // |primal - dual| recomputed
    double complementarity = 0.0;        // Σ tr(S X) / Σ n_k
    double max_violation() const;
    bool feasible(double tol) const;
};

FeasibilityReport verify_solution(const LmiProblem &p, const SdpSolution &s);

// [[Re h, -Im h], [Im h, Re h]]: positive semidefinite iff h is, each
// eigenvalue of h appearing twice. Throws NotHermitianError.
RealMatrix realify_hermitian(const ComplexMatrix &h);

// Inverse map for solutions: (1,1)/(2,1) blocks of a realified 2n x 2n
// symmetric matrix back to an n x n Hermitian matrix, re-symmetrized.
ComplexMatrix derealify(const RealMatrix &m);

// Plain-text dump for offline cross-checking: per problem, the variable
// count and objective; per block, the size, then C and each A row-major,
// one matrix per line.
void dump_problem(const LmiProblem &p, std::ostream &os);

} // namespace pptbounds

#endif
