#ifndef PPTBOUNDS_SOLVER_HPP
#define PPTBOUNDS_SOLVER_HPP

#include "pptbounds/lmi.hpp"

namespace pptbounds {

struct SolveOptions {
    double gap_tol = 1e-8;
    double feas_tol = 1e-8;
    int max_iter = 200;
    bool trace = false; // per-iteration diagnostics on stderr
};

// Primal-dual path-following interior-point method with HKM scaling and
// Mehrotra predictor-corrector steps, infeasible identity-scaled start,
// dense Cholesky of the Schur complement. Deterministic: identical
// problem and options give bit-identical iterates.
//
// On Optimal: primal_value = b·y, dual_value = Σ tr(C_k X_k),
// |primal - dual| ≤ gap_tol·(1 + |primal|), residuals ≤ feas_tol.
// Infeasible/Unbounded carry scaled certificates in dual_matrix_blocks/y.
SdpSolution solve(const LmiProblem &p, const SolveOptions &opts = {});

} // namespace pptbounds

#endif
