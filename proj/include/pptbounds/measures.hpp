#ifndef PPTBOUNDS_MEASURES_HPP
#define PPTBOUNDS_MEASURES_HPP

#include <string>
#include <vector>

#include "pptbounds/certificates.hpp"
#include "pptbounds/solver.hpp"
#include "pptbounds/states.hpp"

namespace pptbounds {

// Every bound below is in bits (log base 2). The SDP-backed operations
// throw SolverFailedError unless the interior-point method reports
// Optimal; the returned structs keep the raw solution for verification.
// On NumericalTrouble the gap target is escalated (3x, then 10x) before
// failing, since degenerate instances can floor just above the 1e-8
// default while every tolerance in this library is 1e-6.

// E_N = log2 ‖rho^TB‖₁. Closed form, no SDP.
double log_negativity(const DensityMatrix &rho);

struct EwResult {
    double bits;        // log2 of the optimal trace norm
    double value;       // the optimal ‖X^TB‖₁ itself
    BipartiteOperator x; // optimizer, X ⪰ rho
    SdpSolution sol;
    LmiProblem prob;
};
// min log ‖X^TB‖₁ s.t. X ⪰ rho.
EwResult e_w(const DensityMatrix &rho, const SolveOptions &opts = {});

struct EtaPrimalResult {
    double eta; // optimal t
    double bits() const;
    BipartiteOperator y;
    SdpSolution sol;
    LmiProblem prob;
};
// eta(rho) = min t s.t. -Y ⪯ P^TB ⪯ Y, -tI ⪯ Y^TB ⪯ tI; a function of
// the support projector only.
EtaPrimalResult e_eta_primal(const SupportProjector &p, const SolveOptions &opts = {});

struct EtaDualResult {
    double eta; // optimal tr P(V-F)^TB
    double bits() const;
    DualTuple tuple;
    SdpSolution sol;
    LmiProblem prob;
};
// eta(rho) = max tr P(V-F)^TB s.t. V+F ⪯ (W-X)^TB, tr(W+X) ≤ 1,
// V,F,W,X ⪰ 0. Agrees with the primal form by strong duality.
EtaDualResult e_eta_dual(const SupportProjector &p, const SolveOptions &opts = {});

struct E1Result {
    double bits; // -log2 ‖R^TB‖∞ at the optimum
    double norm; // ‖R^TB‖∞
    BipartiteOperator r;
    SdpSolution sol;
    LmiProblem prob;
};
// max -log2 ‖R^TB‖∞ s.t. P ⪯ R ⪯ 1. The feasible set forces R to be
// P plus a PSD contraction on the orthocomplement, and the compiler
// performs that reduction exactly (the stated program has no interior).
E1Result e1_deterministic_distill(const SupportProjector &p,
                                  const SolveOptions &opts = {});

struct OverlapResult {
    double value; // max tr(P sigma) over PPT states sigma
    double bits() const; // -log2(value)
    BipartiteOperator sigma;
    SdpSolution sol;
    LmiProblem prob;
};
// max tr(P sigma) s.t. sigma ⪰ 0, sigma^TB ⪰ 0, tr sigma = 1.
OverlapResult max_ppt_overlap(const SupportProjector &p, const SolveOptions &opts = {});

struct EwSubspaceResult {
    double bits;
    double value;
    BipartiteOperator x;
    BipartiteOperator rho; // the minimizing state, supported on P
    SdpSolution sol;
    LmiProblem prob;
};
// min log ‖X^TB‖₁ s.t. X ⪰ rho ⪰ 0, tr rho = tr(P rho) = 1: the best E_W
// over states supported on P.
EwSubspaceResult e_w_subspace(const SupportProjector &p, const SolveOptions &opts = {});

struct BoundTiming {
    std::string bound;
    double milliseconds;
};

struct BoundReport {
    std::string state_name;
    std::vector<double> params;
    std::size_t dim_a = 0, dim_b = 0, rank = 0;

    double e_n = 0.0;
    double e_w = 0.0;
    double e1 = 0.0;
    double e_eta_primal = 0.0;
    double e_eta_dual = 0.0;
    double eta_value = 0.0;
    double max_overlap = 0.0;      // tr(P sigma*)
    double max_overlap_bits = 0.0; // -log2 of it

    bool irreversible = false; // e_w + margin < e_eta_primal
    std::vector<WitnessCheck> certificates;
    std::vector<BoundTiming> timings;
    std::vector<std::string> errors; // per-bound failures, aggregated

    bool ok() const { return errors.empty(); }
};

// Computes every bound, runs the explicit witness checks that exist for
// the state family, applies the irreversibility verdict (E_W < E_eta,
// 1e-6 margin), and validates the report invariants (ordering, strong
// duality, overlap chain). Per-bound failures are recorded in `errors`
// without aborting the rest.
BoundReport full_report(const NamedState &s, const SolveOptions &opts = {});

} // namespace pptbounds

#endif
