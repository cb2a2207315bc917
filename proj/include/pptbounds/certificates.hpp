#ifndef PPTBOUNDS_CERTIFICATES_HPP
#define PPTBOUNDS_CERTIFICATES_HPP

#include <string>
#include <vector>

#include "pptbounds/density.hpp"

namespace pptbounds {

// Feasibility of the explicit witness operators, checked by eigenvalue
// and entrywise computations only — no solver involved, so these catch
// solver bugs rather than inherit them.

struct WitnessClaim {
    std::string description;
    double violation; // <= tolerance means the claim holds
};

struct WitnessCheck {
    std::string name;
    double tolerance = 1e-10;
    std::vector<WitnessClaim> claims;
    bool passed = false;
    double certified_bits = 0.0; // bound implied by the witness, in bits

    double max_violation() const;
    void finish(); // sets passed from the claims
};

// The explicit witness matrices.
BipartiteOperator cost_witness_matrix();              // Y for rho_v
BipartiteOperator distill_witness_matrix();           // R for rho_v
BipartiteOperator alpha_witness_matrix(double alpha); // Y for rho_alpha
BipartiteOperator ranktwo_witness_matrix(double p, double theta);

// Y certifies eta(rho_v) <= 1/2: checks the two rank-one decomposition
// identities entrywise and ‖Y^TB‖∞ = 1/2. `override_y` substitutes a
// corrupted witness (test hook).
WitnessCheck cost_witness_rho_v(double tol = 1e-10,
                                const BipartiteOperator *override_y = nullptr);

// R certifies E1(rho_v) >= -log2(2-√2): checks P ⪯ R ⪯ 1 and
// ‖R^TB‖∞ = 2-√2.
WitnessCheck distill_witness_rho_v(double tol = 1e-10,
                                   const BipartiteOperator *override_r = nullptr);

// Y certifies eta(rho_alpha) <= 1-alpha; valid for alpha in (0, 1/2].
WitnessCheck alpha_witness(double alpha, double tol = 1e-10);

// Y = P^TB + |φ+><φ+|/2 certifies eta <= 1/2 for the whole rank-two
// antisymmetric family; also checks ‖rho^TB‖₁ < 2.
WitnessCheck ranktwo_witness(double p, double theta, double tol = 1e-10);

struct PrimalCombination {
    BipartiteOperator y;
    double t;
    WitnessCheck check;
};

// {t1 t2, Y1 ⊗ Y2} as a witness for the product projector. Inputs are
// re-verified at 1e-8 and rejected with InfeasibleInputError.
PrimalCombination combine_primal(const BipartiteOperator &y1, double t1,
                                 const BipartiteOperator &y2, double t2,
                                 const SupportProjector &p1,
                                 const SupportProjector &p2, double tol = 1e-10);

struct DualTuple {
    BipartiteOperator v, f, w, x;
};

struct DualCombination {
    DualTuple tuple;
    double objective;
    WitnessCheck check;
};

// Tensor combination of two feasible dual tuples; the combined objective
// is the product of the input objectives.
DualCombination combine_dual(const DualTuple &t1, const DualTuple &t2,
                             const SupportProjector &p1, const SupportProjector &p2,
                             double tol = 1e-8);

} // namespace pptbounds

#endif
