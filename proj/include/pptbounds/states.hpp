#ifndef PPTBOUNDS_STATES_HPP
#define PPTBOUNDS_STATES_HPP

#include <string>
#include <vector>

#include "pptbounds/density.hpp"

namespace pptbounds {

// A constructed state together with its support projector. Constructors
// build the projector analytically from the defining vectors, so it is
// exact up to rounding.
struct NamedState {
    std::string name;
    std::vector<double> params;
    DensityMatrix state;
    SupportProjector projector;
};

// Normalized state vector on A ⊗ B from raw coefficients (length dimA*dimB).
std::vector<cdouble> make_ket(const std::vector<cdouble> &coeffs, std::size_t dim_a,
                              std::size_t dim_b);

// Rank-two 3⊗3 antisymmetric state (|v1><v1| + |v2><v2|)/2 with
// v1 = (|01>-|10>)/√2, v2 = (|02>-|20>)/√2.
NamedState make_rho_v();

// (|ψ1><ψ1| + |ψ2><ψ2|)/2 with ψ1 = √α|01> - √(1-α)|10>,
// ψ2 = √α|02> - √(1-α)|20>; α in (0,1). α = 1/2 reproduces rho_v.
NamedState make_rho_alpha(double alpha);

// p|u1><u1| + (1-p)|u2><u2| with u1 = (|01>-|10>)/√2 and
// u2 = [(cosθ|0>+sinθ|1>)⊗|2> - |2>⊗(cosθ|0>+sinθ|1>)]/√2;
// 0 < p < 1, 0 ≤ θ ≤ π/2. (p,θ) = (1/2, 0) reproduces rho_v.
NamedState make_ranktwo_antisym(double p, double theta);

// Standard d⊗d maximally entangled state (1/d)Σ|ii><jj|, d ≥ 2.
NamedState make_max_entangled(std::size_t d);

// Normalized projector onto the antisymmetric subspace of 3⊗3 (rank 3).
NamedState make_antisymmetric_state();

// |00><00| on d⊗d.
NamedState make_product_ground(std::size_t d);

// Q = |01><01| + |10><10| + |02><02| + |20><20| on 3⊗3.
BipartiteOperator make_q_operator();

// τ = Q/4: a PPT state (τ^{T_B} = τ) as a NamedState, support projector Q.
NamedState make_tau();

// Tensor product of two named states across (A A'):(B B'); the projector
// is the product of the input projectors.
NamedState tensor_states(const NamedState &s1, const NamedState &s2);

} // namespace pptbounds

#endif
