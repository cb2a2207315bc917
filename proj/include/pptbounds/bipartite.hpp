#ifndef PPTBOUNDS_BIPARTITE_HPP
#define PPTBOUNDS_BIPARTITE_HPP

#include <cstddef>

#include "pptbounds/complex_matrix.hpp"

namespace pptbounds {

// Operator on A ⊗ B. Basis convention: |i_A j_B> sits at flat index
// i*dimB + j.
struct BipartiteOperator {
    std::size_t dim_a = 0;
    std::size_t dim_b = 0;
    ComplexMatrix matrix;

    BipartiteOperator() = default;
    // Validates that matrix is square of size dim_a*dim_b with finite entries.
    BipartiteOperator(std::size_t dim_a, std::size_t dim_b, ComplexMatrix m);

    std::size_t dim() const { return dim_a * dim_b; }
};

BipartiteOperator bipartite_zero(std::size_t dim_a, std::size_t dim_b);
BipartiteOperator bipartite_identity(std::size_t dim_a, std::size_t dim_b);

// Transposition of the B indices: <i_A l_B| out |k_A j_B> = <i_A j_B| x |k_A l_B>.
BipartiteOperator partial_transpose(const BipartiteOperator &x);

// Tensor product reordered so the result is bipartite across (A A'):(B B').
// A flat Kronecker product would interleave the systems as A B A' B'; this
// applies the index permutation (a, a', b, b') after it, which is what makes
// partial_transpose(kron(x, y)) == kron(partial_transpose(x), partial_transpose(y)).
BipartiteOperator kron(const BipartiteOperator &x, const BipartiteOperator &y);

// SWAP operator on d ⊗ d: |ij> -> |ji>.
BipartiteOperator swap_operator(std::size_t d);

} // namespace pptbounds

#endif
