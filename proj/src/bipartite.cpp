#include "pptbounds/bipartite.hpp"

#include "pptbounds/errors.hpp"

namespace pptbounds {

BipartiteOperator::BipartiteOperator(std::size_t da, std::size_t db, ComplexMatrix m)
    : dim_a(da), dim_b(db), matrix(std::move(m)) {
    if (dim_a == 0 || dim_b == 0)
        throw BadParameterError("bipartite operator: dimensions must be positive");
    if (matrix.rows() != dim_a * dim_b || matrix.cols() != dim_a * dim_b)
        throw DimensionMismatchError("bipartite operator: matrix must be square of size dimA*dimB");
    if (!matrix.all_finite())
        throw BadParameterError("bipartite operator: non-finite entries");
}

BipartiteOperator bipartite_zero(std::size_t dim_a, std::size_t dim_b) {
    return {dim_a, dim_b, ComplexMatrix(dim_a * dim_b, dim_a * dim_b)};
}

BipartiteOperator bipartite_identity(std::size_t dim_a, std::size_t dim_b) {
    return {dim_a, dim_b, ComplexMatrix::identity(dim_a * dim_b)};
}

BipartiteOperator partial_transpose(const BipartiteOperator &x) {
    const std::size_t da = x.dim_a, db = x.dim_b;
    ComplexMatrix out(da * db, da * db);
    for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < db; ++j)
            for (std::size_t k = 0; k < da; ++k)
                for (std::size_t l = 0; l < db; ++l)
                    out(i * db + l, k * db + j) = x.matrix(i * db + j, k * db + l);
    return {da, db, std::move(out)};
}

BipartiteOperator kron(const BipartiteOperator &x, const BipartiteOperator &y) {
    const std::size_t da1 = x.dim_a, db1 = x.dim_b;
    const std::size_t da2 = y.dim_a, db2 = y.dim_b;
    const std::size_t da = da1 * da2, db = db1 * db2;
    ComplexMatrix out(da * db, da * db);
    for (std::size_t a1 = 0; a1 < da1; ++a1)
        for (std::size_t b1 = 0; b1 < db1; ++b1)
            for (std::size_t a2 = 0; a2 < da2; ++a2)
                for (std::size_t b2 = 0; b2 < db2; ++b2) {
                    const std::size_t r = ((a1 * da2 + a2) * db1 + b1) * db2 + b2;
                    const std::size_t xr = a1 * db1 + b1;
                    const std::size_t yr = a2 * db2 + b2;
                    for (std::size_t c1 = 0; c1 < da1; ++c1)
                        for (std::size_t d1 = 0; d1 < db1; ++d1) {
                            const cdouble xv = x.matrix(xr, c1 * db1 + d1);
                            if (xv == cdouble(0.0))
                                continue;
                            for (std::size_t c2 = 0; c2 < da2; ++c2)
                                for (std::size_t d2 = 0; d2 < db2; ++d2) {
                                    const std::size_t c =
                                        ((c1 * da2 + c2) * db1 + d1) * db2 + d2;
                                    out(r, c) = xv * y.matrix(yr, c2 * db2 + d2);
                                }
                        }
                }
    return {da, db, std::move(out)};
}

BipartiteOperator swap_operator(std::size_t d) {
    ComplexMatrix m(d * d, d * d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            m(i * d + j, j * d + i) = 1.0;
    return {d, d, std::move(m)};
}

} // namespace pptbounds
