#include "pptbounds/states.hpp"

#include <cmath>

#include "pptbounds/errors.hpp"

namespace pptbounds {

namespace {

std::vector<cdouble> basis_ket(std::size_t dim, std::size_t idx) {
    std::vector<cdouble> v(dim, 0.0);
    v[idx] = 1.0;
    return v;
}

// Builds the state Σ w_i |k_i><k_i| together with the projector onto
// span{k_i}. The kets must be orthonormal.
NamedState from_eigensystem(std::string name, std::vector<double> params,
                            std::size_t dim_a, std::size_t dim_b,
                            const std::vector<std::vector<cdouble>> &kets,
                            const std::vector<double> &weights) {
    const std::size_t n = dim_a * dim_b;
    ComplexMatrix rho(n, n), proj(n, n);
    for (std::size_t k = 0; k < kets.size(); ++k) {
        const ComplexMatrix kk = outer(kets[k], kets[k]);
        rho += weights[k] * kk;
        proj += kk;
    }
    DensityMatrix state({dim_a, dim_b, std::move(rho)});
    SupportProjector projector({dim_a, dim_b, std::move(proj)});
    return {std::move(name), std::move(params), std::move(state), std::move(projector)};
}

} // namespace

std::vector<cdouble> make_ket(const std::vector<cdouble> &coeffs, std::size_t dim_a,
                              std::size_t dim_b) {
    if (coeffs.size() != dim_a * dim_b)
        throw DimensionMismatchError("make_ket: coefficient count != dimA*dimB");
    double norm2 = 0.0;
    for (const auto &c : coeffs)
        norm2 += std::norm(c);
    if (norm2 < 1e-28)
        throw ZeroVectorError("make_ket: zero vector");
    const double inv = 1.0 / std::sqrt(norm2);
    std::vector<cdouble> out(coeffs);
    for (auto &c : out)
        c *= inv;
    return out;
}

NamedState make_rho_v() {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<cdouble> v1(9, 0.0), v2(9, 0.0);
    v1[1] = s;  // |01>
    v1[3] = -s; // |10>
    v2[2] = s;  // |02>
    v2[6] = -s; // |20>
    return from_eigensystem("rho_v", {}, 3, 3, {v1, v2}, {0.5, 0.5});
}

NamedState make_rho_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw BadParameterError("rho_alpha: alpha must lie in (0,1)");
    const double sa = std::sqrt(alpha), sb = std::sqrt(1.0 - alpha);
    std::vector<cdouble> psi1(9, 0.0), psi2(9, 0.0);
    psi1[1] = sa;  // |01>
    psi1[3] = -sb; // |10>
    psi2[2] = sa;  // |02>
    psi2[6] = -sb; // |20>
    return from_eigensystem("rho_alpha", {alpha}, 3, 3, {psi1, psi2}, {0.5, 0.5});
}

NamedState make_ranktwo_antisym(double p, double theta) {
    if (!(p > 0.0 && p < 1.0))
        throw BadParameterError("ranktwo: p must lie in (0,1)");
    if (!(theta >= 0.0 && theta <= std::asin(1.0) * 2.0 + 1e-12)) // pi/2
        throw BadParameterError("ranktwo: theta must lie in [0, pi/2]");
    const double s = 1.0 / std::sqrt(2.0);
    const double ct = std::cos(theta), st = std::sin(theta);
    std::vector<cdouble> u1(9, 0.0), u2(9, 0.0);
    u1[1] = s;       // |01>
    u1[3] = -s;      // |10>
    u2[2] = s * ct;  // |02>
    u2[5] = s * st;  // |12>
    u2[6] = -s * ct; // |20>
    u2[7] = -s * st; // |21>
    return from_eigensystem("ranktwo", {p, theta}, 3, 3, {u1, u2}, {p, 1.0 - p});
}

NamedState make_max_entangled(std::size_t d) {
    if (d < 2)
        throw BadParameterError("maxent: d must be >= 2");
    std::vector<cdouble> phi(d * d, 0.0);
    const double s = 1.0 / std::sqrt(static_cast<double>(d));
    for (std::size_t i = 0; i < d; ++i)
        phi[i * d + i] = s;
    return from_eigensystem("maxent", {static_cast<double>(d)}, d, d, {phi}, {1.0});
}

NamedState make_antisymmetric_state() {
    const double s = 1.0 / std::sqrt(2.0);
    std::vector<std::vector<cdouble>> kets;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            std::vector<cdouble> a(9, 0.0);
            a[i * 3 + j] = s;
            a[j * 3 + i] = -s;
            kets.push_back(std::move(a));
        }
    return from_eigensystem("antisym3", {}, 3, 3, kets,
                            {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
}

NamedState make_product_ground(std::size_t d) {
    if (d < 2)
        throw BadParameterError("ground: d must be >= 2");
    return from_eigensystem("ground", {static_cast<double>(d)}, d, d,
                            {basis_ket(d * d, 0)}, {1.0});
}

BipartiteOperator make_q_operator() {
    ComplexMatrix q(9, 9);
    q(1, 1) = 1.0; // |01>
    q(3, 3) = 1.0; // |10>
    q(2, 2) = 1.0; // |02>
    q(6, 6) = 1.0; // |20>
    return {3, 3, std::move(q)};
}

NamedState make_tau() {
    const BipartiteOperator q = make_q_operator();
    ComplexMatrix tau = q.matrix;
    tau *= 0.25;
    DensityMatrix state({3, 3, std::move(tau)});
    SupportProjector projector(q);
    return {"tau_q", {}, std::move(state), std::move(projector)};
}

NamedState tensor_states(const NamedState &s1, const NamedState &s2) {
    BipartiteOperator rho = kron(s1.state.op(), s2.state.op());
    BipartiteOperator proj = kron(s1.projector.op(), s2.projector.op());
    DensityMatrix state(std::move(rho));
    SupportProjector projector(std::move(proj));
    return {"(" + s1.name + ")x(" + s2.name + ")", {}, std::move(state),
            std::move(projector)};
}

} // namespace pptbounds
