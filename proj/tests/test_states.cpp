#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pptbounds/eig.hpp"
#include "pptbounds/errors.hpp"
#include "pptbounds/states.hpp"
#include "test_util.hpp"

using namespace pptbounds;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

void check_state_consistency(const NamedState &s) {
    // DensityMatrix invariants were enforced at construction (1e-10).
    const auto p = support_projector(s.state);
    CHECK(p.rank() == s.projector.rank());
    CHECK(p.matrix().max_abs_diff(s.projector.matrix()) < 1e-9);
}

} // namespace

TEST_CASE("make_ket: basis vector and normalization") {
    const auto k00 = make_ket({1.0, 0.0, 0.0, 0.0}, 2, 2);
    CHECK(k00[0] == cdouble(1.0));
    const auto v1 = make_ket({0.0, 1.0, -1.0, 0.0}, 2, 2);
    CHECK(std::abs(v1[1] - cdouble(kInvSqrt2)) < 1e-12);
    CHECK(std::abs(v1[2] + cdouble(kInvSqrt2)) < 1e-12);
    double norm2 = 0.0;
    for (const auto &c : v1)
        norm2 += std::norm(c);
    CHECK(std::abs(norm2 - 1.0) < 1e-12);
}

TEST_CASE("make_ket: psi1 for the alpha family") {
    const double a = 0.42;
    std::vector<cdouble> coeffs(9, 0.0);
    coeffs[1] = std::sqrt(a);
    coeffs[3] = -std::sqrt(1.0 - a);
    const auto psi1 = make_ket(coeffs, 3, 3);
    CHECK(std::abs(psi1[1] - cdouble(std::sqrt(a))) < 1e-12);
    CHECK(std::abs(psi1[3] + cdouble(std::sqrt(1.0 - a))) < 1e-12);
}

TEST_CASE("make_ket: zero vector rejected, wrong length rejected") {
    CHECK_THROWS_AS(make_ket(std::vector<cdouble>(4, 0.0), 2, 2), ZeroVectorError);
    CHECK_THROWS_AS(make_ket(std::vector<cdouble>(3, 1.0), 2, 2),
                    DimensionMismatchError);
}

TEST_CASE("rho_v: trace, rank, support") {
    const auto rv = make_rho_v();
    CHECK(std::abs(rv.state.matrix().trace() - cdouble(1.0)) < 1e-14);
    CHECK(rv.projector.rank() == 2);
    check_state_consistency(rv);
}

TEST_CASE("rho_v: negativity value and antisymmetry") {
    const auto rv = make_rho_v();
    CHECK(trace_norm(partial_transpose(rv.state.op()).matrix) ==
          doctest::Approx(1.0 + kInvSqrt2).epsilon(1e-11));
    // SWAP rho_v SWAP = rho_v (each eigenvector picks up sign -1).
    const auto sw = swap_operator(3);
    const ComplexMatrix conj = sw.matrix * rv.state.matrix() * sw.matrix;
    CHECK(conj.max_abs_diff(rv.state.matrix()) < 1e-14);
    // SWAP |v1> = -|v1>.
    std::vector<cdouble> v1(9, 0.0);
    v1[1] = kInvSqrt2;
    v1[3] = -kInvSqrt2;
    for (std::size_t i = 0; i < 9; ++i) {
        cdouble s = 0.0;
        for (std::size_t j = 0; j < 9; ++j)
            s += sw.matrix(i, j) * v1[j];
        CHECK(std::abs(s + v1[i]) < 1e-14);
    }
}

TEST_CASE("rho_alpha: parameter specialization at 1/2 gives rho_v") {
    const auto ra = make_rho_alpha(0.5);
    const auto rv = make_rho_v();
    CHECK(ra.state.matrix().max_abs_diff(rv.state.matrix()) < 1e-12);
    CHECK(ra.projector.matrix().max_abs_diff(rv.projector.matrix()) < 1e-12);
}

TEST_CASE("rho_alpha: negativity closed form and eta lower bound constant") {
    const auto s = make_rho_alpha(0.42);
    const double en =
        std::log2(trace_norm(partial_transpose(s.state.op()).matrix));
    const double want = std::log2(1.0 + std::sqrt(2.0 * 0.42 * 0.58));
    CHECK(en == doctest::Approx(want).epsilon(1e-10));
    CHECK(en == doctest::Approx(0.7638337).epsilon(1e-6));
    CHECK(-std::log2(1.0 - 0.42) == doctest::Approx(0.785875).epsilon(1e-5));
    check_state_consistency(s);
}

TEST_CASE("rho_alpha: domain validation") {
    CHECK_THROWS_AS(make_rho_alpha(0.0), BadParameterError);
    CHECK_THROWS_AS(make_rho_alpha(1.0), BadParameterError);
    CHECK_THROWS_AS(make_rho_alpha(-3.0), BadParameterError);
}

TEST_CASE("ranktwo: specialization (1/2, 0) is rho_v") {
    const auto rt = make_ranktwo_antisym(0.5, 0.0);
    const auto rv = make_rho_v();
    CHECK(rt.state.matrix().max_abs_diff(rv.state.matrix()) < 1e-12);
}

TEST_CASE("ranktwo: partial transpose norm stays below 2 on a 20x20 grid") {
    const double pi2 = 2.0 * std::asin(1.0);
    for (int i = 1; i <= 20; ++i)
        for (int j = 0; j < 20; ++j) {
            const double p = i / 21.0;
            const double theta = pi2 * j / 19.0;
            const auto s = make_ranktwo_antisym(p, theta);
            CHECK(trace_norm(partial_transpose(s.state.op()).matrix) < 2.0);
        }
}

TEST_CASE("ranktwo: orthogonal eigensystem and consistency") {
    const auto s = make_ranktwo_antisym(0.3, 0.785398);
    CHECK(s.projector.rank() == 2);
    check_state_consistency(s);
    CHECK_THROWS_AS(make_ranktwo_antisym(0.0, 0.1), BadParameterError);
    CHECK_THROWS_AS(make_ranktwo_antisym(0.5, -0.1), BadParameterError);
    CHECK_THROWS_AS(make_ranktwo_antisym(0.5, 3.15), BadParameterError);
}

TEST_CASE("maxent: negativity, trace norm and fidelity") {
    const auto phi2 = make_max_entangled(2);
    CHECK(std::log2(trace_norm(partial_transpose(phi2.state.op()).matrix)) ==
          doctest::Approx(1.0).epsilon(1e-11));
    const auto phi3 = make_max_entangled(3);
    CHECK(trace_norm(partial_transpose(phi3.state.op()).matrix) ==
          doctest::Approx(3.0).epsilon(1e-11));
    CHECK(phi2.state.matrix()(0, 0).real() == doctest::Approx(0.5));
    CHECK_THROWS_AS(make_max_entangled(1), BadParameterError);
    check_state_consistency(phi2);
}

TEST_CASE("antisymmetric state: flat rank-3 spectrum") {
    const auto sa = make_antisymmetric_state();
    const auto vals = eig_hermitian_values(sa.state.matrix());
    for (int i = 0; i < 3; ++i)
        CHECK(vals[i] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    for (int i = 3; i < 9; ++i)
        CHECK(std::abs(vals[i]) < 1e-12);
    check_state_consistency(sa);
}

TEST_CASE("Q operator and tau") {
    const auto q = make_q_operator();
    const auto tau = make_tau();
    // tau is PPT exactly: tau^TB = tau entrywise.
    const auto pt = partial_transpose(tau.state.op());
    CHECK(pt.matrix.max_abs_diff(tau.state.matrix()) == 0.0);
    const auto vals = eig_hermitian_values(tau.state.matrix());
    for (int i = 0; i < 4; ++i)
        CHECK(vals[i] == doctest::Approx(0.25).epsilon(1e-13));
    for (int i = 4; i < 9; ++i)
        CHECK(std::abs(vals[i]) < 1e-13);
    // tr(P_v Q)/4 = 1/2
    const auto rv = make_rho_v();
    const cdouble overlap = (rv.projector.matrix() * q.matrix).trace();
    CHECK(overlap.real() / 4.0 == doctest::Approx(0.5).epsilon(1e-13));
    check_state_consistency(tau);
}

TEST_CASE("tensor_states multiplies dimensions and ranks") {
    const auto rv = make_rho_v();
    const auto phi2 = make_max_entangled(2);
    const auto prod = tensor_states(rv, phi2);
    CHECK(prod.state.dim_a() == 6);
    CHECK(prod.state.dim_b() == 6);
    CHECK(prod.projector.rank() == 2);
    check_state_consistency(prod);
}

TEST_CASE("product ground state") {
    const auto g = make_product_ground(2);
    CHECK(g.projector.rank() == 1);
    CHECK(g.state.matrix()(0, 0) == cdouble(1.0));
    check_state_consistency(g);
}
