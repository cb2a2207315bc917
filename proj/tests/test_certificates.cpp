#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pptbounds/certificates.hpp"
#include "pptbounds/eig.hpp"
#include "pptbounds/errors.hpp"
#include "pptbounds/measures.hpp"
#include "test_util.hpp"

using namespace pptbounds;

namespace {
const double kEnRhoV = std::log2(1.0 + 1.0 / std::sqrt(2.0));
}

TEST_CASE("cost witness for rho_v holds to rounding error") {
    const auto c = cost_witness_rho_v();
    CHECK(c.passed);
    CHECK(c.max_violation() <= 1e-12);
    CHECK(c.certified_bits == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cost witness catches a corrupted matrix") {
    BipartiteOperator y = cost_witness_matrix();
    y.matrix(0, 0) += 1e-6;
    const auto c = cost_witness_rho_v(1e-10, &y);
    CHECK(!c.passed);
    CHECK(c.claims[0].violation > 1e-10); // the rank-one identity breaks first
}

TEST_CASE("distillation witness for rho_v") {
    const auto c = distill_witness_rho_v();
    CHECK(c.passed);
    CHECK(c.max_violation() <= 1e-12);
    CHECK(c.certified_bits == doctest::Approx(kEnRhoV).epsilon(1e-12));
}

TEST_CASE("distillation witness rejects a scaled matrix") {
    BipartiteOperator r = distill_witness_matrix();
    r.matrix *= 1.9; // breaks 1 - R ⪰ 0
    const auto c = distill_witness_rho_v(1e-10, &r);
    CHECK(!c.passed);
    bool upper_broken = false;
    for (const auto &cl : c.claims)
        if (cl.description == "1 - R psd" && cl.violation > 1e-10)
            upper_broken = true;
    CHECK(upper_broken);
}

TEST_CASE("alpha witness across parameters") {
    const auto c42 = alpha_witness(0.42);
    CHECK(c42.passed);
    CHECK(c42.certified_bits >= -std::log2(1.0 - 0.42) - 1e-9);

    const auto c50 = alpha_witness(0.5);
    CHECK(c50.passed);
    CHECK(c50.certified_bits == doctest::Approx(1.0).epsilon(1e-10));

    // valid outside the scan window as well
    CHECK(alpha_witness(0.3).passed);

    CHECK_THROWS_AS(alpha_witness(0.6), BadParameterError);
    CHECK_THROWS_AS(alpha_witness(0.0), BadParameterError);
}

TEST_CASE("rank-two witness: specialization and interior samples") {
    const auto c0 = ranktwo_witness(0.5, 0.0);
    CHECK(c0.passed);
    CHECK(c0.certified_bits >= 1.0 - 1e-9);

    const auto c1 = ranktwo_witness(0.3, 0.785398);
    CHECK(c1.passed);
    CHECK(c1.certified_bits >= 1.0 - 1e-9);

    const double pi2 = 2.0 * std::asin(1.0);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j)
            CHECK(ranktwo_witness((i + 1) / 6.0, pi2 * j / 4.0).passed);
}

TEST_CASE("combine primal: two rho_v witnesses certify the doubled bound") {
    const auto rv = make_rho_v();
    const BipartiteOperator y = cost_witness_matrix();
    const auto combo = combine_primal(y, 0.5, y, 0.5, rv.projector, rv.projector);
    CHECK(combo.check.passed);
    CHECK(combo.t == doctest::Approx(0.25));
    CHECK(combo.check.certified_bits == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("combine primal: mixed witnesses multiply their certified values") {
    const auto rv = make_rho_v();
    const auto ra = make_rho_alpha(0.42);
    const auto combo = combine_primal(cost_witness_matrix(), 0.5,
                                      alpha_witness_matrix(0.42), 1.0 - 0.42,
                                      rv.projector, ra.projector);
    CHECK(combo.check.passed);
    CHECK(combo.t == doctest::Approx(0.5 * 0.58).epsilon(1e-12));
}

TEST_CASE("combine primal rejects infeasible input") {
    const auto rv = make_rho_v();
    const BipartiteOperator zero = bipartite_zero(3, 3);
    CHECK_THROWS_AS(combine_primal(zero, 0.5, cost_witness_matrix(), 0.5,
                                   rv.projector, rv.projector),
                    InfeasibleInputError);
}

TEST_CASE("combine primal certifies the direct product solve at dim 36") {
    const auto rv = make_rho_v();
    const auto phi2 = make_max_entangled(2);
    // I/2 is the textbook witness for the maximally entangled state.
    ComplexMatrix half = ComplexMatrix::identity(4);
    half *= 0.5;
    const BipartiteOperator y_phi{2, 2, std::move(half)};
    const auto combo = combine_primal(cost_witness_matrix(), 0.5, y_phi, 0.5,
                                      rv.projector, phi2.projector);
    CHECK(combo.check.passed);
    const auto direct = e_eta_primal(tensor_states(rv, phi2).projector);
    CHECK(std::abs(combo.t - direct.eta) <= 1e-8);
}

TEST_CASE("combine dual: solver tuples for rho_v multiply to 1/4") {
    const auto rv = make_rho_v();
    const auto dual = e_eta_dual(rv.projector);
    const auto combo =
        combine_dual(dual.tuple, dual.tuple, rv.projector, rv.projector);
    CHECK(combo.check.passed);
    CHECK(combo.objective == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("combine dual: rho_v with the maximally entangled state") {
    const auto rv = make_rho_v();
    const auto phi2 = make_max_entangled(2);
    const auto d1 = e_eta_dual(rv.projector);
    const auto d2 = e_eta_dual(phi2.projector);
    const auto combo = combine_dual(d1.tuple, d2.tuple, rv.projector, phi2.projector);
    CHECK(combo.check.passed);
    CHECK(combo.objective == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("combine dual: the zero tuple is a vacuous but valid input") {
    const auto rv = make_rho_v();
    DualTuple zero{bipartite_zero(3, 3), bipartite_zero(3, 3), bipartite_zero(3, 3),
                   bipartite_zero(3, 3)};
    const auto d = e_eta_dual(rv.projector);
    const auto combo = combine_dual(zero, d.tuple, rv.projector, rv.projector);
    CHECK(combo.check.passed);
    CHECK(std::abs(combo.objective) < 1e-12);
}

TEST_CASE("solver and explicit witness agree on rho_v") {
    const auto rv = make_rho_v();
    const auto primal = e_eta_primal(rv.projector);
    CHECK(std::abs(primal.eta - 0.5) <= 1e-8);
    // the solver's optimizer achieves the same objective as the explicit Y
    CHECK(op_norm(partial_transpose(primal.y).matrix) ==
          doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("explicit witness injected as a fixed y verifies feasible at 1/2") {
    const auto rv = make_rho_v();
    const auto primal = e_eta_primal(rv.projector); // for the compiled problem
    const HermBasis basis(9, false);
    const auto coeffs = basis.coefficients(cost_witness_matrix().matrix);

    SdpSolution injected;
    injected.status = SolveStatus::Optimal;
    injected.y = coeffs;
    injected.y.push_back(0.5); // t
    injected.primal_value = -0.5;
    injected.dual_value = -0.5;

    const auto rep = verify_solution(primal.prob, injected);
    CHECK(rep.slack_min_eigenvalue >= -1e-10);
    CHECK(rep.objective_mismatch <= 1e-12);
    CHECK(rep.dual_residual == 0.0); // no dual matrices to check
}
