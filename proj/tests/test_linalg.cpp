#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pptbounds/density.hpp"
#include "pptbounds/eig.hpp"
#include "pptbounds/errors.hpp"
#include "pptbounds/states.hpp"
#include "test_util.hpp"

using namespace pptbounds;
using testutil::random_density;
using testutil::random_hermitian;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

double unitarity_defect(const ComplexMatrix &v) {
    const ComplexMatrix g = v.adjoint() * v;
    return g.max_abs_diff(ComplexMatrix::identity(v.rows()));
}

ComplexMatrix reconstruct(const EigResult &e) {
    const std::size_t n = e.eigenvalues.size();
    ComplexMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i)
        d(i, i) = e.eigenvalues[i];
    return e.eigenvectors * d * e.eigenvectors.adjoint();
}

} // namespace

TEST_CASE("eig: identity") {
    const auto e = eig_hermitian(ComplexMatrix::identity(3));
    for (double lam : e.eigenvalues)
        CHECK(lam == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("eig: rho_v spectrum is (1/2, 1/2, 0...)") {
    const auto rv = make_rho_v();
    const auto e = eig_hermitian(rv.state.matrix());
    CHECK(e.eigenvalues[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(e.eigenvalues[1] == doctest::Approx(0.5).epsilon(1e-12));
    for (std::size_t i = 2; i < 9; ++i)
        CHECK(std::abs(e.eigenvalues[i]) < 1e-12);
}

TEST_CASE("eig: reconstruction, unitarity and ordering on random input") {
    auto gen = testutil::rng(99);
    for (int rep = 0; rep < 8; ++rep) {
        const std::size_t n = 2 + rep;
        const ComplexMatrix h = random_hermitian(n, gen, rep % 2 == 0);
        const auto e = eig_hermitian(h);
        CHECK(reconstruct(e).max_abs_diff(h) < 1e-11 * std::max(1.0, h.max_abs()));
        CHECK(unitarity_defect(e.eigenvectors) < 1e-9);
        for (std::size_t i = 0; i + 1 < n; ++i)
            CHECK(e.eigenvalues[i] >= e.eigenvalues[i + 1]);
    }
}

TEST_CASE("eig: degenerate spectra keep orthonormal vectors") {
    // Projector with a 4-fold and a 5-fold eigenvalue.
    const auto q = make_q_operator();
    const auto e = eig_hermitian(q.matrix);
    CHECK(unitarity_defect(e.eigenvectors) < 1e-9);
    CHECK(reconstruct(e).max_abs_diff(q.matrix) < 1e-11);
}

TEST_CASE("eig: rejects non-hermitian input") {
    ComplexMatrix m(2, 2);
    m(0, 1) = 1.0;
    CHECK_THROWS_AS(eig_hermitian(m), NotHermitianError);
}

TEST_CASE("partial transpose: definition on 2x2 basis operators") {
    // |01><10| -> |00><11|
    BipartiteOperator x = bipartite_zero(2, 2);
    x.matrix(0 * 2 + 1, 1 * 2 + 0) = 1.0;
    const auto y = partial_transpose(x);
    CHECK(y.matrix(0 * 2 + 0, 1 * 2 + 1) == cdouble(1.0));
    cdouble total = 0.0;
    for (const auto &v : y.matrix.data())
        total += v;
    CHECK(std::abs(total - cdouble(1.0)) < 1e-15);
}

TEST_CASE("partial transpose: involution, trace and hermiticity preserved") {
    auto gen = testutil::rng(7);
    for (int rep = 0; rep < 6; ++rep) {
        const ComplexMatrix h = random_hermitian(6, gen);
        const BipartiteOperator x{2, 3, h};
        const auto xt = partial_transpose(x);
        CHECK(partial_transpose(xt).matrix.max_abs_diff(h) == 0.0);
        CHECK(std::abs(xt.matrix.trace() - h.trace()) < 1e-14);
        CHECK(xt.matrix.hermiticity_defect() < 1e-14);
    }
}

TEST_CASE("partial transpose: maximally entangled state becomes SWAP/2") {
    const auto phi2 = make_max_entangled(2);
    const auto pt = partial_transpose(phi2.state.op());
    auto sw = swap_operator(2);
    sw.matrix *= 0.5;
    CHECK(pt.matrix.max_abs_diff(sw.matrix) < 1e-15);
    const auto vals = eig_hermitian_values(pt.matrix);
    CHECK(vals[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(vals[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(vals[3] == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("kron: identity factor repeats the other operand blockwise") {
    auto gen = testutil::rng(21);
    const ComplexMatrix z = random_hermitian(4, gen);
    const BipartiteOperator zop{2, 2, z};
    const auto out = kron(bipartite_identity(2, 2), zop);
    CHECK(out.dim_a == 4);
    CHECK(out.dim_b == 4);
    for (std::size_t a1 = 0; a1 < 2; ++a1)
        for (std::size_t b1 = 0; b1 < 2; ++b1)
            for (std::size_t c1 = 0; c1 < 2; ++c1)
                for (std::size_t d1 = 0; d1 < 2; ++d1)
                    for (std::size_t r2 = 0; r2 < 4; ++r2)
                        for (std::size_t c2 = 0; c2 < 4; ++c2) {
                            const std::size_t a2 = r2 / 2, b2 = r2 % 2;
                            const std::size_t c2a = c2 / 2, d2b = c2 % 2;
                            const std::size_t row = ((a1 * 2 + a2) * 2 + b1) * 2 + b2;
                            const std::size_t col = ((c1 * 2 + c2a) * 2 + d1) * 2 + d2b;
                            const cdouble want =
                                (a1 == c1 && b1 == d1) ? z(r2, c2) : cdouble(0.0);
                            CHECK(std::abs(out.matrix(row, col) - want) < 1e-15);
                        }
}

TEST_CASE("kron: rho_v x rho_v has trace 1 and rank 4") {
    const auto rv = make_rho_v();
    const auto prod = kron(rv.state.op(), rv.state.op());
    CHECK(std::abs(prod.matrix.trace() - cdouble(1.0)) < 1e-12);
    const auto vals = eig_hermitian_values(prod.matrix);
    int nonzero = 0;
    for (double v : vals)
        if (std::abs(v) > 1e-10)
            ++nonzero;
    CHECK(nonzero == 4);
}

TEST_CASE("kron commutes with partial transpose") {
    auto gen = testutil::rng(31);
    const BipartiteOperator x{2, 2, random_hermitian(4, gen)};
    const BipartiteOperator y{3, 2, random_hermitian(6, gen)};
    const auto lhs = partial_transpose(kron(x, y));
    const auto rhs = kron(partial_transpose(x), partial_transpose(y));
    CHECK(lhs.matrix.max_abs_diff(rhs.matrix) < 1e-13);
}

TEST_CASE("trace norm: density matrices have trace norm 1") {
    auto gen = testutil::rng(5);
    for (int rep = 0; rep < 4; ++rep) {
        const auto rho = random_density(3, 3, 3, gen);
        CHECK(trace_norm(rho.matrix()) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(op_norm(rho.matrix()) <= 1.0 + 1e-10);
    }
}

TEST_CASE("trace norm: partial transpose of rho_v") {
    const auto rv = make_rho_v();
    const auto pt = partial_transpose(rv.state.op());
    CHECK(trace_norm(pt.matrix) ==
          doctest::Approx(1.0 + kInvSqrt2).epsilon(1e-11));
}

TEST_CASE("trace norm: rho_alpha closed form across the alpha grid") {
    for (double alpha = 0.42; alpha < 0.505; alpha += 0.02) {
        const auto s = make_rho_alpha(alpha);
        const auto pt = partial_transpose(s.state.op());
        const double want = 1.0 + std::sqrt(2.0 * alpha * (1.0 - alpha));
        CHECK(std::abs(trace_norm(pt.matrix) - want) < 1e-10);
    }
}

TEST_CASE("trace norm and op norm are multiplicative under kron") {
    auto gen = testutil::rng(55);
    for (int rep = 0; rep < 5; ++rep) {
        const BipartiteOperator x{2, 2, random_hermitian(4, gen)};
        const BipartiteOperator y{2, 2, random_hermitian(4, gen, true)};
        const auto prod = kron(x, y);
        const double tn = trace_norm(prod.matrix);
        const double tn_want = trace_norm(x.matrix) * trace_norm(y.matrix);
        CHECK(std::abs(tn - tn_want) < 1e-8 * std::max(1.0, tn_want));
        const double on = op_norm(prod.matrix);
        const double on_want = op_norm(x.matrix) * op_norm(y.matrix);
        CHECK(std::abs(on - on_want) < 1e-8 * std::max(1.0, on_want));
    }
}

TEST_CASE("trace norm of the doubled state matches the squared closed form") {
    const auto rv = make_rho_v();
    const auto prod = kron(rv.state.op(), rv.state.op());
    const double want = (1.0 + kInvSqrt2) * (1.0 + kInvSqrt2);
    CHECK(trace_norm(partial_transpose(prod).matrix) ==
          doctest::Approx(want).epsilon(1e-10));
}

TEST_CASE("op norm: identity and the distillation witness value") {
    CHECK(op_norm(ComplexMatrix::identity(5)) == doctest::Approx(1.0));
    // R = (3-2√2)(|r1><r1| + |r2><r2|) + P for rho_v; ‖R^TB‖∞ = 2-√2.
    const auto rv = make_rho_v();
    const double k = 3.0 - 2.0 * std::sqrt(2.0);
    std::vector<cdouble> r1(9, 0.0), r2(9, 0.0);
    r1[1] = kInvSqrt2;
    r1[3] = kInvSqrt2;
    r2[2] = kInvSqrt2;
    r2[6] = kInvSqrt2;
    ComplexMatrix r = outer(r1, r1, k) + outer(r2, r2, k) + rv.projector.matrix();
    const BipartiteOperator rop{3, 3, std::move(r)};
    CHECK(op_norm(partial_transpose(rop).matrix) ==
          doctest::Approx(2.0 - std::sqrt(2.0)).epsilon(1e-11));
}

TEST_CASE("support projector: pure state") {
    const auto g = make_product_ground(2);
    const auto p = support_projector(g.state);
    CHECK(p.rank() == 1);
    CHECK(p.matrix()(0, 0) == cdouble(1.0));
}

TEST_CASE("support projector: rho_v support and reconstruction") {
    const auto rv = make_rho_v();
    const auto p = support_projector(rv.state);
    CHECK(p.rank() == 2);
    CHECK(p.matrix().max_abs_diff(rv.projector.matrix()) < 1e-12);
    const ComplexMatrix prp = p.matrix() * rv.state.matrix() * p.matrix();
    CHECK(trace_norm(prp - rv.state.matrix()) < 1e-9);
}

TEST_CASE("support projector: rho_alpha matches the two-vector projector") {
    const auto s = make_rho_alpha(0.42);
    const auto p = support_projector(s.state);
    CHECK(p.rank() == 2);
    CHECK(p.matrix().max_abs_diff(s.projector.matrix()) < 1e-12);
}

TEST_CASE("support projector: zero state and bad cutoff are rejected") {
    CHECK_THROWS_AS(support_projector(make_rho_v().state, -1.0), BadParameterError);
    // A numerically zero matrix only passes DensityMatrix validation with
    // absurd tolerances; support_projector still refuses it.
    StateTolerances loose;
    loose.trace = 10.0;
    const DensityMatrix zero(bipartite_zero(2, 2), loose);
    CHECK_THROWS_AS(support_projector(zero), ZeroStateError);
}

TEST_CASE("relative entropy: S(rho||rho) = 0") {
    auto gen = testutil::rng(8);
    const auto rho = random_density(2, 2, 4, gen);
    CHECK(std::abs(relative_entropy(rho, rho)) < 1e-9);
}

TEST_CASE("relative entropy: S(rho_v || Q/4) = 1") {
    const auto rv = make_rho_v();
    const auto tau = make_tau();
    CHECK(relative_entropy(rv.state, tau.state) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("relative entropy: S(Phi(2) || I/4) = 2") {
    const auto phi = make_max_entangled(2);
    ComplexMatrix id = ComplexMatrix::identity(4);
    id *= 0.25;
    const DensityMatrix mixed({2, 2, std::move(id)});
    CHECK(relative_entropy(phi.state, mixed) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("relative entropy: infinite outside the support") {
    const auto rv = make_rho_v();
    const auto g = make_product_ground(3);
    CHECK(std::isinf(relative_entropy(rv.state, g.state)));
}

TEST_CASE("relative entropy: dimension mismatch") {
    const auto rv = make_rho_v();
    const auto g = make_product_ground(2);
    CHECK_THROWS_AS(relative_entropy(rv.state, g.state), DimensionMismatchError);
}

TEST_CASE("pinch: state supported on P is unchanged") {
    const auto rv = make_rho_v();
    const auto out = pinch(rv.state.op(), rv.projector);
    CHECK(out.matrix.max_abs_diff(rv.state.matrix()) < 1e-14);
}

TEST_CASE("pinch: maximally mixed state is invariant") {
    const auto rv = make_rho_v();
    ComplexMatrix id = ComplexMatrix::identity(9);
    id *= 1.0 / 9.0;
    const BipartiteOperator mixed{3, 3, std::move(id)};
    const auto out = pinch(mixed, rv.projector);
    CHECK(out.matrix.max_abs_diff(mixed.matrix) < 1e-14);
    CHECK(std::abs(out.matrix.trace() - mixed.matrix.trace()) < 1e-10);
}

TEST_CASE("pinch: relative entropy never increases") {
    auto gen = testutil::rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        const auto rho = random_density(2, 2, 4, gen);
        const auto sigma = random_density(2, 2, 4, gen);
        const auto part = random_density(2, 2, 2, gen);
        const auto p = support_projector(part);
        const DensityMatrix nr(pinch(rho.op(), p));
        const DensityMatrix ns(pinch(sigma.op(), p));
        CHECK(relative_entropy(nr, ns) <= relative_entropy(rho, sigma) + 1e-8);
    }
}
