#include "pptbounds/certificates.hpp"

#include <cmath>

#include "pptbounds/eig.hpp"
#include "pptbounds/errors.hpp"
#include "pptbounds/states.hpp"

namespace pptbounds {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::vector<cdouble> ket9(std::initializer_list<std::pair<int, double>> amps) {
    std::vector<cdouble> v(9, 0.0);
    for (const auto &[idx, a] : amps)
        v[idx] = a;
    return v;
}

// |00> + |11> + |22>, unnormalized
std::vector<cdouble> phi_plus9() { return ket9({{0, 1.0}, {4, 1.0}, {8, 1.0}}); }

void claim_entrywise(WitnessCheck &c, const std::string &what,
                     const ComplexMatrix &lhs, const ComplexMatrix &rhs) {
    c.claims.push_back({what, lhs.max_abs_diff(rhs)});
}

void claim_psd(WitnessCheck &c, const std::string &what, const ComplexMatrix &m) {
    c.claims.push_back({what, std::max(0.0, -min_eigenvalue(m))});
}

void require_feasible_primal(const BipartiteOperator &y, double t,
                             const SupportProjector &p, const char *which) {
    const ComplexMatrix pt = partial_transpose(p.op()).matrix;
    const ComplexMatrix ypt = partial_transpose(y).matrix;
    if (min_eigenvalue(y.matrix - pt) < -1e-8 || min_eigenvalue(y.matrix + pt) < -1e-8 ||
        op_norm(ypt) > t + 1e-8)
        throw InfeasibleInputError(std::string("combine_primal: input ") + which +
                                   " is not feasible at 1e-8");
}

} // namespace

double WitnessCheck::max_violation() const {
    double v = 0.0;
    for (const auto &cl : claims)
        v = std::max(v, cl.violation);
    return v;
}

void WitnessCheck::finish() { passed = max_violation() <= tolerance; }

BipartiteOperator cost_witness_matrix() {
    // Y = [Q + |00><00| + (|11>+|22>)(<11|+<22|)] / 2
    const auto q = make_q_operator();
    const auto w = ket9({{4, 1.0}, {8, 1.0}});
    ComplexMatrix y = q.matrix + outer(ket9({{0, 1.0}}), ket9({{0, 1.0}})) + outer(w, w);
    y *= 0.5;
    return {3, 3, std::move(y)};
}

BipartiteOperator distill_witness_matrix() {
    const auto rv = make_rho_v();
    const double k = 3.0 - 2.0 * std::sqrt(2.0);
    const auto r1 = ket9({{1, kInvSqrt2}, {3, kInvSqrt2}});
    const auto r2 = ket9({{2, kInvSqrt2}, {6, kInvSqrt2}});
    ComplexMatrix r = outer(r1, r1, k) + outer(r2, r2, k) + rv.projector.matrix();
    return {3, 3, std::move(r)};
}

BipartiteOperator alpha_witness_matrix(double alpha) {
    if (!(alpha > 0.0 && alpha <= 0.5))
        throw BadParameterError("alpha_witness: alpha must lie in (0, 1/2]");
    const double root = std::sqrt(alpha * (1.0 - alpha));
    ComplexMatrix y(9, 9);
    y(1, 1) = alpha;       // |01>
    y(2, 2) = alpha;       // |02>
    y(3, 3) = 1.0 - alpha; // |10>
    y(6, 6) = 1.0 - alpha; // |20>
    y(0, 0) = root;
    y(4, 4) = root;
    y(8, 8) = root;
    y(4, 8) = root; // |11><22|
    y(8, 4) = root;
    return {3, 3, std::move(y)};
}

BipartiteOperator ranktwo_witness_matrix(double p, double theta) {
    const auto s = make_ranktwo_antisym(p, theta);
    const auto phi = phi_plus9();
    ComplexMatrix y = partial_transpose(s.projector.op()).matrix + outer(phi, phi, 0.5);
    return {3, 3, std::move(y)};
}

WitnessCheck cost_witness_rho_v(double tol, const BipartiteOperator *override_y) {
    WitnessCheck c{"cost_witness_rho_v", tol, {}, false, 0.0};
    const auto rv = make_rho_v();
    const BipartiteOperator y = override_y ? *override_y : cost_witness_matrix();
    const ComplexMatrix pt = partial_transpose(rv.projector.op()).matrix;

    const auto phi = phi_plus9();
    claim_entrywise(c, "Y - P^TB = |phi+><phi+|/2", y.matrix - pt, outer(phi, phi, 0.5));

    const auto q = make_q_operator();
    const auto psi = ket9({{0, 1.0}, {4, -1.0}, {8, -1.0}});
    claim_entrywise(c, "Y + P^TB = Q + |psi><psi|/2", y.matrix + pt,
                    q.matrix + outer(psi, psi, 0.5));
    claim_psd(c, "Y - P^TB psd", y.matrix - pt);
    claim_psd(c, "Y + P^TB psd", y.matrix + pt);

    const double norm = op_norm(partial_transpose(y).matrix);
    c.claims.push_back({"op norm of Y^TB equals 1/2", std::abs(norm - 0.5)});
    c.certified_bits = -std::log2(norm);
    c.finish();
    return c;
}

WitnessCheck distill_witness_rho_v(double tol, const BipartiteOperator *override_r) {
    WitnessCheck c{"distill_witness_rho_v", tol, {}, false, 0.0};
    const auto rv = make_rho_v();
    const BipartiteOperator r = override_r ? *override_r : distill_witness_matrix();

    claim_psd(c, "R - P psd", r.matrix - rv.projector.matrix());
    claim_psd(c, "1 - R psd", ComplexMatrix::identity(9) - r.matrix);

    const double norm = op_norm(partial_transpose(r).matrix);
    c.claims.push_back(
        {"op norm of R^TB equals 2-sqrt(2)", std::abs(norm - (2.0 - std::sqrt(2.0)))});
    c.certified_bits = -std::log2(norm);
    c.finish();
    return c;
}

WitnessCheck alpha_witness(double alpha, double tol) {
    WitnessCheck c{"alpha_witness", tol, {}, false, 0.0};
    const BipartiteOperator y = alpha_witness_matrix(alpha);
    const auto s = make_rho_alpha(alpha);
    const ComplexMatrix pt = partial_transpose(s.projector.op()).matrix;

    claim_psd(c, "Y - P^TB psd", y.matrix - pt);
    claim_psd(c, "Y + P^TB psd", y.matrix + pt);
    const double norm = op_norm(partial_transpose(y).matrix);
    c.claims.push_back(
        {"op norm of Y^TB <= 1-alpha", std::max(0.0, norm - (1.0 - alpha))});
    c.certified_bits = -std::log2(norm);
    c.finish();
    return c;
}

WitnessCheck ranktwo_witness(double p, double theta, double tol) {
    WitnessCheck c{"ranktwo_witness", tol, {}, false, 0.0};
    const auto s = make_ranktwo_antisym(p, theta);
    const BipartiteOperator y = ranktwo_witness_matrix(p, theta);
    const ComplexMatrix pt = partial_transpose(s.projector.op()).matrix;

    claim_psd(c, "Y - P^TB psd", y.matrix - pt);
    claim_psd(c, "Y + P^TB psd", y.matrix + pt);
    const double norm = op_norm(partial_transpose(y).matrix);
    c.claims.push_back({"op norm of Y^TB <= 1/2", std::max(0.0, norm - 0.5)});
    const double tn = trace_norm(partial_transpose(s.state.op()).matrix);
    c.claims.push_back({"trace norm of rho^TB < 2", std::max(0.0, tn - (2.0 - 1e-9))});
    c.certified_bits = -std::log2(norm);
    c.finish();
    return c;
}

PrimalCombination combine_primal(const BipartiteOperator &y1, double t1,
                                 const BipartiteOperator &y2, double t2,
                                 const SupportProjector &p1,
                                 const SupportProjector &p2, double tol) {
    require_feasible_primal(y1, t1, p1, "1");
    require_feasible_primal(y2, t2, p2, "2");

    PrimalCombination out{kron(y1, y2), t1 * t2,
                          {"combine_primal", tol, {}, false, 0.0}};
    WitnessCheck &c = out.check;

    const BipartiteOperator p1t = partial_transpose(p1.op());
    const BipartiteOperator p2t = partial_transpose(p2.op());
    const ComplexMatrix p12t = kron(p1t, p2t).matrix;

    // Half-sum decompositions behind both PSD facts.
    const BipartiteOperator ap{y1.dim_a, y1.dim_b, y1.matrix + p1t.matrix};
    const BipartiteOperator am{y1.dim_a, y1.dim_b, y1.matrix - p1t.matrix};
    const BipartiteOperator bp{y2.dim_a, y2.dim_b, y2.matrix + p2t.matrix};
    const BipartiteOperator bm{y2.dim_a, y2.dim_b, y2.matrix - p2t.matrix};
    ComplexMatrix plus_id = kron(ap, bp).matrix + kron(am, bm).matrix;
    plus_id *= 0.5;
    ComplexMatrix minus_id = kron(ap, bm).matrix + kron(am, bp).matrix;
    minus_id *= 0.5;
    claim_entrywise(c, "Y12 + P12^TB halves identity", out.y.matrix + p12t, plus_id);
    claim_entrywise(c, "Y12 - P12^TB halves identity", out.y.matrix - p12t, minus_id);
    claim_psd(c, "Y12 + P12^TB psd", out.y.matrix + p12t);
    claim_psd(c, "Y12 - P12^TB psd", out.y.matrix - p12t);

    const double norm = op_norm(partial_transpose(out.y).matrix);
    c.claims.push_back({"op norm of Y12^TB <= t1*t2", std::max(0.0, norm - out.t)});
    c.certified_bits = -std::log2(std::max(norm, out.t));
    c.finish();
    return out;
}

DualCombination combine_dual(const DualTuple &a, const DualTuple &b,
                             const SupportProjector &p1, const SupportProjector &p2,
                             double tol) {
    const auto check_tuple = [](const DualTuple &t, const char *which) {
        const ComplexMatrix slack =
            partial_transpose({t.w.dim_a, t.w.dim_b, t.w.matrix - t.x.matrix}).matrix -
            t.v.matrix - t.f.matrix;
        if (min_eigenvalue(t.v.matrix) < -1e-8 || min_eigenvalue(t.f.matrix) < -1e-8 ||
            min_eigenvalue(t.w.matrix) < -1e-8 || min_eigenvalue(t.x.matrix) < -1e-8 ||
            min_eigenvalue(slack) < -1e-8 ||
            (t.w.matrix.trace() + t.x.matrix.trace()).real() > 1.0 + 1e-8)
            throw InfeasibleInputError(std::string("combine_dual: input ") + which +
                                       " is not feasible at 1e-8");
    };
    check_tuple(a, "1");
    check_tuple(b, "2");

    const auto objective_of = [](const DualTuple &t, const ComplexMatrix &proj) {
        const BipartiteOperator diff{t.v.dim_a, t.v.dim_b, t.v.matrix - t.f.matrix};
        return (proj * partial_transpose(diff).matrix).trace().real();
    };
    const double obj1 = objective_of(a, p1.matrix());
    const double obj2 = objective_of(b, p2.matrix());

    DualCombination out;
    out.tuple.v = kron(a.v, b.v);
    out.tuple.v.matrix += kron(a.f, b.f).matrix;
    out.tuple.f = kron(a.v, b.f);
    out.tuple.f.matrix += kron(a.f, b.v).matrix;
    out.tuple.w = kron(a.w, b.w);
    out.tuple.w.matrix += kron(a.x, b.x).matrix;
    out.tuple.x = kron(a.w, b.x);
    out.tuple.x.matrix += kron(a.x, b.w).matrix;
    out.check = {"combine_dual", tol, {}, false, 0.0};
    WitnessCheck &c = out.check;

    // V + F = (V1+F1) x (V2+F2)
    const BipartiteOperator vf1{a.v.dim_a, a.v.dim_b, a.v.matrix + a.f.matrix};
    const BipartiteOperator vf2{b.v.dim_a, b.v.dim_b, b.v.matrix + b.f.matrix};
    claim_entrywise(c, "V + F = (V1+F1) x (V2+F2)",
                    out.tuple.v.matrix + out.tuple.f.matrix, kron(vf1, vf2).matrix);

    const ComplexMatrix slack =
        partial_transpose({out.tuple.w.dim_a, out.tuple.w.dim_b,
                           out.tuple.w.matrix - out.tuple.x.matrix})
            .matrix -
        out.tuple.v.matrix - out.tuple.f.matrix;
    claim_psd(c, "(W-X)^TB - V - F psd", slack);
    claim_psd(c, "V psd", out.tuple.v.matrix);
    claim_psd(c, "F psd", out.tuple.f.matrix);
    claim_psd(c, "W psd", out.tuple.w.matrix);
    claim_psd(c, "X psd", out.tuple.x.matrix);
    const double trwx = (out.tuple.w.matrix.trace() + out.tuple.x.matrix.trace()).real();
    c.claims.push_back({"tr(W+X) <= 1", std::max(0.0, trwx - 1.0)});

    const ComplexMatrix p12 = kron(p1.op(), p2.op()).matrix;
    out.objective = objective_of(out.tuple, p12);
    c.claims.push_back(
        {"combined objective equals product", std::abs(out.objective - obj1 * obj2)});
    c.finish();
    return out;
}

} // namespace pptbounds
