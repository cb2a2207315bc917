#include "pptbounds/measures.hpp"

#include <chrono>
#include <cmath>

#include "pptbounds/eig.hpp"
#include "pptbounds/errors.hpp"
#include "pptbounds/herm_basis.hpp"

namespace pptbounds {

namespace {

SparseSym negate(SparseSym s) {
    for (auto &e : s.entries)
        e.value = -e.value;
    return s;
}

SparseSym minus_identity(std::size_t n) {
    SparseSym s;
    for (std::size_t i = 0; i < n; ++i)
        s.add(static_cast<int>(i), static_cast<int>(i), -1.0);
    return s;
}

void require_optimal(const SdpSolution &sol, const char *what) {
    if (sol.status != SolveStatus::Optimal)
        throw SolverFailedError(std::string(what) +
                                ": solver status " + to_string(sol.status));
}

// Degenerate instances can hit the double-precision gap floor a shade
// above the default 1e-8; the bound tolerances of this library are 1e-6,
// so escalate the gap target twice (3x, 10x) before giving up. The
// returned solution reports the tolerance it actually met in `gap`.
SdpSolution solve_measure(const LmiProblem &p, const SolveOptions &opts,
                          const char *what) {
    SdpSolution sol = solve(p, opts);
    for (double scale : {3.0, 10.0}) {
        if (sol.status != SolveStatus::NumericalTrouble)
            break;
        SolveOptions relaxed = opts;
        relaxed.gap_tol = opts.gap_tol * scale;
        sol = solve(p, relaxed);
    }
    require_optimal(sol, what);
    return sol;
}

bool needs_complex(const ComplexMatrix &m) { return m.max_abs_imag() != 0.0; }

// Dense solver-space form of the partial transpose of a basis element
// conjugated into the space spanned by `u` (columns orthonormal):
// (U B_p U†)^{T_B}.
SparseSym conjugated_pt_element(const HermBasis &basis, std::size_t p,
                                const ComplexMatrix &u, std::size_t dim_a,
                                std::size_t dim_b, bool cx) {
    const ComplexMatrix m = u * basis.element_matrix(p) * u.adjoint();
    const BipartiteOperator op{dim_a, dim_b, m};
    return sparse_from_dense(solver_matrix(partial_transpose(op).matrix, cx), 1e-14);
}

SparseSym conjugated_element(const HermBasis &basis, std::size_t p,
                             const ComplexMatrix &u, bool cx) {
    const ComplexMatrix m = u * basis.element_matrix(p) * u.adjoint();
    return sparse_from_dense(solver_matrix(m, cx), 1e-14);
}

} // namespace

double log_negativity(const DensityMatrix &rho) {
    return std::log2(trace_norm(partial_transpose(rho.op()).matrix));
}

double EtaPrimalResult::bits() const { return -std::log2(eta); }
double EtaDualResult::bits() const { return -std::log2(eta); }
double OverlapResult::bits() const { return -std::log2(value); }

EwResult e_w(const DensityMatrix &rho, const SolveOptions &opts) {
    const std::size_t n = rho.dim();
    const bool cx = needs_complex(rho.matrix());
    HermBasis basis(n, cx);
    const std::size_t nv = basis.count();
    const std::size_t ns = basis.solver_dim();

    LmiProblem p;
    p.num_vars = static_cast<int>(2 * nv); // A coefficients, then B coefficients
    p.objective.assign(p.num_vars, 0.0);
    for (std::size_t i = 0; i < nv; ++i) {
        p.objective[i] = -basis.trace(i);      // maximize -tr(A+B)
        p.objective[nv + i] = -basis.trace(i);
    }

    LmiBlock a_psd, b_psd, dom;
    a_psd.c = RealMatrix(ns, ns);
    b_psd.c = RealMatrix(ns, ns);
    dom.c = solver_matrix(rho.matrix(), cx);
    dom.c *= -1.0; // (A-B)^TB - rho ⪰ 0
    a_psd.a.resize(p.num_vars);
    b_psd.a.resize(p.num_vars);
    dom.a.resize(p.num_vars);
    for (std::size_t i = 0; i < nv; ++i) {
        const SparseSym e = basis.element(i);
        const SparseSym ept = basis.element_pt(i, rho.dim_a(), rho.dim_b());
        a_psd.a[i] = negate(e);
        b_psd.a[nv + i] = negate(e);
        dom.a[i] = negate(ept);
        dom.a[nv + i] = ept;
    }
    p.blocks = {std::move(a_psd), std::move(b_psd), std::move(dom)};

    const SdpSolution sol = solve_measure(p, opts, "e_w");

    const ComplexMatrix apart = basis.assemble(sol.y.data());
    const ComplexMatrix bpart = basis.assemble(sol.y.data() + nv);
    const BipartiteOperator diff{rho.dim_a(), rho.dim_b(), apart - bpart};
    EwResult out{std::log2(-sol.primal_value), -sol.primal_value,
                 partial_transpose(diff), sol, std::move(p)};
    return out;
}

EtaPrimalResult e_eta_primal(const SupportProjector &proj, const SolveOptions &opts) {
    const std::size_t n = proj.dim();
    const ComplexMatrix pt = partial_transpose(proj.op()).matrix;
    const bool cx = needs_complex(pt);
    HermBasis basis(n, cx);
    const std::size_t nv = basis.count();
    const std::size_t ns = basis.solver_dim();
    const int tvar = static_cast<int>(nv);

    LmiProblem p;
    p.num_vars = static_cast<int>(nv + 1);
    p.objective.assign(p.num_vars, 0.0);
    p.objective[tvar] = -1.0; // minimize t

    const RealMatrix ptd = solver_matrix(pt, cx);
    LmiBlock plus, minus, tb_plus, tb_minus;
    plus.c = ptd; // Y + P^TB ⪰ 0
    minus.c = ptd;
    minus.c *= -1.0; // Y - P^TB ⪰ 0
    tb_plus.c = RealMatrix(ns, ns);
    tb_minus.c = RealMatrix(ns, ns);
    plus.a.resize(p.num_vars);
    minus.a.resize(p.num_vars);
    tb_plus.a.resize(p.num_vars);
    tb_minus.a.resize(p.num_vars);
    for (std::size_t i = 0; i < nv; ++i) {
        const SparseSym e = basis.element(i);
        const SparseSym ept = basis.element_pt(i, proj.dim_a(), proj.dim_b());
        plus.a[i] = negate(e);
        minus.a[i] = negate(e);
        tb_plus.a[i] = negate(ept); // tI + Y^TB ⪰ 0
        tb_minus.a[i] = ept;        // tI - Y^TB ⪰ 0
    }
    tb_plus.a[tvar] = minus_identity(ns);
    tb_minus.a[tvar] = minus_identity(ns);
    p.blocks = {std::move(plus), std::move(minus), std::move(tb_plus),
                std::move(tb_minus)};

    const SdpSolution sol = solve_measure(p, opts, "e_eta_primal");
    EtaPrimalResult out{-sol.primal_value,
                        {proj.dim_a(), proj.dim_b(), basis.assemble(sol.y.data())},
                        sol,
                        std::move(p)};
    return out;
}

EtaDualResult e_eta_dual(const SupportProjector &proj, const SolveOptions &opts) {
    const std::size_t n = proj.dim();
    const ComplexMatrix pt = partial_transpose(proj.op()).matrix;
    const bool cx = needs_complex(pt);
    HermBasis basis(n, cx);
    const std::size_t nv = basis.count();
    const std::size_t ns = basis.solver_dim();

    LmiProblem p;
    p.num_vars = static_cast<int>(4 * nv); // V, F, W, X coefficient ranges
    p.objective.assign(p.num_vars, 0.0);
    const std::vector<double> pc = basis.coefficients(pt);
    for (std::size_t i = 0; i < nv; ++i) {
        p.objective[i] = pc[i];       // tr(P (V-F)^TB) = tr(P^TB V) - tr(P^TB F)
        p.objective[nv + i] = -pc[i];
    }

    LmiBlock v_psd, f_psd, w_psd, x_psd, slack, trace_cap;
    for (LmiBlock *blk : {&v_psd, &f_psd, &w_psd, &x_psd, &slack}) {
        blk->c = RealMatrix(ns, ns);
        blk->a.resize(p.num_vars);
    }
    trace_cap.c = RealMatrix(1, 1);
    trace_cap.c(0, 0) = 1.0;
    trace_cap.a.resize(p.num_vars);

    for (std::size_t i = 0; i < nv; ++i) {
        const SparseSym e = basis.element(i);
        const SparseSym ept = basis.element_pt(i, proj.dim_a(), proj.dim_b());
        v_psd.a[i] = negate(e);
        f_psd.a[nv + i] = negate(e);
        w_psd.a[2 * nv + i] = negate(e);
        x_psd.a[3 * nv + i] = negate(e);
        // (W-X)^TB - V - F ⪰ 0
        slack.a[i] = e;
        slack.a[nv + i] = e;
        slack.a[2 * nv + i] = negate(ept);
        slack.a[3 * nv + i] = ept;
        // 1 - tr(W+X) ⪰ 0
        const double tr = basis.trace(i);
        if (tr != 0.0) {
            SparseSym t1;
            t1.add(0, 0, tr);
            trace_cap.a[2 * nv + i] = t1;
            trace_cap.a[3 * nv + i] = t1;
        }
    }
    p.blocks = {std::move(v_psd), std::move(f_psd),    std::move(w_psd),
                std::move(x_psd), std::move(slack), std::move(trace_cap)};

    const SdpSolution sol = solve_measure(p, opts, "e_eta_dual");

    const auto part = [&](std::size_t offset) {
        return BipartiteOperator{proj.dim_a(), proj.dim_b(),
                                 basis.assemble(sol.y.data() + offset)};
    };
    EtaDualResult out{sol.primal_value,
                      {part(0), part(nv), part(2 * nv), part(3 * nv)},
                      sol,
                      std::move(p)};
    return out;
}

E1Result e1_deterministic_distill(const SupportProjector &proj,
                                  const SolveOptions &opts) {
    const std::size_t n = proj.dim();
    const std::size_t q = n - proj.rank();
    const ComplexMatrix pt = partial_transpose(proj.op()).matrix;
    const ComplexMatrix u = proj.complement_basis();
    const bool cx = needs_complex(pt) || needs_complex(u);

    // R = P + U G U†, 0 ⪯ G ⪯ I on the orthocomplement; minimize t with
    // -tI ⪯ R^TB ⪯ tI. With an empty complement R = P is the only
    // feasible point.
    HermBasis gbasis(std::max<std::size_t>(q, 1), cx);
    const std::size_t nv = q == 0 ? 0 : gbasis.count();
    const int tvar = static_cast<int>(nv);
    const std::size_t ns_full = cx ? 2 * n : n;
    const std::size_t ns_g = gbasis.solver_dim();

    LmiProblem p;
    p.num_vars = static_cast<int>(nv + 1);
    p.objective.assign(p.num_vars, 0.0);
    p.objective[tvar] = -1.0;

    const RealMatrix ptd = solver_matrix(pt, cx);
    LmiBlock tb_minus, tb_plus;
    tb_minus.c = ptd; // tI - (P + UGU†)^TB ⪰ 0  with C = -P^TB... sign below
    tb_minus.c *= -1.0;
    tb_plus.c = ptd;
    tb_minus.a.resize(p.num_vars);
    tb_plus.a.resize(p.num_vars);
    tb_minus.a[tvar] = minus_identity(ns_full);
    tb_plus.a[tvar] = minus_identity(ns_full);

    std::vector<LmiBlock> blocks;
    if (q > 0) {
        LmiBlock g_psd, g_cap;
        g_psd.c = RealMatrix(ns_g, ns_g);
        g_cap.c = RealMatrix::identity(ns_g);
        g_psd.a.resize(p.num_vars);
        g_cap.a.resize(p.num_vars);
        for (std::size_t i = 0; i < nv; ++i) {
            const SparseSym e = gbasis.element(i);
            g_psd.a[i] = negate(e);
            g_cap.a[i] = e;
            const SparseSym upt =
                conjugated_pt_element(gbasis, i, u, proj.dim_a(), proj.dim_b(), cx);
            tb_minus.a[i] = upt;         // subtracts UGU†^TB
            tb_plus.a[i] = negate(upt);  // adds it
        }
        blocks.push_back(std::move(g_psd));
        blocks.push_back(std::move(g_cap));
    }
    blocks.push_back(std::move(tb_minus));
    blocks.push_back(std::move(tb_plus));
    p.blocks = std::move(blocks);

    const SdpSolution sol = solve_measure(p, opts, "e1_deterministic_distill");

    ComplexMatrix r = proj.matrix();
    if (q > 0)
        r += u * gbasis.assemble(sol.y.data()) * u.adjoint();
    const double norm = -sol.primal_value;
    E1Result out{-std::log2(norm), norm, {proj.dim_a(), proj.dim_b(), std::move(r)},
                 sol, std::move(p)};
    return out;
}

OverlapResult max_ppt_overlap(const SupportProjector &proj, const SolveOptions &opts) {
    const std::size_t n = proj.dim();
    const bool cx = needs_complex(proj.matrix());
    HermBasis basis(n, cx, /*traceless=*/true);
    const std::size_t nv = basis.count();
    const std::size_t ns = basis.solver_dim();

    // sigma = I/n + Σ c_p B_p over the traceless basis.
    LmiProblem p;
    p.num_vars = static_cast<int>(nv);
    p.objective = basis.coefficients(proj.matrix());

    LmiBlock psd, ppt;
    psd.c = RealMatrix::identity(ns);
    psd.c *= 1.0 / static_cast<double>(n);
    ppt.c = psd.c;
    psd.a.resize(nv);
    ppt.a.resize(nv);
    for (std::size_t i = 0; i < nv; ++i) {
        psd.a[i] = negate(basis.element(i));
        ppt.a[i] = negate(basis.element_pt(i, proj.dim_a(), proj.dim_b()));
    }
    p.blocks = {std::move(psd), std::move(ppt)};

    const SdpSolution sol = solve_measure(p, opts, "max_ppt_overlap");

    const double offset = static_cast<double>(proj.rank()) / static_cast<double>(n);
    ComplexMatrix sigma = basis.assemble(sol.y.data());
    for (std::size_t i = 0; i < n; ++i)
        sigma(i, i) += 1.0 / static_cast<double>(n);
    OverlapResult out{sol.primal_value + offset,
                      {proj.dim_a(), proj.dim_b(), std::move(sigma)},
                      sol,
                      std::move(p)};
    return out;
}

EwSubspaceResult e_w_subspace(const SupportProjector &proj, const SolveOptions &opts) {
    const std::size_t n = proj.dim();
    const std::size_t r = proj.rank();
    const ComplexMatrix u = proj.range_basis();
    const bool cx = needs_complex(proj.matrix()) || needs_complex(u);

    HermBasis basis(n, cx);          // A and B coefficient spaces
    HermBasis gbasis(r, cx, r > 1);  // traceless part of rho = P/r + U G U†
    const std::size_t nv = basis.count();
    const std::size_t ng = r > 1 ? gbasis.count() : 0;
    const std::size_t ns = basis.solver_dim();
    const std::size_t ns_g = gbasis.solver_dim();

    LmiProblem p;
    p.num_vars = static_cast<int>(2 * nv + ng);
    p.objective.assign(p.num_vars, 0.0);
    for (std::size_t i = 0; i < nv; ++i) {
        p.objective[i] = -basis.trace(i);
        p.objective[nv + i] = -basis.trace(i);
    }

    LmiBlock a_psd, b_psd, rho_psd, dom;
    a_psd.c = RealMatrix(ns, ns);
    b_psd.c = RealMatrix(ns, ns);
    rho_psd.c = RealMatrix::identity(ns_g);
    rho_psd.c *= 1.0 / static_cast<double>(r);
    ComplexMatrix p_over_r = proj.matrix();
    p_over_r *= 1.0 / static_cast<double>(r);
    dom.c = solver_matrix(p_over_r, cx);
    dom.c *= -1.0; // (A-B)^TB - rho ⪰ 0, rho = P/r + UGU†
    a_psd.a.resize(p.num_vars);
    b_psd.a.resize(p.num_vars);
    rho_psd.a.resize(p.num_vars);
    dom.a.resize(p.num_vars);
    for (std::size_t i = 0; i < nv; ++i) {
        const SparseSym e = basis.element(i);
        const SparseSym ept = basis.element_pt(i, proj.dim_a(), proj.dim_b());
        a_psd.a[i] = negate(e);
        b_psd.a[nv + i] = negate(e);
        dom.a[i] = negate(ept);
        dom.a[nv + i] = ept;
    }
    for (std::size_t i = 0; i < ng; ++i) {
        rho_psd.a[2 * nv + i] = negate(gbasis.element(i));
        dom.a[2 * nv + i] = conjugated_element(gbasis, i, u, cx);
    }
    p.blocks = {std::move(a_psd), std::move(b_psd), std::move(rho_psd),
                std::move(dom)};

    const SdpSolution sol = solve_measure(p, opts, "e_w_subspace");

    const ComplexMatrix apart = basis.assemble(sol.y.data());
    const ComplexMatrix bpart = basis.assemble(sol.y.data() + nv);
    const BipartiteOperator diff{proj.dim_a(), proj.dim_b(), apart - bpart};
    ComplexMatrix rho = p_over_r;
    if (ng > 0)
        rho += u * gbasis.assemble(sol.y.data() + 2 * nv) * u.adjoint();
    EwSubspaceResult out{std::log2(-sol.primal_value),
                         -sol.primal_value,
                         partial_transpose(diff),
                         {proj.dim_a(), proj.dim_b(), std::move(rho)},
                         sol,
                         std::move(p)};
    return out;
}

BoundReport full_report(const NamedState &s, const SolveOptions &opts) {
    BoundReport rep;
    rep.state_name = s.name;
    rep.params = s.params;
    rep.dim_a = s.state.dim_a();
    rep.dim_b = s.state.dim_b();
    rep.rank = s.projector.rank();

    using clock = std::chrono::steady_clock;
    const auto timed = [&rep](const char *name, auto &&fn) {
        const auto t0 = clock::now();
        try {
            fn();
        } catch (const Error &e) {
            rep.errors.push_back(std::string(name) + ": " + e.what());
        }
        const double ms =
            std::chrono::duration<double, std::milli>(clock::now() - t0).count();
        rep.timings.push_back({name, ms});
    };

    const double nan = std::nan("");
    rep.e_n = rep.e_w = rep.e1 = rep.e_eta_primal = rep.e_eta_dual = nan;
    rep.eta_value = rep.max_overlap = rep.max_overlap_bits = nan;

    timed("e_n", [&] { rep.e_n = log_negativity(s.state); });
    timed("e_w", [&] { rep.e_w = e_w(s.state, opts).bits; });
    timed("e1", [&] { rep.e1 = e1_deterministic_distill(s.projector, opts).bits; });
    timed("e_eta_primal", [&] {
        const auto r = e_eta_primal(s.projector, opts);
        rep.eta_value = r.eta;
        rep.e_eta_primal = r.bits();
    });
    timed("e_eta_dual", [&] { rep.e_eta_dual = e_eta_dual(s.projector, opts).bits(); });
    timed("max_overlap", [&] {
        const auto r = max_ppt_overlap(s.projector, opts);
        rep.max_overlap = r.value;
        rep.max_overlap_bits = r.bits();
    });

    if (s.name == "rho_v") {
        rep.certificates.push_back(cost_witness_rho_v());
        rep.certificates.push_back(distill_witness_rho_v());
    } else if (s.name == "rho_alpha" && !s.params.empty() && s.params[0] <= 0.5) {
        rep.certificates.push_back(alpha_witness(s.params[0]));
    } else if (s.name == "ranktwo" && s.params.size() == 2) {
        rep.certificates.push_back(ranktwo_witness(s.params[0], s.params[1]));
    }

    constexpr double kMargin = 1e-6;
    rep.irreversible = !std::isnan(rep.e_w) && !std::isnan(rep.e_eta_primal) &&
                       rep.e_w + kMargin < rep.e_eta_primal;

    // Report invariants; violations are recorded, not thrown.
    const auto check = [&rep](bool ok, const char *what) {
        if (!ok)
            rep.errors.push_back(std::string("invariant violated: ") + what);
    };
    if (rep.ok()) {
        check(rep.e1 <= rep.e_w + kMargin, "e1 <= e_w");
        check(rep.e_w <= rep.e_n + kMargin, "e_w <= e_n");
        check(std::abs(rep.e_eta_primal - rep.e_eta_dual) <= kMargin,
              "eta strong duality");
        check(rep.e_eta_primal <= rep.max_overlap_bits + kMargin,
              "e_eta <= -log2 overlap");
        for (const auto &c : rep.certificates)
            check(c.passed, c.name.c_str());
    }
    return rep;
}

} // namespace pptbounds
