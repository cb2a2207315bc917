#include "pptbounds/lmi.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "pptbounds/errors.hpp"

namespace pptbounds {

void SparseSym::add(int r, int c, double v) {
    if (v == 0.0)
        return;
    if (r > c)
        std::swap(r, c);
    for (auto &e : entries)
        if (e.row == r && e.col == c) {
            e.value += v;
            return;
        }
    entries.push_back({r, c, v});
}

void SparseSym::add_to(RealMatrix &d, double coeff) const {
    for (const auto &e : entries) {
        d(e.row, e.col) += coeff * e.value;
        if (e.row != e.col)
            d(e.col, e.row) += coeff * e.value;
    }
}

double SparseSym::inner(const RealMatrix &d) const {
    double s = 0.0;
    for (const auto &e : entries) {
        s += e.value * d(e.col, e.row);
        if (e.row != e.col)
            s += e.value * d(e.row, e.col);
    }
    return s;
}

RealMatrix SparseSym::to_dense(std::size_t n) const {
    RealMatrix d(n, n);
    add_to(d, 1.0);
    return d;
}

void LmiProblem::validate() const {
    if (num_vars < 0 || objective.size() != static_cast<std::size_t>(num_vars))
        throw BadParameterError("lmi: objective length != num_vars");
    if (blocks.empty())
        throw BadParameterError("lmi: at least one block required");
    for (const auto &blk : blocks) {
        const std::size_t n = blk.c.rows;
        if (blk.c.cols != n || n == 0)
            throw BadParameterError("lmi: C block not square");
        if (blk.a.size() != static_cast<std::size_t>(num_vars))
            throw BadParameterError("lmi: block has wrong variable count");
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (std::abs(blk.c(i, j) - blk.c(j, i)) > 1e-12)
                    throw BadParameterError("lmi: C block not symmetric");
        for (const auto &sp : blk.a)
            for (const auto &e : sp.entries)
                if (e.row < 0 || e.col >= static_cast<int>(n))
                    throw BadParameterError("lmi: sparse entry out of range");
    }
}

const char *to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::Optimal:
        return "Optimal";
    case SolveStatus::Infeasible:
        return "Infeasible";
    case SolveStatus::Unbounded:
        return "Unbounded";
    case SolveStatus::NumericalTrouble:
        return "NumericalTrouble";
    }
    return "?";
}

double FeasibilityReport::max_violation() const {
    double v = 0.0;
    v = std::max(v, -slack_min_eigenvalue);
    v = std::max(v, slack_mismatch);
    v = std::max(v, -dual_min_eigenvalue);
    v = std::max(v, dual_residual);
    v = std::max(v, objective_mismatch);
    return v;
}

bool FeasibilityReport::feasible(double tol) const { return max_violation() <= tol; }

FeasibilityReport verify_solution(const LmiProblem &p, const SdpSolution &s) {
    p.validate();
    FeasibilityReport rep;
    rep.slack_min_eigenvalue = 0.0;
    rep.dual_min_eigenvalue = 0.0;

    double comp = 0.0;
    std::size_t total_dim = 0;
    std::vector<double> atx(p.num_vars, 0.0);
    bool first = true;
    for (std::size_t k = 0; k < p.blocks.size(); ++k) {
        const LmiBlock &blk = p.blocks[k];
        RealMatrix slack = blk.c;
        for (int i = 0; i < p.num_vars; ++i)
            if (!blk.a[i].empty())
                blk.a[i].add_to(slack, -s.y[i]);
        const double smin = sym_min_eigenvalue(slack);
        rep.slack_min_eigenvalue = first ? smin : std::min(rep.slack_min_eigenvalue, smin);
        if (k < s.slack_blocks.size()) {
            RealMatrix diff = slack;
            diff -= s.slack_blocks[k];
            rep.slack_mismatch = std::max(rep.slack_mismatch, diff.max_abs());
        }
        if (k < s.dual_matrix_blocks.size()) {
            const RealMatrix &x = s.dual_matrix_blocks[k];
            const double xmin = sym_min_eigenvalue(x);
            rep.dual_min_eigenvalue =
                first ? xmin : std::min(rep.dual_min_eigenvalue, xmin);
            for (int i = 0; i < p.num_vars; ++i)
                if (!blk.a[i].empty())
                    atx[i] += blk.a[i].inner(x);
            for (std::size_t i = 0; i < slack.rows; ++i)
                for (std::size_t j = 0; j < slack.cols; ++j)
                    comp += slack(i, j) * x(i, j);
        }
        total_dim += blk.c.rows;
        first = false;
    }
    // Only meaningful when the solution carries dual matrices; a bare y
    // (an injected witness) is verified on the slack side alone.
    if (!s.dual_matrix_blocks.empty())
        for (int i = 0; i < p.num_vars; ++i)
            rep.dual_residual =
                std::max(rep.dual_residual, std::abs(p.objective[i] - atx[i]));

    double by = 0.0;
    for (int i = 0; i < p.num_vars; ++i)
        by += p.objective[i] * s.y[i];
    rep.objective_mismatch = std::abs(by - s.primal_value);
    rep.gap = std::abs(s.primal_value - s.dual_value);
    rep.complementarity = total_dim ? comp / static_cast<double>(total_dim) : 0.0;
    return rep;
}

RealMatrix realify_hermitian(const ComplexMatrix &h) {
    if (!h.is_hermitian(1e-10 * std::max(1.0, h.max_abs())))
        throw NotHermitianError("realify_hermitian: input not Hermitian");
    const std::size_t n = h.rows();
    RealMatrix m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = h(i, j).real(), im = h(i, j).imag();
            m(i, j) = re;
            m(n + i, n + j) = re;
            m(i, n + j) = -im;
            m(n + i, j) = im;
        }
    m.symmetrize();
    return m;
}

ComplexMatrix derealify(const RealMatrix &m) {
    if (m.rows != m.cols || m.rows % 2 != 0)
        throw DimensionMismatchError("derealify: expected even square matrix");
    const std::size_t n = m.rows / 2;
    ComplexMatrix h(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double re = 0.5 * (m(i, j) + m(n + i, n + j));
            const double im = 0.5 * (m(n + i, j) - m(i, n + j));
            h(i, j) = cdouble(re, im);
        }
    // Re-symmetrize: (H + H†)/2.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const cdouble v = 0.5 * (h(i, j) + std::conj(h(j, i)));
            h(i, j) = v;
            h(j, i) = std::conj(v);
        }
    return h;
}

void dump_problem(const LmiProblem &p, std::ostream &os) {
    os << "lmi num_vars " << p.num_vars << " blocks " << p.blocks.size() << "\n";
    os << "objective";
    for (double b : p.objective)
        os << " " << b;
    os << "\n";
    for (std::size_t k = 0; k < p.blocks.size(); ++k) {
        const LmiBlock &blk = p.blocks[k];
        const std::size_t n = blk.c.rows;
        os << "block " << k << " size " << n << "\n";
        os << "C";
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                os << " " << blk.c(i, j);
        os << "\n";
        for (int v = 0; v < p.num_vars; ++v) {
            const RealMatrix d = blk.a[v].to_dense(n);
            os << "A " << v;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    os << " " << d(i, j);
            os << "\n";
        }
    }
}

} // namespace pptbounds
