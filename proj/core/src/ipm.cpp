#include "homcone/ipm.hpp"

#include <cmath>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "homcone/error.hpp"
#include "homcone/rng.hpp"

namespace homcone {

namespace {

bool in_primal_interior(const SymSparse& x)
{
    try {
        cholesky(x);
        return true;
    } catch (const NotPositiveDefinite&) {
        return false;
    }
}

bool in_dual_interior(const SymSparse& s)
{
    try {
        maxdet_factor(s);
        return true;
    } catch (const NotCompletable&) {
        return false;
    }
}

}  // namespace

std::vector<std::string> ConicProblem::validate() const
{
    if (!structure) {
        throw InputError("problem has no sparsity structure");
    }
    require_same_structure(structure, c.structure());
    for (const SymSparse& a : A) {
        require_same_structure(structure, a.structure());
    }
    if (b.size() != m()) {
        throw InputError("b has length " + std::to_string(b.size()) + " but there are " + std::to_string(m()) +
                         " constraints");
    }
    std::vector<std::string> warnings;
    if (m() > 0) {
        Eigen::MatrixXd gram(m(), m());
        for (int i = 0; i < m(); ++i) {
            for (int j = 0; j <= i; ++j) {
                gram(i, j) = gram(j, i) = inner(A[i], A[j]);
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
        const auto& ev = eig.eigenvalues();
        if (ev(0) <= 1e-12 * std::max(ev(m() - 1), 1e-300)) {
            warnings.emplace_back("constraint matrices A_i are linearly dependent");
        }
    }
    return warnings;
}

Eigen::VectorXd ConicProblem::apply_a(const SymSparse& x) const
{
    Eigen::VectorXd out(m());
    for (int i = 0; i < m(); ++i) {
        out(i) = inner(A[i], x);
    }
    return out;
}

SymSparse ConicProblem::apply_a_adjoint(const Eigen::VectorXd& y) const
{
    SymSparse out(structure);
    for (int i = 0; i < m(); ++i) {
        out.axpy(y(i), A[i]);
    }
    return out;
}

std::string to_string(SolveStatus status)
{
    switch (status) {
    case SolveStatus::Optimal:
        return "Optimal";
    case SolveStatus::MaxIter:
        return "MaxIter";
    case SolveStatus::Stalled:
        return "Stalled";
    }
    return "Unknown";
}

Residuals residuals(const ConicProblem& problem, const Iterate& it)
{
    Residuals r;
    r.r_p = problem.apply_a(it.x) - problem.b;
    r.r_d = problem.apply_a_adjoint(it.y);
    r.r_d += it.s;
    r.r_d -= problem.c;
    r.gap = inner(it.s, it.x);
    return r;
}

Direction search_direction(const ConicProblem& problem, const Iterate& it, const ScalingOperator& op,
                           const SymSparse& v_tilde, double mu, double gamma)
{
    const Residuals res = residuals(problem, it);
    const int m = problem.m();

    SymSparse r = -op.v();
    r.axpy(gamma * mu, v_tilde);

    std::vector<SymSparse> g;
    g.reserve(m);
    for (const SymSparse& a : problem.A) {
        g.push_back(op.apply(ApplyMode::Adjoint, a));
    }
    Eigen::MatrixXd normal(m, m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) {
            normal(i, j) = normal(j, i) = inner(g[i], g[j]);
        }
    }

    SymSparse t = r;
    t += op.apply(ApplyMode::Adjoint, res.r_d);
    Eigen::VectorXd rhs = -res.r_p - problem.apply_a(op.apply(ApplyMode::Forward, t));

    Direction d;
    if (m > 0) {
        Eigen::LLT<Eigen::MatrixXd> llt(normal);
        if (llt.info() != Eigen::Success) {
            throw SingularNormalMatrix("normal matrix is not positive definite");
        }
        d.dy = llt.solve(rhs);
    } else {
        d.dy = Eigen::VectorXd(0);
    }
    d.ds = -res.r_d;
    d.ds -= problem.apply_a_adjoint(d.dy);
    SymSparse u = r;
    u -= op.apply(ApplyMode::Adjoint, d.ds);
    d.dx = op.apply(ApplyMode::Forward, u);
    return d;
}

double max_step(const Iterate& it, const SymSparse& dx, const SymSparse& ds, double eta)
{
    auto feasible = [&](double alpha) {
        SymSparse x = it.x;
        x.axpy(alpha, dx);
        if (!in_primal_interior(x)) {
            return false;
        }
        SymSparse s = it.s;
        s.axpy(alpha, ds);
        return in_dual_interior(s);
    };
    if (feasible(1.0)) {
        return eta;
    }
    double lo = 0.0;
    double hi = 1.0;
    for (int depth = 0; depth < 40; ++depth) {
        double mid = 0.5 * (lo + hi);
        (feasible(mid) ? lo : hi) = mid;
    }
    return eta * lo;
}

SolveReport solve(const ConicProblem& problem, const SolverOptions& options)
{
    problem.validate();
    const int n = problem.structure->size();
    const double feas_scale = 1.0 + problem.b.norm() + norm(problem.c);

    SolveReport report;
    Iterate& it = report.iterate;
    it.x = SymSparse::identity(problem.structure);
    it.s = SymSparse::identity(problem.structure);
    it.y = Eigen::VectorXd::Zero(problem.m());

    std::optional<SymSparse> w_prev;
    double last_step = 1.0;
    int tiny_steps = 0;

    for (int k = 0;; ++k) {
        Residuals res = residuals(problem, it);
        it.mu = res.gap / n;
        it.primal_residual = res.r_p.norm();
        it.dual_residual = norm(res.r_d);
        report.iterations = k;
        report.primal_objective = inner(problem.c, it.x);
        report.dual_objective = problem.b.dot(it.y);

        if (it.mu <= options.tol_gap && it.primal_residual <= options.tol_feas * feas_scale &&
            it.dual_residual <= options.tol_feas * feas_scale) {
            report.status = SolveStatus::Optimal;
            return report;
        }
        if (k == options.max_iter) {
            report.status = SolveStatus::MaxIter;
            return report;
        }

        ScalingState state = shadow_state(it.x, it.s);
        ScalingPointResult sp = scaling_point(it.x, it.s, {options.scaling_tol, 100, true}, w_prev);
        PdFactor pd = pd_factor(sp.w, it.x, it.s);
        w_prev = std::move(sp.w);
        ScalingOperator op = options.use_bfgs ? bfgs_update(pd.op, state) : pd.op;
        SymSparse v_tilde = shadow_v(op, state);

        const double gamma = options.gamma.value_or(last_step >= 0.8 ? 0.1 : 0.8);
        Direction d = search_direction(problem, it, op, v_tilde, state.mu, gamma);
        const double alpha = max_step(it, d.dx, d.ds, options.eta);

        it.x.axpy(alpha, d.dx);
        it.y += alpha * d.dy;
        it.s.axpy(alpha, d.ds);

        TraceRecord rec;
        rec.iteration = k;
        rec.mu = state.mu;
        rec.gap = res.gap;
        rec.primal_residual = it.primal_residual;
        rec.dual_residual = it.dual_residual;
        rec.primal_objective = report.primal_objective;
        rec.dual_objective = report.dual_objective;
        rec.step = alpha;
        rec.gamma = gamma;
        rec.scaling_residual = pd.residual;
        rec.scaling_newton_steps = sp.iterations;
        rec.bfgs_corrected = op.corrected();
        rec.proximity = op.corrected() ? norm(*op.v_hat()) / state.mu : 0.0;
        report.trace.push_back(rec);
        if (options.on_iteration) {
            options.on_iteration(rec);
        }

        last_step = alpha;
        tiny_steps = alpha < 1e-10 ? tiny_steps + 1 : 0;
        if (tiny_steps >= 2) {
            Residuals end = residuals(problem, it);
            it.mu = end.gap / n;
            it.primal_residual = end.r_p.norm();
            it.dual_residual = norm(end.r_d);
            report.iterations = k + 1;
            report.primal_objective = inner(problem.c, it.x);
            report.dual_objective = problem.b.dot(it.y);
            report.status = SolveStatus::Stalled;
            return report;
        }
    }
}

CertifiedProblem random_certified_problem(const StructurePtr& structure, int m, std::uint64_t seed)
{
    Rng rng(seed);
    const int n = structure->size();

    LowerSparse l(structure);
    for (int k = 0; k < n; ++k) {
        auto col = l.column(k);
        col[0] = rng.uniform(0.5, 1.5);
        for (std::size_t t = 1; t < col.size(); ++t) {
            col[t] = 0.3 * rng.normal();
        }
    }
    SymSparse x = forward_map(l, SymSparse::identity(structure));

    Eigen::MatrixXd b(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            b(i, j) = rng.normal() / std::sqrt(static_cast<double>(n));
        }
    }
    Eigen::MatrixXd z = b * b.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
    z = 0.5 * (z + z.transpose()).eval();
    SymSparse s = project(z, structure);

    ConicProblem p;
    p.structure = structure;
    for (int i = 0; i < m; ++i) {
        SymSparse a(structure);
        for (double& v : a.values()) {
            v = rng.normal();
        }
        p.A.push_back(std::move(a));
    }
    Eigen::VectorXd y(m);
    for (int i = 0; i < m; ++i) {
        y(i) = rng.normal();
    }
    p.b = p.apply_a(x);
    p.c = p.apply_a_adjoint(y);
    p.c += s;

    CertifiedProblem out{std::move(p), x, y, s, 0.0, 0.0};
    out.upper_bound = inner(out.problem.c, x);
    out.lower_bound = out.problem.b.dot(y);
    return out;
}

}  // namespace homcone
