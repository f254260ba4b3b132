#include "homcone/scaling.hpp"

#include <cmath>
#include <algorithm>
#include <cstdio>
#include <string>
#include <utility>
#include <limits>

#include <Eigen/Cholesky>

#include "homcone/error.hpp"

namespace homcone {

namespace {

CholFactor primal_factor(const SymSparse& x)
{
    try {
        return cholesky(x);
    } catch (const NotPositiveDefinite& e) {
        throw ConeMembershipError(true, e.vertex(), std::string("x is not in the interior of K: ") + e.what());
    }
}

CholFactor dual_factor(const SymSparse& s)
{
    try {
        return maxdet_factor(s);
    } catch (const NotCompletable& e) {
        throw ConeMembershipError(false, e.vertex(), std::string("s is not in the interior of K*: ") + e.what());
    }
}

std::optional<CholFactor> try_cholesky(const SymSparse& x)
{
    try {
        return cholesky(x);
    } catch (const NotPositiveDefinite&) {
        return std::nullopt;
    }
}

std::string format_residual(double r)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", r);
    return buf;
}

double phi(const CholFactor& f, const SymSparse& w, const SymSparse& x, const SymSparse& s)
{
    return inner(projected_inverse(f), x) + inner(s, w);
}

// Newton step Y for min Tr(Z^{-1} xb) + <sb, Z> at Z = I, whose Hessian is
// Y -> Pi_E(Y xb + xb Y).  Coordinates are the stored entries.
SymSparse newton_step(const SymSparse& xb, const SymSparse& sb)
{
    const auto& st = *xb.structure();
    const int n = st.size();
    const int dim = static_cast<int>(st.nnz());
    Eigen::MatrixXd xd = to_dense_ordered(xb);

    std::vector<int> row(dim);
    std::vector<int> col(dim);
    for (int k = 0; k < n; ++k) {
        auto rows = st.column_rows(k);
        for (std::size_t t = 0; t < rows.size(); ++t) {
            row[st.colptr()[k] + t] = rows[t];
            col[st.colptr()[k] + t] = k;
        }
    }

    Eigen::MatrixXd g(dim, dim);
    Eigen::VectorXd rhs(dim);
    for (int e = 0; e < dim; ++e) {
        const int i = row[e];
        const int j = col[e];
        const double we = i == j ? 1.0 : 2.0;
        for (int f = 0; f < dim; ++f) {
            const int a = row[f];
            const int b = col[f];
            double h;
            if (a == b) {
                h = (i == a ? xd(a, j) : 0.0) + (j == a ? xd(i, a) : 0.0);
            } else {
                h = (i == a ? xd(b, j) : 0.0) + (i == b ? xd(a, j) : 0.0) + (j == b ? xd(i, a) : 0.0) +
                    (j == a ? xd(i, b) : 0.0);
            }
            g(e, f) = we * h;
        }
        rhs(e) = -we * (sb.values()[e] - xb.values()[e]);
    }
    Eigen::VectorXd y;
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() == Eigen::Success) {
        y = llt.solve(rhs);
    } else {
        y = g.ldlt().solve(rhs);
    }
    SymSparse step(xb.structure());
    for (int e = 0; e < dim; ++e) {
        step.values()[e] = y(e);
    }
    return step;
}

}  // namespace

ScalingState shadow_state(const SymSparse& x, const SymSparse& s)
{
    require_same_structure(x.structure(), s.structure());
    CholFactor fx = primal_factor(x);
    CholFactor fs = dual_factor(s);
    ScalingState st;
    st.x = x;
    st.s = s;
    st.x_shadow = dual_gradient(fs);
    st.s_shadow = projected_inverse(fx);
    st.mu = inner(s, x) / x.size();
    st.delta_p = x;
    st.delta_p.axpy(-st.mu, st.x_shadow);
    st.delta_d = s;
    st.delta_d.axpy(-st.mu, st.s_shadow);
    return st;
}

ScalingPointResult scaling_point(const SymSparse& x, const SymSparse& s, const ScalingPointOptions& options,
                                 const std::optional<SymSparse>& warm_start)
{
    require_same_structure(x.structure(), s.structure());
    primal_factor(x);
    dual_factor(s);
    const double mu = inner(s, x) / x.size();
    const double s_norm = norm(s);

    SymSparse w = (1.0 / std::sqrt(mu)) * x;
    CholFactor f = cholesky(w);
    double value = phi(f, w, x, s);
    if (warm_start) {
        require_same_structure(x.structure(), warm_start->structure());
        if (auto fw = try_cholesky(*warm_start)) {
            double warm_value = phi(*fw, *warm_start, x, s);
            if (warm_value < value) {
                w = *warm_start;
                f = std::move(*fw);
                value = warm_value;
            }
        }
    }

    double best = std::numeric_limits<double>::infinity();
    int stagnant = 0;
    for (int it = 0;; ++it) {
        SymSparse r = hess_apply(f, x);
        r -= s;
        double residual = norm(r) / s_norm;
        if (residual <= options.tol) {
            return {std::move(w), it, residual, true};
        }
        if (residual < 0.5 * best || residual > 1e-6) {
            stagnant = 0;
        } else {
            ++stagnant;
        }
        best = std::min(best, residual);
        if (it == options.max_iter || stagnant >= 5) {
            if (options.best_effort) {
                return {std::move(w), it, residual, false};
            }
            throw MaxIterations("scaling_point did not converge in " + std::to_string(it) +
                                " Newton steps (residual " + format_residual(residual) + ")");
        }
        SymSparse xb = inverse_forward_map(f.L, x);
        SymSparse sb = adjoint_map(f.L, s);
        SymSparse step = newton_step(xb, sb);
        const double slope = inner(sb - xb, step);

        // Near the solution roundoff in phi can mask descent; fall back to the longest
        // step that still reduces the residual.
        bool accepted = false;
        std::optional<std::pair<SymSparse, CholFactor>> fallback;
        double fallback_value = 0.0;
        for (double t = 1.0; t > 1e-12; t *= 0.5) {
            SymSparse z = SymSparse::identity(x.structure());
            z.axpy(t, step);
            if (!try_cholesky(z)) {
                continue;
            }
            SymSparse trial = forward_map(f.L, z);
            auto ft = try_cholesky(trial);
            if (!ft) {
                continue;
            }
            double trial_value = phi(*ft, trial, x, s);
            if (trial_value <= value + 1e-4 * t * slope + 1e-13 * std::abs(value)) {
                w = std::move(trial);
                f = std::move(*ft);
                value = trial_value;
                accepted = true;
                break;
            }
            if (!fallback) {
                SymSparse rt = hess_apply(*ft, x);
                rt -= s;
                if (norm(rt) / s_norm < residual) {
                    fallback_value = trial_value;
                    fallback.emplace(std::move(trial), std::move(*ft));
                }
            }
        }
        if (!accepted && fallback) {
            w = std::move(fallback->first);
            f = std::move(fallback->second);
            value = fallback_value;
            accepted = true;
        }
        if (!accepted && options.best_effort) {
            return {std::move(w), it, residual, false};
        }
        if (!accepted) {
            throw MaxIterations("scaling_point line search failed (residual " + format_residual(residual) + ")");
        }
    }
}

ScalingOperator::ScalingOperator(LowerSparse base, SymSparse v) : base_(std::move(base)), v_(std::move(v))
{
    require_same_structure(base_.structure(), v_.structure());
}

void ScalingOperator::set_correction(SymSparse v_hat, const SymSparse& delta_p, double alpha)
{
    Correction c;
    c.u_corr = delta_p;
    c.u_corr -= forward_map(base_, v_hat);
    c.inv_adj_v_hat = inverse_adjoint_map(base_, v_hat);
    c.v_hat_minus = v_hat;
    c.v_hat_minus -= inverse_forward_map(base_, delta_p);
    c.nrm2 = inner(v_hat, v_hat);
    c.alpha = alpha;
    c.v_hat = std::move(v_hat);
    correction_ = std::move(c);
}

SymSparse ScalingOperator::apply(ApplyMode mode, const SymSparse& z) const
{
    switch (mode) {
    case ApplyMode::Forward: {
        SymSparse y = forward_map(base_, z);
        if (correction_) {
            y.axpy(inner(correction_->v_hat, z) / correction_->nrm2, correction_->u_corr);
        }
        return y;
    }
    case ApplyMode::Adjoint: {
        SymSparse y = adjoint_map(base_, z);
        if (correction_) {
            y.axpy(inner(correction_->u_corr, z) / correction_->nrm2, correction_->v_hat);
        }
        return y;
    }
    case ApplyMode::Inverse: {
        SymSparse y = inverse_forward_map(base_, z);
        if (correction_) {
            // Sherman-Morrison denominator <v_hat, L^{-1} delta_p> = ||v_hat||^2 / alpha.
            y.axpy(correction_->alpha * inner(correction_->inv_adj_v_hat, z) / correction_->nrm2,
                   correction_->v_hat_minus);
        }
        return y;
    }
    case ApplyMode::InverseAdjoint: {
        SymSparse y = inverse_adjoint_map(base_, z);
        if (correction_) {
            y.axpy(correction_->alpha * inner(correction_->v_hat_minus, z) / correction_->nrm2,
                   correction_->inv_adj_v_hat);
        }
        return y;
    }
    }
    throw InputError("unknown apply mode");
}

SymSparse apply_scaling(const ScalingOperator& op, ApplyMode mode, const SymSparse& z) { return op.apply(mode, z); }

PdFactor pd_factor(const SymSparse& w, const SymSparse& x, const SymSparse& s)
{
    CholFactor f = primal_factor(w);
    SymSparse primal = inverse_forward_map(f.L, x);
    SymSparse dual = adjoint_map(f.L, s);
    SymSparse diff = primal - dual;
    SymSparse v = primal;
    v += dual;
    v *= 0.5;
    return {ScalingOperator(std::move(f.L), std::move(v)), norm(diff)};
}

ScalingOperator bfgs_update(const ScalingOperator& op, const ScalingState& state, const BfgsOptions& options)
{
    if (op.corrected()) {
        throw PreconditionError("bfgs_update expects an operator without a correction");
    }
    const double np = norm(state.delta_p);
    const double nd = norm(state.delta_d);
    if (np <= options.skip_tol * norm(state.x) && nd <= options.skip_tol * norm(state.s)) {
        return op;
    }
    const double curvature = inner(state.delta_d, state.delta_p);
    if (curvature < -options.curvature_tol * np * nd) {
        throw NonpositiveCurvature("<delta_d, delta_p> = " + std::to_string(curvature) + " < 0");
    }
    if (curvature <= options.curvature_tol * np * nd) {
        return op;
    }
    SymSparse ls = adjoint_map(op.base(), state.delta_d);
    const double alpha = norm(ls) / std::sqrt(curvature);
    ls *= 1.0 / alpha;
    ScalingOperator updated = op;
    updated.set_correction(std::move(ls), state.delta_p, alpha);
    return updated;
}

SymSparse shadow_v(const ScalingOperator& op, const ScalingState& state)
{
    SymSparse v = op.v();
    if (const SymSparse* vh = op.v_hat()) {
        v -= *vh;
    }
    v *= 1.0 / state.mu;
    return v;
}

}  // namespace homcone
