#pragma once

#include <optional>

#include "homcone/error.hpp"
#include "homcone/factor.hpp"

namespace homcone {

// Thrown when an iterate leaves the interior of K (primal) or K* (dual).
class ConeMembershipError : public NumericalError {
public:
    ConeMembershipError(bool primal, int vertex, const std::string& what)
        : NumericalError(what), primal_(primal), vertex_(vertex) {}

    bool primal() const noexcept { return primal_; }
    int vertex() const noexcept { return vertex_; }

private:
    bool primal_;
    int vertex_;
};

struct ScalingState {
    SymSparse x;
    SymSparse s;
    SymSparse x_shadow;  // -F*'(s)
    SymSparse s_shadow;  // -F'(x)
    double mu = 0.0;     // <s, x> / N
    SymSparse delta_p;   // x - mu x_shadow
    SymSparse delta_d;   // s - mu s_shadow
};

ScalingState shadow_state(const SymSparse& x, const SymSparse& s);

struct ScalingPointOptions {
    double tol = 1e-9;
    int max_iter = 100;
    // Return the last iterate instead of throwing when tol is not reached.
    bool best_effort = false;
};

struct ScalingPointResult {
    SymSparse w;
    int iterations = 0;
    double residual = 0.0;  // ||F''(W)[x] - s|| / ||s||
    bool converged = false;
};

// W in int K with F''(W)[x] = s, by damped Newton on
// phi(W) = <Pi_E(W^{-1}), x> + <s, W>.  Starts from the better of x / sqrt(mu) and
// `warm_start`.  Stops early once the residual stagnates at roundoff level.  Throws
// MaxIterations unless `best_effort` is set.
ScalingPointResult scaling_point(const SymSparse& x, const SymSparse& s,
                                 const ScalingPointOptions& options = {},
                                 const std::optional<SymSparse>& warm_start = std::nullopt);

enum class ApplyMode { Forward, Adjoint, Inverse, InverseAdjoint };

// Triangular congruence Z -> L Z L^T with an optional rank-one correction.
class ScalingOperator {
public:
    ScalingOperator() = default;
    ScalingOperator(LowerSparse base, SymSparse v);

    const LowerSparse& base() const noexcept { return base_; }
    // Common value of L^{-1}(x) and L^*(s).
    const SymSparse& v() const noexcept { return v_; }
    bool corrected() const noexcept { return correction_.has_value(); }
    const SymSparse* v_hat() const { return correction_ ? &correction_->v_hat : nullptr; }
    double alpha() const { return correction_ ? correction_->alpha : 0.0; }

    SymSparse apply(ApplyMode mode, const SymSparse& z) const;

    // Installs the rank-one correction built from the base operator.
    void set_correction(SymSparse v_hat, const SymSparse& delta_p, double alpha);

private:
    struct Correction {
        SymSparse v_hat;
        SymSparse u_corr;         // delta_p - L(v_hat)
        SymSparse inv_adj_v_hat;  // L^{-*}(v_hat)
        SymSparse v_hat_minus;    // v_hat - L^{-1}(delta_p)
        double alpha;
        double nrm2;              // ||v_hat||^2
    };

    LowerSparse base_;
    SymSparse v_;
    std::optional<Correction> correction_;
};

SymSparse apply_scaling(const ScalingOperator& op, ApplyMode mode, const SymSparse& z);

struct PdFactor {
    ScalingOperator op;
    double residual = 0.0;  // ||L^{-1}(x) - L^*(s)||
};

// Factorized Hessian automorphism at W: L = cholesky(W), v = (L^{-1}(x) + L^*(s)) / 2.
PdFactor pd_factor(const SymSparse& w, const SymSparse& x, const SymSparse& s);

struct BfgsOptions {
    double skip_tol = 1e-12;       // relative size of delta_p, delta_d below which no update
    double curvature_tol = 1e-12;  // relative tolerance on <delta_d, delta_p> < 0
};

// Rank-one update L_+ with L_+^{-1}(delta_p) = L_+^*(delta_d) = v_hat, keeping
// L_+^{-1}(x) = L_+^*(s) = v.  Requires an uncorrected operator.
ScalingOperator bfgs_update(const ScalingOperator& op, const ScalingState& state, const BfgsOptions& options = {});

// v-space image of the shadow pair, (v - v_hat) / mu.
SymSparse shadow_v(const ScalingOperator& op, const ScalingState& state);

}  // namespace homcone
