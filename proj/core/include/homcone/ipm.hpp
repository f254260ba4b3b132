#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "homcone/scaling.hpp"

namespace homcone {

// minimize <c, x> s.t. <A_i, x> = b_i, x in K = S^N_E ∩ S^N_+
// maximize b^T y  s.t. sum_i y_i A_i + s = c, s in K*
struct ConicProblem {
    StructurePtr structure;
    std::vector<SymSparse> A;
    Eigen::VectorXd b;
    SymSparse c;

    int m() const { return static_cast<int>(A.size()); }

    // Throws InputError on inconsistent shapes or structures; returns warnings
    // (e.g. linearly dependent constraints).
    std::vector<std::string> validate() const;

    Eigen::VectorXd apply_a(const SymSparse& x) const;       // A(x)
    SymSparse apply_a_adjoint(const Eigen::VectorXd& y) const;  // A*(y)
};

struct Iterate {
    SymSparse x;
    Eigen::VectorXd y;
    SymSparse s;
    double mu = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
};

struct Residuals {
    Eigen::VectorXd r_p;  // A(x) - b
    SymSparse r_d;        // A*(y) + s - c
    double gap = 0.0;     // <s, x>
};

Residuals residuals(const ConicProblem& problem, const Iterate& it);

struct Direction {
    SymSparse dx;
    Eigen::VectorXd dy;
    SymSparse ds;
};

// Solves A(dx) = -r_p, A*(dy) + ds = -r_d, L^{-1}(dx) + L^*(ds) = -v + gamma mu v_tilde
// through the normal equations M dy = rhs, M_ij = <L^*(A_i), L^*(A_j)>.
Direction search_direction(const ConicProblem& problem, const Iterate& it, const ScalingOperator& op,
                           const SymSparse& v_tilde, double mu, double gamma);

// eta times the largest alpha (bisection, depth 40, capped at 1) keeping
// x + alpha dx in int K and s + alpha ds in int K*.
double max_step(const Iterate& it, const SymSparse& dx, const SymSparse& ds, double eta);

struct TraceRecord {
    int iteration = 0;
    double mu = 0.0;
    double gap = 0.0;
    double primal_residual = 0.0;
    double dual_residual = 0.0;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    double step = 0.0;
    double gamma = 0.0;
    double scaling_residual = 0.0;
    int scaling_newton_steps = 0;
    double proximity = 0.0;  // ||v - mu v_tilde|| / mu
    bool bfgs_corrected = false;
};

struct SolverOptions {
    std::optional<double> gamma;  // fixed centering parameter; adaptive when unset
    double tol_gap = 1e-8;
    double tol_feas = 1e-8;
    int max_iter = 100;
    double eta = 0.99;
    double scaling_tol = 1e-9;
    bool use_bfgs = true;
    std::function<void(const TraceRecord&)> on_iteration;
};

enum class SolveStatus { Optimal, MaxIter, Stalled };

std::string to_string(SolveStatus status);

struct SolveReport {
    SolveStatus status = SolveStatus::MaxIter;
    Iterate iterate;
    int iterations = 0;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    std::vector<TraceRecord> trace;
};

SolveReport solve(const ConicProblem& problem, const SolverOptions& options = {});

struct CertifiedProblem {
    ConicProblem problem;
    SymSparse x_feasible;
    Eigen::VectorXd y_feasible;
    SymSparse s_feasible;
    double upper_bound;  // <c, x_feasible>
    double lower_bound;  // b^T y_feasible
};

// Random problem built from a known strictly feasible primal-dual pair, so weak duality
// brackets the optimal value.
CertifiedProblem random_certified_problem(const StructurePtr& structure, int m, std::uint64_t seed);

}  // namespace homcone
