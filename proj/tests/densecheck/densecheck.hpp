#pragma once

// Slow, obvious dense recomputations used as test oracles.  Nothing here calls the
// library's numerical kernels; sparse inputs are only read through their raw storage.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "homcone/matrix.hpp"
#include "homcone/pattern.hpp"

namespace homcone::densecheck {

// Row-major n x n matrix.
class Dense {
public:
    Dense() = default;
    explicit Dense(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {}

    static Dense identity(int n);

    int size() const noexcept { return n_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

    bool symmetric(double tol = 1e-12) const;
    double max_abs() const;

    friend Dense operator*(const Dense& a, const Dense& b);
    friend Dense operator+(const Dense& a, const Dense& b);
    friend Dense operator-(const Dense& a, const Dense& b);
    friend Dense operator*(double s, const Dense& a);

private:
    int n_ = 0;
    std::vector<double> a_;
};

using DenseSym = Dense;

Dense transpose(const Dense& a);
double trace(const Dense& a);
double max_abs_diff(const Dense& a, const Dense& b);

// Raw-storage conversions.  Symmetric matrices come back vertex-indexed; lower
// factors in position coordinates (the library's triangular frame).
DenseSym from_sparse(const SymSparse& x);
Dense from_sparse(const LowerSparse& l);
// Copies the diagonal and pattern entries of a vertex-indexed dense matrix.
SymSparse to_sparse(const Dense& a, const StructurePtr& structure);
// Copies the structural entries of a position-indexed lower-triangular matrix.
LowerSparse to_sparse_lower(const Dense& l, const StructurePtr& structure);
// Vertex-indexed dense -> position-indexed dense.
Dense to_positions(const Dense& a, const Ordering& ordering);
Dense to_vertices(const Dense& a, const Ordering& ordering);

// Zero every entry outside the diagonal and the pattern edges.
DenseSym project(const Dense& a, const SparsityPattern& pattern);
// True when every entry outside diagonal+pattern is below tol in magnitude.
bool inside_pattern(const Dense& a, const SparsityPattern& pattern, double tol);

// Textbook kernels.  dense_chol throws std::domain_error on a nonpositive pivot.
Dense dense_chol(const DenseSym& a);
bool is_positive_definite(const DenseSym& a);
Dense dense_inverse(const Dense& a);  // Gauss-Jordan, partial pivoting
double dense_logdet(const DenseSym& a);
std::vector<double> solve(Dense a, std::vector<double> b);  // Gaussian elimination
// Smallest eigenvalue of a symmetric matrix (cyclic Jacobi).
double min_eigenvalue(const DenseSym& a);

// Maximum-determinant positive definite completion by Newton's method over the free
// (non-pattern) entries.  Vertex-indexed.  Throws std::domain_error when S has no
// positive definite completion.
DenseSym dense_maxdet_completion(const SymSparse& s);

// W in S^N_E with Pi_E(W^{-1} x W^{-1}) = s, by Newton on Tr(W^{-1} x) + Tr(s W) in the
// original coordinates.  Vertex-indexed.
DenseSym dense_scaling_point(const SymSparse& x, const SymSparse& s, double tol = 1e-12);

enum class ForbiddenKind { P4, C4 };

struct ForbiddenSubgraph {
    std::array<int, 4> vertices;  // path or cycle order, 0-based
    ForbiddenKind kind;
};

// Lexicographically smallest vertex set inducing P4 or C4.  Requires n <= 64.
std::optional<ForbiddenSubgraph> find_forbidden_subgraph(const SparsityPattern& pattern);

}  // namespace homcone::densecheck
