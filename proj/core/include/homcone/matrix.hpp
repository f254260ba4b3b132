#pragma once

#include <memory>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "homcone/pattern.hpp"

namespace homcone {

// Symbolic data shared by every numeric matrix on one pattern.  Internally all
// indices are positions k = sigma_inv(v); column k stores the rows
// (k, p(k), p(p(k)), ...) of its ancestor path, diagonal first.
class SymbolicStructure {
public:
    // Throws PreconditionError unless `ordering` is a trivially perfect elimination
    // ordering of `pattern`.
    static std::shared_ptr<const SymbolicStructure> create(SparsityPattern pattern, Ordering ordering);

    // Orders the pattern with lbfs_order; throws PreconditionError on rejection.
    static std::shared_ptr<const SymbolicStructure> create(SparsityPattern pattern);

    int size() const noexcept { return n_; }
    std::size_t nnz() const noexcept { return rows_.size(); }
    const SparsityPattern& pattern() const noexcept { return pattern_; }
    const Ordering& ordering() const noexcept { return ordering_; }

    int parent(int k) const { return parent_[k]; }  // -1 for roots
    int depth(int k) const { return colptr_[k + 1] - colptr_[k]; }  // |ᾱ_k|
    std::span<const int> column_rows(int k) const
    {
        return {rows_.data() + colptr_[k], rows_.data() + colptr_[k + 1]};
    }
    std::span<const int> colptr() const noexcept { return colptr_; }
    std::span<const int> rows() const noexcept { return rows_; }
    std::span<const int> children(int k) const
    {
        return {child_.data() + child_ptr_[k], child_.data() + child_ptr_[k + 1]};
    }

    // Children-before-parents visiting order that is also a postordering.
    std::span<const int> topological() const noexcept { return topological_; }

    // Storage offset of entry (i, j), i >= j, or -1 when i is not on the path of j.
    std::ptrdiff_t offset(int i, int j) const
    {
        int t = depth(j) - depth(i);
        if (t < 0 || i < j) {
            return -1;
        }
        std::ptrdiff_t at = colptr_[j] + t;
        return rows_[at] == i ? at : -1;
    }

    int max_depth() const noexcept { return max_depth_; }
    std::size_t peak_update_size() const noexcept { return peak_update_; }

    bool equivalent(const SymbolicStructure& other) const;

private:
    SymbolicStructure() = default;

    SparsityPattern pattern_;
    Ordering ordering_;
    int n_ = 0;
    std::vector<int> parent_;
    std::vector<int> colptr_;
    std::vector<int> rows_;
    std::vector<int> child_ptr_;
    std::vector<int> child_;
    std::vector<int> topological_;
    int max_depth_ = 0;
    std::size_t peak_update_ = 0;
};

using StructurePtr = std::shared_ptr<const SymbolicStructure>;

void require_same_structure(const StructurePtr& a, const StructurePtr& b);

// One value per stored entry of the structure, column by column.
class PackedColumns {
public:
    const StructurePtr& structure() const noexcept { return structure_; }
    int size() const noexcept { return structure_->size(); }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    std::span<const double> column(int k) const
    {
        auto cp = structure_->colptr();
        return {values_.data() + cp[k], values_.data() + cp[k + 1]};
    }
    std::span<double> column(int k)
    {
        auto cp = structure_->colptr();
        return {values_.data() + cp[k], values_.data() + cp[k + 1]};
    }
    double diag(int k) const { return values_[structure_->colptr()[k]]; }

    // Entry (i, j) in position coordinates, i >= j; zero outside the structure.
    double at(int i, int j) const;
    // Throws InputError outside the structure.
    double& ref(int i, int j);

protected:
    PackedColumns() = default;
    explicit PackedColumns(StructurePtr s) : structure_(std::move(s)), values_(structure_->nnz(), 0.0) {}

    StructurePtr structure_;
    std::vector<double> values_;
};

// Symmetric matrix in S^N_E, lower half stored.
class SymSparse : public PackedColumns {
public:
    SymSparse() = default;
    explicit SymSparse(StructurePtr s) : PackedColumns(std::move(s)) {}

    static SymSparse identity(StructurePtr s);

    // Entry (u, v) in vertex labels; zero outside the pattern.
    double operator()(int u, int v) const;
    // Throws InputError when {u, v} is not in the pattern.
    void set(int u, int v, double value);

    SymSparse& operator+=(const SymSparse& other);
    SymSparse& operator-=(const SymSparse& other);
    SymSparse& operator*=(double alpha);
    // this += alpha * x
    SymSparse& axpy(double alpha, const SymSparse& x);

    friend SymSparse operator+(SymSparse a, const SymSparse& b) { return a += b; }
    friend SymSparse operator-(SymSparse a, const SymSparse& b) { return a -= b; }
    friend SymSparse operator*(double alpha, SymSparse a) { return a *= alpha; }
    friend SymSparse operator-(SymSparse a) { return a *= -1.0; }
};

// Lower-triangular matrix in T^N_E (position coordinates), same layout as SymSparse.
class LowerSparse : public PackedColumns {
public:
    LowerSparse() = default;
    explicit LowerSparse(StructurePtr s) : PackedColumns(std::move(s)) {}

    static LowerSparse identity(StructurePtr s);

    bool nonsingular() const;
    // Throws SingularMatrix naming the first zero diagonal.
    void require_nonsingular() const;
};

struct Triplet {
    int row;
    int col;
    double value;
};

// Vertex-labelled triplets; each unordered pair at most once.
SymSparse from_triplets(StructurePtr s, std::span<const Triplet> entries);
std::vector<Triplet> to_triplets(const SymSparse& x);  // row >= col in vertex labels

// Triplets (row, col) are vertex labels whose positions satisfy pos(row) >= pos(col).
LowerSparse lower_from_triplets(StructurePtr s, std::span<const Triplet> entries);
std::vector<Triplet> to_triplets(const LowerSparse& l);

// Dense conversions.  Vertex-indexed unless named `ordered`; lower-triangular factors
// are only meaningful in position coordinates.
Eigen::MatrixXd to_dense(const SymSparse& x);
Eigen::MatrixXd to_dense_ordered(const SymSparse& x);
Eigen::MatrixXd to_dense(const LowerSparse& l);

// Orthogonal projection onto S^N_E.  Throws InputError on asymmetry beyond 1e-12 relative.
SymSparse project(const Eigen::MatrixXd& dense, StructurePtr s);
SymSparse project_ordered(const Eigen::MatrixXd& dense, StructurePtr s);

double inner(const SymSparse& x, const SymSparse& y);
double norm(const SymSparse& x);  // Frobenius

LowerSparse tri_mul(const LowerSparse& l, const LowerSparse& lt);
LowerSparse tri_inverse(const LowerSparse& l);

}  // namespace homcone
