#include "homcone/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

#include "homcone/error.hpp"

namespace homcone {

std::shared_ptr<const SymbolicStructure> SymbolicStructure::create(SparsityPattern pattern, Ordering ordering)
{
    if (verify_ordering(pattern, ordering) != OrderingClass::TriviallyPerfectPEO) {
        throw PreconditionError("ordering is not a trivially perfect elimination ordering");
    }
    std::shared_ptr<SymbolicStructure> s(new SymbolicStructure());
    const int n = pattern.size();
    s->n_ = n;

    EliminationTree etree = build_etree(pattern, ordering);
    s->parent_.assign(n, -1);
    for (int k = 0; k < n; ++k) {
        int v = ordering.vertex(k);
        if (!etree.is_root(v)) {
            s->parent_[k] = ordering.position(etree.parent(v));
        }
    }

    std::vector<int> depth(n, 1);
    for (int k = n - 1; k >= 0; --k) {
        if (s->parent_[k] != -1) {
            depth[k] = depth[s->parent_[k]] + 1;
        }
    }
    s->colptr_.assign(n + 1, 0);
    for (int k = 0; k < n; ++k) {
        s->colptr_[k + 1] = s->colptr_[k] + depth[k];
        s->max_depth_ = std::max(s->max_depth_, depth[k]);
    }
    s->rows_.resize(s->colptr_[n]);
    for (int k = 0; k < n; ++k) {
        int at = s->colptr_[k];
        for (int a = k; a != -1; a = s->parent_[a]) {
            s->rows_[at++] = a;
        }
    }

    s->child_ptr_.assign(n + 1, 0);
    for (int k = 0; k < n; ++k) {
        if (s->parent_[k] != -1) {
            ++s->child_ptr_[s->parent_[k] + 1];
        }
    }
    for (int k = 0; k < n; ++k) {
        s->child_ptr_[k + 1] += s->child_ptr_[k];
    }
    s->child_.resize(s->child_ptr_[n]);
    {
        std::vector<int> fill(s->child_ptr_.begin(), s->child_ptr_.end() - 1);
        for (int k = 0; k < n; ++k) {
            if (s->parent_[k] != -1) {
                s->child_[fill[s->parent_[k]]++] = k;
            }
        }
    }

    if (is_postordering(etree, ordering)) {
        s->topological_.resize(n);
        for (int k = 0; k < n; ++k) {
            s->topological_[k] = k;
        }
    } else {
        std::vector<int> pparent(n);
        for (int k = 0; k < n; ++k) {
            pparent[k] = s->parent_[k] == -1 ? k : s->parent_[k];
        }
        Ordering post = postorder(EliminationTree(std::move(pparent)));
        s->topological_.assign(post.sigma().begin(), post.sigma().end());
    }

    // Update-matrix stack footprint along the topological schedule.
    std::size_t current = 0;
    for (int k : s->topological_) {
        std::size_t d = depth[k];
        current -= (s->child_ptr_[k + 1] - s->child_ptr_[k]) * d * d;
        current += (d - 1) * (d - 1);
        s->peak_update_ = std::max(s->peak_update_, current);
    }

    s->pattern_ = std::move(pattern);
    s->ordering_ = std::move(ordering);
    return s;
}

std::shared_ptr<const SymbolicStructure> SymbolicStructure::create(SparsityPattern pattern)
{
    auto result = lbfs_order(pattern);
    if (auto* rejection = std::get_if<LbfsRejection>(&result)) {
        throw PreconditionError("pattern is not homogeneous chordal (LBFS pivot " +
                                std::to_string(rejection->pivot + 1) + ", neighbor " +
                                std::to_string(rejection->neighbor + 1) + ")");
    }
    return create(std::move(pattern), std::move(std::get<TreeOrdering>(result).ordering));
}

bool SymbolicStructure::equivalent(const SymbolicStructure& other) const
{
    return this == &other || (ordering_ == other.ordering_ && pattern_ == other.pattern_);
}

void require_same_structure(const StructurePtr& a, const StructurePtr& b)
{
    if (a != b && (!a || !b || !a->equivalent(*b))) {
        throw PatternMismatch();
    }
}

double PackedColumns::at(int i, int j) const
{
    auto off = structure_->offset(i, j);
    return off < 0 ? 0.0 : values_[off];
}

double& PackedColumns::ref(int i, int j)
{
    auto off = structure_->offset(i, j);
    if (off < 0) {
        throw InputError("position (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                         ") is outside the sparsity structure");
    }
    return values_[off];
}

SymSparse SymSparse::identity(StructurePtr s)
{
    SymSparse x(std::move(s));
    for (int k = 0; k < x.size(); ++k) {
        x.column(k)[0] = 1.0;
    }
    return x;
}

double SymSparse::operator()(int u, int v) const
{
    const Ordering& ord = structure_->ordering();
    int i = ord.position(u);
    int j = ord.position(v);
    return i >= j ? at(i, j) : at(j, i);
}

void SymSparse::set(int u, int v, double value)
{
    const Ordering& ord = structure_->ordering();
    int i = ord.position(u);
    int j = ord.position(v);
    if (structure_->offset(std::max(i, j), std::min(i, j)) < 0) {
        throw InputError("entry (" + std::to_string(u + 1) + "," + std::to_string(v + 1) +
                         ") is not in the sparsity pattern");
    }
    ref(std::max(i, j), std::min(i, j)) = value;
}

SymSparse& SymSparse::operator+=(const SymSparse& other) { return axpy(1.0, other); }

SymSparse& SymSparse::operator-=(const SymSparse& other) { return axpy(-1.0, other); }

SymSparse& SymSparse::operator*=(double alpha)
{
    for (double& v : values_) {
        v *= alpha;
    }
    return *this;
}

SymSparse& SymSparse::axpy(double alpha, const SymSparse& x)
{
    require_same_structure(structure_, x.structure_);
    for (std::size_t e = 0; e < values_.size(); ++e) {
        values_[e] += alpha * x.values_[e];
    }
    return *this;
}

LowerSparse LowerSparse::identity(StructurePtr s)
{
    LowerSparse l(std::move(s));
    for (int k = 0; k < l.size(); ++k) {
        l.column(k)[0] = 1.0;
    }
    return l;
}

bool LowerSparse::nonsingular() const
{
    for (int k = 0; k < size(); ++k) {
        if (diag(k) == 0.0) {
            return false;
        }
    }
    return true;
}

void LowerSparse::require_nonsingular() const
{
    for (int k = 0; k < size(); ++k) {
        if (diag(k) == 0.0) {
            throw SingularMatrix(structure_->ordering().vertex(k));
        }
    }
}

SymSparse from_triplets(StructurePtr s, std::span<const Triplet> entries)
{
    SymSparse x(std::move(s));
    const auto& st = *x.structure();
    std::vector<char> seen(st.nnz(), 0);
    for (const Triplet& t : entries) {
        if (t.row < 0 || t.col < 0 || t.row >= st.size() || t.col >= st.size()) {
            throw InputError("triplet index out of range");
        }
        int i = st.ordering().position(t.row);
        int j = st.ordering().position(t.col);
        auto off = st.offset(std::max(i, j), std::min(i, j));
        if (off < 0) {
            throw InputError("entry (" + std::to_string(t.row + 1) + "," + std::to_string(t.col + 1) +
                             ") is not in the sparsity pattern");
        }
        if (seen[off]) {
            throw InputError("duplicate entry (" + std::to_string(t.row + 1) + "," +
                             std::to_string(t.col + 1) + ")");
        }
        seen[off] = 1;
        x.values()[off] = t.value;
    }
    return x;
}

std::vector<Triplet> to_triplets(const SymSparse& x)
{
    const auto& st = *x.structure();
    std::vector<Triplet> out;
    out.reserve(st.nnz());
    for (int k = 0; k < st.size(); ++k) {
        auto rows = st.column_rows(k);
        auto vals = x.column(k);
        for (std::size_t t = 0; t < rows.size(); ++t) {
            int u = st.ordering().vertex(rows[t]);
            int v = st.ordering().vertex(k);
            out.push_back({std::max(u, v), std::min(u, v), vals[t]});
        }
    }
    std::sort(out.begin(), out.end(), [](const Triplet& a, const Triplet& b) {
        return a.col != b.col ? a.col < b.col : a.row < b.row;
    });
    return out;
}

LowerSparse lower_from_triplets(StructurePtr s, std::span<const Triplet> entries)
{
    LowerSparse l(std::move(s));
    const auto& st = *l.structure();
    for (const Triplet& t : entries) {
        if (t.row < 0 || t.col < 0 || t.row >= st.size() || t.col >= st.size()) {
            throw InputError("triplet index out of range");
        }
        l.ref(st.ordering().position(t.row), st.ordering().position(t.col)) = t.value;
    }
    return l;
}

std::vector<Triplet> to_triplets(const LowerSparse& l)
{
    const auto& st = *l.structure();
    std::vector<Triplet> out;
    out.reserve(st.nnz());
    for (int k = 0; k < st.size(); ++k) {
        auto rows = st.column_rows(k);
        auto vals = l.column(k);
        for (std::size_t t = 0; t < rows.size(); ++t) {
            out.push_back({st.ordering().vertex(rows[t]), st.ordering().vertex(k), vals[t]});
        }
    }
    return out;
}

Eigen::MatrixXd to_dense_ordered(const SymSparse& x)
{
    const auto& st = *x.structure();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(st.size(), st.size());
    for (int k = 0; k < st.size(); ++k) {
        auto rows = st.column_rows(k);
        auto vals = x.column(k);
        for (std::size_t t = 0; t < rows.size(); ++t) {
            d(rows[t], k) = vals[t];
            d(k, rows[t]) = vals[t];
        }
    }
    return d;
}

Eigen::MatrixXd to_dense(const SymSparse& x)
{
    const auto& ord = x.structure()->ordering();
    Eigen::MatrixXd p = to_dense_ordered(x);
    Eigen::MatrixXd d(p.rows(), p.cols());
    for (int j = 0; j < p.cols(); ++j) {
        for (int i = 0; i < p.rows(); ++i) {
            d(ord.vertex(i), ord.vertex(j)) = p(i, j);
        }
    }
    return d;
}

Eigen::MatrixXd to_dense(const LowerSparse& l)
{
    const auto& st = *l.structure();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(st.size(), st.size());
    for (int k = 0; k < st.size(); ++k) {
        auto rows = st.column_rows(k);
        auto vals = l.column(k);
        for (std::size_t t = 0; t < rows.size(); ++t) {
            d(rows[t], k) = vals[t];
        }
    }
    return d;
}

namespace {

void require_symmetric(const Eigen::MatrixXd& dense, int n)
{
    if (dense.rows() != n || dense.cols() != n) {
        throw InputError("dense matrix has the wrong dimensions");
    }
    double scale = dense.cwiseAbs().maxCoeff();
    double asym = (dense - dense.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * scale) {
        throw InputError("dense matrix is not symmetric");
    }
}

}  // namespace

SymSparse project_ordered(const Eigen::MatrixXd& dense, StructurePtr s)
{
    require_symmetric(dense, s->size());
    SymSparse x(std::move(s));
    const auto& st = *x.structure();
    for (int k = 0; k < st.size(); ++k) {
        auto rows = st.column_rows(k);
        auto vals = x.column(k);
        for (std::size_t t = 0; t < rows.size(); ++t) {
            vals[t] = 0.5 * (dense(rows[t], k) + dense(k, rows[t]));
        }
    }
    return x;
}

SymSparse project(const Eigen::MatrixXd& dense, StructurePtr s)
{
    require_symmetric(dense, s->size());
    const auto& ord = s->ordering();
    Eigen::MatrixXd p(dense.rows(), dense.cols());
    for (int j = 0; j < p.cols(); ++j) {
        for (int i = 0; i < p.rows(); ++i) {
            p(i, j) = dense(ord.vertex(i), ord.vertex(j));
        }
    }
    return project_ordered(p, std::move(s));
}

double inner(const SymSparse& x, const SymSparse& y)
{
    require_same_structure(x.structure(), y.structure());
    double diag = 0.0;
    double off = 0.0;
    for (int k = 0; k < x.size(); ++k) {
        auto a = x.column(k);
        auto b = y.column(k);
        diag += a[0] * b[0];
        for (std::size_t t = 1; t < a.size(); ++t) {
            off += a[t] * b[t];
        }
    }
    return diag + 2.0 * off;
}

double norm(const SymSparse& x) { return std::sqrt(inner(x, x)); }

LowerSparse tri_mul(const LowerSparse& l, const LowerSparse& lt)
{
    require_same_structure(l.structure(), lt.structure());
    LowerSparse y(l.structure());
    const auto& st = *l.structure();
    for (int k = 0; k < st.size(); ++k) {
        auto rows = st.column_rows(k);
        auto out = y.column(k);
        auto b = lt.column(k);
        for (std::size_t a = 0; a < rows.size(); ++a) {
            auto lj = l.column(rows[a]);
            for (std::size_t t = 0; t < lj.size(); ++t) {
                out[a + t] += b[a] * lj[t];
            }
        }
    }
    return y;
}

LowerSparse tri_inverse(const LowerSparse& l)
{
    l.require_nonsingular();
    LowerSparse y(l.structure());
    const auto& st = *l.structure();
    for (int k = 0; k < st.size(); ++k) {
        auto rows = st.column_rows(k);
        auto x = y.column(k);
        x[0] = 1.0;
        for (std::size_t a = 0; a < rows.size(); ++a) {
            auto lj = l.column(rows[a]);
            x[a] /= lj[0];
            for (std::size_t t = 1; t < lj.size(); ++t) {
                x[a + t] -= lj[t] * x[a];
            }
        }
    }
    return y;
}

}  // namespace homcone
