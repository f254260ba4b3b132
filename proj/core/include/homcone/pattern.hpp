#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace homcone {

using Edge = std::pair<int, int>;

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class SparsityPattern {
public:
    SparsityPattern() = default;

    // Throws InputError on self-loops, duplicate edges or out-of-range vertices.
    SparsityPattern(int n, std::span<const Edge> edges);

    static SparsityPattern dense(int n);

    int size() const noexcept { return n_; }
    std::size_t num_edges() const noexcept { return adj_.size() / 2; }

    std::span<const int> neighbors(int v) const
    {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    int degree(int v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    bool has_edge(int u, int v) const;

    // Edges (u, v) with u < v in lexicographic order.
    std::vector<Edge> edges() const;

    friend bool operator==(const SparsityPattern&, const SparsityPattern&) = default;

private:
    int n_ = 0;
    std::vector<int> offsets_{0};
    std::vector<int> adj_;
};

// Bijection between positions 0..n-1 and vertices.
class Ordering {
public:
    Ordering() = default;

    // sigma[k] is the vertex at position k.  Throws InputError if not a permutation.
    explicit Ordering(std::vector<int> sigma);

    static Ordering natural(int n);

    int size() const noexcept { return static_cast<int>(sigma_.size()); }
    int vertex(int position) const { return sigma_[position]; }
    int position(int vertex) const { return inverse_[vertex]; }
    std::span<const int> sigma() const noexcept { return sigma_; }
    std::span<const int> sigma_inv() const noexcept { return inverse_; }

    friend bool operator==(const Ordering& a, const Ordering& b) { return a.sigma_ == b.sigma_; }

private:
    std::vector<int> sigma_;
    std::vector<int> inverse_;
};

// Rooted forest on vertices; parent(v) == v marks a root.
class EliminationTree {
public:
    EliminationTree() = default;
    explicit EliminationTree(std::vector<int> parent);

    int size() const noexcept { return static_cast<int>(parent_.size()); }
    int parent(int v) const { return parent_[v]; }
    bool is_root(int v) const { return parent_[v] == v; }
    std::span<const int> parents() const noexcept { return parent_; }
    std::span<const int> children(int v) const
    {
        return {child_.data() + child_ptr_[v], child_.data() + child_ptr_[v + 1]};
    }
    std::span<const int> roots() const noexcept { return roots_; }

    friend bool operator==(const EliminationTree& a, const EliminationTree& b)
    {
        return a.parent_ == b.parent_;
    }

private:
    std::vector<int> parent_;
    std::vector<int> child_ptr_{0};
    std::vector<int> child_;
    std::vector<int> roots_;
};

struct SupernodePartition {
    std::vector<int> representatives;  // one per supernode, in position order
    std::vector<int> member_of;        // vertex -> supernode id
    std::vector<int> snode_parent;     // supernode -> parent supernode, self for roots
    std::vector<std::vector<int>> members;  // vertices of each supernode, bottom to top
};

struct TreeOrdering {
    Ordering ordering;
    EliminationTree etree;
};

// Certificate from LBFS step 2: `neighbor` is unnumbered, adjacent to `pivot`, and lies
// in set `set_index` below the pivot's set `pivot_set`.
struct LbfsRejection {
    int pivot;
    int neighbor;
    int set_index;
    int pivot_set;
};

using LbfsResult = std::variant<TreeOrdering, LbfsRejection>;

// Lexicographic breadth-first recognition of homogeneous chordal (trivially perfect)
// patterns in O(|V| + |E|).  On success the ordering is a trivially perfect
// elimination ordering and a postordering of the returned elimination tree.
LbfsResult lbfs_order(const SparsityPattern& pattern);

enum class OrderingClass { NotPEO, PEO, TriviallyPerfectPEO };

OrderingClass verify_ordering(const SparsityPattern& pattern, const Ordering& ordering);

// parent(v) is the first vertex of adj+(v) in the ordering, or v itself.
EliminationTree build_etree(const SparsityPattern& pattern, const Ordering& ordering);

bool is_postordering(const EliminationTree& etree, const Ordering& ordering);

// Fundamental supernodes.  Requires a trivially perfect postordering.
SupernodePartition supernode_partition(const SparsityPattern& pattern, const Ordering& ordering,
                                       const EliminationTree& etree);

// Maximum cardinality search; returns a perfect elimination ordering when the pattern
// is chordal.
std::optional<Ordering> chordal_ordering(const SparsityPattern& pattern);

struct Extension {
    SparsityPattern extended;
    Ordering ordering;
    EliminationTree etree;
};

// Homogeneous chordal supergraph: fill-reducing ordering (approximate minimum degree
// unless `fill_order` is given), elimination tree of the filled graph, then closure of
// every vertex to its full ancestor set.  The returned ordering is a postordering.
Extension homogeneous_extension(const SparsityPattern& pattern,
                                const std::optional<Ordering>& fill_order = std::nullopt);

// Comparability graph of `etree`.
SparsityPattern comparability_graph(const EliminationTree& etree);

// Postordering of a forest; children are visited in increasing order of `rank`
// (vertex index when `rank` is empty).
Ordering postorder(const EliminationTree& etree, std::span<const int> rank = {});

struct RandomPattern {
    SparsityPattern pattern;
    Ordering ordering;
    EliminationTree etree;
};

// Comparability graph of a random rooted forest.  Each new vertex starts a new tree
// with probability 1 - branching, otherwise it hangs below a uniformly chosen vertex of
// the current tree.  Vertex labels are randomly permuted.
RandomPattern random_homogeneous_pattern(int n, std::uint64_t seed, double branching = 0.95);

}  // namespace homcone
