#include "homcone/pattern.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>

#include "homcone/error.hpp"
#include "homcone/rng.hpp"

namespace homcone {

namespace {

std::string vertex_label(int v) { return std::to_string(v + 1); }

}  // namespace

SparsityPattern::SparsityPattern(int n, std::span<const Edge> edges) : n_(n)
{
    if (n < 0) {
        throw InputError("negative vertex count");
    }
    offsets_.assign(n + 1, 0);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) {
            throw InputError("edge {" + vertex_label(u) + "," + vertex_label(v) + "} out of range");
        }
        if (u == v) {
            throw InputError("self-loop at vertex " + vertex_label(u));
        }
        ++offsets_[u + 1];
        ++offsets_[v + 1];
    }
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    adj_.resize(offsets_[n]);
    std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
    for (auto [u, v] : edges) {
        adj_[fill[u]++] = v;
        adj_[fill[v]++] = u;
    }
    for (int v = 0; v < n; ++v) {
        auto first = adj_.begin() + offsets_[v];
        auto last = adj_.begin() + offsets_[v + 1];
        std::sort(first, last);
        if (auto dup = std::adjacent_find(first, last); dup != last) {
            throw InputError("duplicate edge {" + vertex_label(std::min(v, *dup)) + "," +
                             vertex_label(std::max(v, *dup)) + "}");
        }
    }
}

SparsityPattern SparsityPattern::dense(int n)
{
    std::vector<Edge> edges;
    for (int j = 0; j < n; ++j) {
        for (int i = j + 1; i < n; ++i) {
            edges.emplace_back(j, i);
        }
    }
    return SparsityPattern(n, edges);
}

bool SparsityPattern::has_edge(int u, int v) const
{
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> SparsityPattern::edges() const
{
    std::vector<Edge> out;
    out.reserve(num_edges());
    for (int u = 0; u < n_; ++u) {
        for (int v : neighbors(u)) {
            if (u < v) {
                out.emplace_back(u, v);
            }
        }
    }
    return out;
}

Ordering::Ordering(std::vector<int> sigma) : sigma_(std::move(sigma)), inverse_(sigma_.size(), -1)
{
    const int n = size();
    for (int k = 0; k < n; ++k) {
        int v = sigma_[k];
        if (v < 0 || v >= n || inverse_[v] != -1) {
            throw InputError("ordering is not a permutation of 1.." + std::to_string(n));
        }
        inverse_[v] = k;
    }
}

Ordering Ordering::natural(int n)
{
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    return Ordering(std::move(sigma));
}

EliminationTree::EliminationTree(std::vector<int> parent) : parent_(std::move(parent))
{
    const int n = size();
    child_ptr_.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) {
        int p = parent_[v];
        if (p < 0 || p >= n) {
            throw InputError("parent of vertex " + vertex_label(v) + " out of range");
        }
        if (p == v) {
            roots_.push_back(v);
        } else {
            ++child_ptr_[p + 1];
        }
    }
    std::partial_sum(child_ptr_.begin(), child_ptr_.end(), child_ptr_.begin());
    child_.resize(child_ptr_[n]);
    std::vector<int> fill(child_ptr_.begin(), child_ptr_.end() - 1);
    for (int v = 0; v < n; ++v) {
        if (parent_[v] != v) {
            child_[fill[parent_[v]]++] = v;
        }
    }
}

LbfsResult lbfs_order(const SparsityPattern& pattern)
{
    const int n = pattern.size();

    // Work in rank coordinates: rank order is nondecreasing degree, ties by ascending
    // vertex index, so the initial list is 0..n-1.
    std::vector<int> rank(n);
    std::vector<int> initial(n);
    {
        int max_degree = 0;
        for (int v = 0; v < n; ++v) {
            max_degree = std::max(max_degree, pattern.degree(v));
        }
        std::vector<int> start(max_degree + 2, 0);
        for (int v = 0; v < n; ++v) {
            ++start[pattern.degree(v) + 1];
        }
        std::partial_sum(start.begin(), start.end(), start.begin());
        for (int v = 0; v < n; ++v) {
            int r = start[pattern.degree(v)]++;
            initial[r] = v;
            rank[v] = r;
        }
    }

    // Adjacency lists in ascending rank, so split-off sets stay sorted by rank.
    std::vector<int> adj_ptr(n + 1, 0);
    for (int r = 0; r < n; ++r) {
        adj_ptr[r + 1] = adj_ptr[r] + pattern.degree(initial[r]);
    }
    std::vector<int> adj(adj_ptr[n]);
    {
        std::vector<int> fill(adj_ptr.begin(), adj_ptr.end() - 1);
        for (int r = 0; r < n; ++r) {
            for (int w : pattern.neighbors(initial[r])) {
                adj[fill[rank[w]]++] = r;
            }
        }
    }

    // Partition sets as doubly linked lists; the ordered partition is a stack of sets.
    // set == -1 marks a numbered vertex.
    struct Node {
        int prev;
        int next;
        int set;
        int parent;
    };
    struct Set {
        int head = -1;
        int tail = -1;
        int stack_pos = -1;
    };
    std::vector<Node> node(n);
    std::vector<Set> sets;
    sets.reserve(n);
    std::vector<int> stack;
    auto unlink = [&](int v) {
        Node& x = node[v];
        Set& s = sets[x.set];
        (x.prev == -1 ? s.head : node[x.prev].next) = x.next;
        (x.next == -1 ? s.tail : node[x.next].prev) = x.prev;
    };
    auto append = [&](int id, int v) {
        Set& s = sets[id];
        Node& x = node[v];
        x.prev = s.tail;
        x.next = -1;
        (s.tail == -1 ? s.head : node[s.tail].next) = v;
        s.tail = v;
        x.set = id;
    };

    if (n > 0) {
        sets.push_back({0, n - 1, 0});
        stack.push_back(0);
        for (int r = 0; r < n; ++r) {
            node[r] = {r - 1, r + 1 < n ? r + 1 : -1, 0, r};
        }
    }

    std::vector<int> sigma(n);
    for (int pos = n - 1; pos >= 0; --pos) {
        const int k = stack.back();
        const int v = sets[k].tail;
        unlink(v);
        node[v].set = -1;
        sigma[pos] = v;

        int split = -1;
        for (int e = adj_ptr[v]; e < adj_ptr[v + 1]; ++e) {
            const int w = adj[e];
            const int sw = node[w].set;
            if (sw == -1) {
                continue;
            }
            if (sw != k) {
                return LbfsRejection{initial[v], initial[w], sets[sw].stack_pos, sets[k].stack_pos};
            }
            if (split == -1) {
                split = static_cast<int>(sets.size());
                sets.emplace_back();
            }
            unlink(w);
            append(split, w);
            node[w].parent = v;
        }
        if (sets[k].head == -1) {
            stack.pop_back();
        }
        if (split != -1) {
            sets[split].stack_pos = static_cast<int>(stack.size());
            stack.push_back(split);
        }
    }

    std::vector<int> parent(n);
    for (int r = 0; r < n; ++r) {
        sigma[r] = initial[sigma[r]];
        parent[initial[r]] = initial[node[r].parent];
    }
    return TreeOrdering{Ordering(std::move(sigma)), EliminationTree(std::move(parent))};
}

OrderingClass verify_ordering(const SparsityPattern& pattern, const Ordering& ordering)
{
    const int n = pattern.size();
    if (ordering.size() != n) {
        throw InputError("ordering size does not match pattern");
    }
    // parent[u] and |adj+(u)| in position space.
    std::vector<int> parent(n, -1);
    std::vector<int> higher(n, 0);
    for (int k = 0; k < n; ++k) {
        int first = n;
        for (int w : pattern.neighbors(ordering.vertex(k))) {
            int q = ordering.position(w);
            if (q > k) {
                ++higher[k];
                first = std::min(first, q);
            }
        }
        if (first < n) {
            parent[k] = first;
        }
    }

    // Group children by parent so each adj+(p) is marked once.
    std::vector<int> child_ptr(n + 1, 0);
    for (int k = 0; k < n; ++k) {
        if (parent[k] != -1) {
            ++child_ptr[parent[k] + 1];
        }
    }
    std::partial_sum(child_ptr.begin(), child_ptr.end(), child_ptr.begin());
    std::vector<int> child(child_ptr[n]);
    {
        std::vector<int> fill(child_ptr.begin(), child_ptr.end() - 1);
        for (int k = 0; k < n; ++k) {
            if (parent[k] != -1) {
                child[fill[parent[k]]++] = k;
            }
        }
    }

    std::vector<int> mark(n, -1);
    bool trivially_perfect = true;
    for (int p = 0; p < n; ++p) {
        if (child_ptr[p] == child_ptr[p + 1]) {
            continue;
        }
        mark[p] = p;
        for (int w : pattern.neighbors(ordering.vertex(p))) {
            if (int q = ordering.position(w); q > p) {
                mark[q] = p;
            }
        }
        for (int c = child_ptr[p]; c < child_ptr[p + 1]; ++c) {
            int k = child[c];
            for (int w : pattern.neighbors(ordering.vertex(k))) {
                if (int q = ordering.position(w); q > k && mark[q] != p) {
                    return OrderingClass::NotPEO;
                }
            }
            if (higher[k] != higher[p] + 1) {
                trivially_perfect = false;
            }
        }
    }
    return trivially_perfect ? OrderingClass::TriviallyPerfectPEO : OrderingClass::PEO;
}

EliminationTree build_etree(const SparsityPattern& pattern, const Ordering& ordering)
{
    const int n = pattern.size();
    if (ordering.size() != n) {
        throw InputError("ordering size does not match pattern");
    }
    std::vector<int> parent(n);
    for (int v = 0; v < n; ++v) {
        int k = ordering.position(v);
        int first = n;
        for (int w : pattern.neighbors(v)) {
            if (int q = ordering.position(w); q > k) {
                first = std::min(first, q);
            }
        }
        parent[v] = first < n ? ordering.vertex(first) : v;
    }
    return EliminationTree(std::move(parent));
}

bool is_postordering(const EliminationTree& etree, const Ordering& ordering)
{
    const int n = etree.size();
    if (ordering.size() != n) {
        return false;
    }
    std::vector<int> subtree(n, 1);
    for (int k = 0; k < n; ++k) {
        int v = ordering.vertex(k);
        if (etree.is_root(v)) {
            continue;
        }
        int p = etree.parent(v);
        if (ordering.position(p) <= k) {
            return false;
        }
        subtree[p] += subtree[v];
    }
    for (int v = 0; v < n; ++v) {
        if (etree.is_root(v)) {
            continue;
        }
        int p = etree.parent(v);
        int first_v = ordering.position(v) - subtree[v] + 1;
        int first_p = ordering.position(p) - subtree[p] + 1;
        if (first_v < first_p) {
            return false;
        }
    }
    return true;
}

SupernodePartition supernode_partition(const SparsityPattern& pattern, const Ordering& ordering,
                                       const EliminationTree& etree)
{
    if (verify_ordering(pattern, ordering) != OrderingClass::TriviallyPerfectPEO) {
        throw PreconditionError("supernode_partition needs a trivially perfect ordering");
    }
    if (etree != build_etree(pattern, ordering) || !is_postordering(etree, ordering)) {
        throw PreconditionError("supernode_partition needs a postordering of the elimination tree");
    }
    const int n = pattern.size();
    SupernodePartition part;
    part.member_of.assign(n, -1);
    for (int k = 0; k < n; ++k) {
        int v = ordering.vertex(k);
        auto ch = etree.children(v);
        if (ch.size() == 1) {
            int id = part.member_of[ch[0]];
            part.member_of[v] = id;
            part.members[id].push_back(v);
        } else {
            part.member_of[v] = static_cast<int>(part.representatives.size());
            part.representatives.push_back(v);
            part.members.push_back({v});
        }
    }
    const int count = static_cast<int>(part.representatives.size());
    part.snode_parent.resize(count);
    for (int id = 0; id < count; ++id) {
        int top = part.members[id].back();
        part.snode_parent[id] = etree.is_root(top) ? id : part.member_of[etree.parent(top)];
    }
    return part;
}

std::optional<Ordering> chordal_ordering(const SparsityPattern& pattern)
{
    const int n = pattern.size();
    // Maximum cardinality search with bucket lists keyed on the number of numbered
    // neighbors; vertices are numbered from the last position downwards.
    std::vector<int> weight(n, 0);
    std::vector<int> head(n + 1, -1);
    std::vector<int> prev(n, -1);
    std::vector<int> next(n, -1);
    auto insert = [&](int v) {
        int w = weight[v];
        prev[v] = -1;
        next[v] = head[w];
        if (head[w] != -1) {
            prev[head[w]] = v;
        }
        head[w] = v;
    };
    auto remove = [&](int v) {
        int w = weight[v];
        (prev[v] == -1 ? head[w] : next[prev[v]]) = next[v];
        if (next[v] != -1) {
            prev[next[v]] = prev[v];
        }
    };
    for (int v = n - 1; v >= 0; --v) {
        insert(v);
    }
    std::vector<char> numbered(n, 0);
    std::vector<int> sigma(n);
    int best = 0;
    for (int pos = n - 1; pos >= 0; --pos) {
        while (best > 0 && head[best] == -1) {
            --best;
        }
        int v = head[best];
        remove(v);
        numbered[v] = 1;
        sigma[pos] = v;
        for (int w : pattern.neighbors(v)) {
            if (!numbered[w]) {
                remove(w);
                ++weight[w];
                insert(w);
                best = std::max(best, weight[w]);
            }
        }
    }
    Ordering ordering(std::move(sigma));
    if (verify_ordering(pattern, ordering) == OrderingClass::NotPEO) {
        return std::nullopt;
    }
    return ordering;
}

SparsityPattern comparability_graph(const EliminationTree& etree)
{
    const int n = etree.size();
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) {
        int steps = 0;
        for (int a = v; !etree.is_root(a); a = etree.parent(a)) {
            if (++steps > n) {
                throw InputError("parent array contains a cycle");
            }
            edges.emplace_back(v, etree.parent(a));
        }
    }
    return SparsityPattern(n, edges);
}

Ordering postorder(const EliminationTree& etree, std::span<const int> rank)
{
    const int n = etree.size();
    auto less = [&](int a, int b) { return rank.empty() ? a < b : rank[a] < rank[b]; };
    std::vector<int> roots(etree.roots().begin(), etree.roots().end());
    std::sort(roots.begin(), roots.end(), less);
    std::vector<std::vector<int>> kids(n);
    for (int v = 0; v < n; ++v) {
        auto ch = etree.children(v);
        kids[v].assign(ch.begin(), ch.end());
        std::sort(kids[v].begin(), kids[v].end(), less);
    }
    std::vector<int> sigma;
    sigma.reserve(n);
    std::vector<std::pair<int, std::size_t>> stack;
    for (int r : roots) {
        stack.emplace_back(r, 0);
        while (!stack.empty()) {
            auto& [v, i] = stack.back();
            if (i < kids[v].size()) {
                int c = kids[v][i++];
                stack.emplace_back(c, 0);
            } else {
                sigma.push_back(v);
                stack.pop_back();
            }
        }
    }
    if (static_cast<int>(sigma.size()) != n) {
        throw InputError("parent array contains a cycle");
    }
    return Ordering(std::move(sigma));
}

namespace {

Ordering amd_ordering(const SparsityPattern& pattern)
{
    const int n = pattern.size();
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(n + 2 * pattern.num_edges());
    for (int v = 0; v < n; ++v) {
        entries.emplace_back(v, v, 1.0);
        for (int w : pattern.neighbors(v)) {
            entries.emplace_back(w, v, 1.0);
        }
    }
    Eigen::SparseMatrix<double> a(n, n);
    a.setFromTriplets(entries.begin(), entries.end());
    Eigen::PermutationMatrix<Eigen::Dynamic, Eigen::Dynamic, int> perm;
    Eigen::AMDOrdering<int> amd;
    amd(a, perm);
    // perm maps new positions to original vertices.
    std::vector<int> sigma(perm.indices().data(), perm.indices().data() + n);
    return Ordering(std::move(sigma));
}

// Elimination tree of the filled graph (Liu's algorithm with path compression).
EliminationTree filled_etree(const SparsityPattern& pattern, const Ordering& ordering)
{
    const int n = pattern.size();
    std::vector<int> parent(n, -1);
    std::vector<int> ancestor(n, -1);
    for (int k = 0; k < n; ++k) {
        for (int w : pattern.neighbors(ordering.vertex(k))) {
            int i = ordering.position(w);
            while (i != -1 && i < k) {
                int next = ancestor[i];
                ancestor[i] = k;
                if (next == -1) {
                    parent[i] = k;
                }
                i = next;
            }
        }
    }
    std::vector<int> vparent(n);
    for (int k = 0; k < n; ++k) {
        int v = ordering.vertex(k);
        vparent[v] = parent[k] == -1 ? v : ordering.vertex(parent[k]);
    }
    return EliminationTree(std::move(vparent));
}

}  // namespace

Extension homogeneous_extension(const SparsityPattern& pattern, const std::optional<Ordering>& fill_order)
{
    if (!fill_order) {
        auto result = lbfs_order(pattern);
        if (auto* accepted = std::get_if<TreeOrdering>(&result)) {
            return {pattern, std::move(accepted->ordering), std::move(accepted->etree)};
        }
    } else if (fill_order->size() != pattern.size()) {
        throw InputError("ordering size does not match pattern");
    }
    Ordering order = fill_order ? *fill_order : amd_ordering(pattern);
    EliminationTree etree = filled_etree(pattern, order);
    Ordering post = postorder(etree, order.sigma_inv());
    return {comparability_graph(etree), std::move(post), std::move(etree)};
}

RandomPattern random_homogeneous_pattern(int n, std::uint64_t seed, double branching)
{
    if (n < 1) {
        throw InputError("random_homogeneous_pattern needs n >= 1");
    }
    Rng rng(seed);
    // Nodes are created top-down, so parent[t] < t.
    std::vector<int> parent(n);
    int tree_start = 0;
    for (int t = 0; t < n; ++t) {
        if (t == 0 || !rng.bernoulli(branching)) {
            parent[t] = t;
            tree_start = t;
        } else {
            parent[t] = tree_start + rng.index(t - tree_start);
        }
    }
    std::vector<int> label(n);
    std::iota(label.begin(), label.end(), 0);
    for (int i = n - 1; i > 0; --i) {
        std::swap(label[i], label[rng.index(i + 1)]);
    }
    std::vector<int> vparent(n);
    std::vector<int> creation(n);
    for (int t = 0; t < n; ++t) {
        vparent[label[t]] = label[parent[t]];
        creation[label[t]] = t;
    }
    EliminationTree etree(std::move(vparent));
    Ordering ordering = postorder(etree, creation);
    return {comparability_graph(etree), std::move(ordering), std::move(etree)};
}

}  // namespace homcone
