#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "homcone/error.hpp"
#include "test_util.hpp"

using namespace homcone;
using namespace homcone::testutil;

namespace {

std::vector<int> one_based(std::span<const int> v)
{
    std::vector<int> out;
    for (int x : v) {
        out.push_back(x + 1);
    }
    return out;
}

TreeOrdering accept(const SparsityPattern& p)
{
    LbfsResult r = lbfs_order(p);
    EXPECT_TRUE(std::holds_alternative<TreeOrdering>(r));
    return std::get<TreeOrdering>(r);
}

SparsityPattern random_graph(int n, double density, Rng& rng)
{
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (rng.bernoulli(density)) {
                edges.emplace_back(i, j);
            }
        }
    }
    return SparsityPattern(n, edges);
}

bool is_ancestor(const EliminationTree& t, int a, int v)
{
    while (!t.is_root(v)) {
        v = t.parent(v);
        if (v == a) {
            return true;
        }
    }
    return false;
}

}  // namespace

TEST(Pattern, RejectsSelfLoopsAndDuplicates)
{
    std::vector<Edge> loop{{0, 0}};
    EXPECT_THROW(SparsityPattern(2, loop), InputError);
    std::vector<Edge> dup{{0, 1}, {1, 0}};
    EXPECT_THROW(SparsityPattern(2, dup), InputError);
    std::vector<Edge> range{{0, 3}};
    EXPECT_THROW(SparsityPattern(2, range), InputError);
}

TEST(Pattern, AdjacencyIsSymmetricAndSorted)
{
    SparsityPattern p = twelve();
    EXPECT_EQ(p.num_edges(), 26u);
    std::vector<int> degrees;
    for (int v = 0; v < p.size(); ++v) {
        degrees.push_back(p.degree(v));
        auto nb = p.neighbors(v);
        EXPECT_TRUE(std::is_sorted(nb.begin(), nb.end()));
        for (int w : nb) {
            EXPECT_TRUE(p.has_edge(w, v));
        }
    }
    EXPECT_EQ(degrees, (std::vector<int>{4, 3, 3, 3, 6, 5, 3, 11, 4, 3, 2, 5}));
}

TEST(Lbfs, TwelveVertexExample)
{
    TreeOrdering t = accept(twelve());
    EXPECT_EQ(one_based(t.ordering.sigma()), (std::vector<int>{2, 1, 9, 6, 12, 11, 4, 7, 3, 10, 5, 8}));
    EXPECT_EQ(one_based(t.etree.parents()), (std::vector<int>{9, 6, 10, 7, 8, 12, 5, 8, 6, 5, 5, 8}));
    EXPECT_EQ(one_based(t.etree.roots()), (std::vector<int>{8}));
}

TEST(Lbfs, SingleVertex)
{
    TreeOrdering t = accept(SparsityPattern(1, {}));
    EXPECT_EQ(t.ordering.vertex(0), 0);
    EXPECT_TRUE(t.etree.is_root(0));
}

TEST(Lbfs, StarPlacesCenterLast)
{
    TreeOrdering t = accept(make_pattern(4, {{1, 4}, {2, 4}, {3, 4}}));
    EXPECT_EQ(t.ordering.vertex(3), 3);
    for (int v = 0; v < 3; ++v) {
        EXPECT_EQ(t.etree.parent(v), 3);
    }
    EXPECT_FALSE(densecheck::find_forbidden_subgraph(make_pattern(4, {{1, 4}, {2, 4}, {3, 4}})).has_value());
}

TEST(Lbfs, RejectsForbiddenSubgraphs)
{
    for (const SparsityPattern& p : {cycle4(), path4(), chordal9()}) {
        LbfsResult r = lbfs_order(p);
        ASSERT_TRUE(std::holds_alternative<LbfsRejection>(r));
        const auto& w = std::get<LbfsRejection>(r);
        EXPECT_TRUE(p.has_edge(w.pivot, w.neighbor));
        EXPECT_LT(w.set_index, w.pivot_set);
    }
}

TEST(Lbfs, HandlesForests)
{
    SparsityPattern p = make_pattern(5, {{1, 2}, {3, 5}, {4, 5}});
    TreeOrdering t = accept(p);
    EXPECT_EQ(t.etree.roots().size(), 2u);
    EXPECT_EQ(verify_ordering(p, t.ordering), OrderingClass::TriviallyPerfectPEO);
    EXPECT_TRUE(is_postordering(t.etree, t.ordering));
}

TEST(Lbfs, AcceptedPatternsSatisfyOrderingProperties)
{
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        RandomPattern r = random_homogeneous_pattern(1 + static_cast<int>(seed % 40), seed, 0.8);
        TreeOrdering t = accept(r.pattern);
        EXPECT_EQ(verify_ordering(r.pattern, t.ordering), OrderingClass::TriviallyPerfectPEO);
        EXPECT_TRUE(is_postordering(t.etree, t.ordering));
        EXPECT_EQ(build_etree(r.pattern, t.ordering), t.etree);
        for (int u = 0; u < r.pattern.size(); ++u) {
            for (int v = u + 1; v < r.pattern.size(); ++v) {
                bool related = is_ancestor(t.etree, u, v) || is_ancestor(t.etree, v, u);
                EXPECT_EQ(r.pattern.has_edge(u, v), related);
            }
        }
    }
}

TEST(Lbfs, RecognitionMatchesForbiddenSubgraphScan)
{
    Rng rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        int n = 2 + rng.index(11);
        SparsityPattern p = random_graph(n, rng.uniform(0.1, 0.9), rng);
        bool accepted = std::holds_alternative<TreeOrdering>(lbfs_order(p));
        EXPECT_EQ(accepted, !densecheck::find_forbidden_subgraph(p).has_value());
    }
}

TEST(Lbfs, Deterministic)
{
    SparsityPattern p = twelve();
    EXPECT_EQ(accept(p).ordering, accept(p).ordering);
}

TEST(VerifyOrdering, VinbergOrderings)
{
    SparsityPattern p = vinberg();
    EXPECT_EQ(verify_ordering(p, Ordering({0, 1, 2})), OrderingClass::TriviallyPerfectPEO);
    EXPECT_EQ(verify_ordering(p, Ordering({0, 2, 1})), OrderingClass::PEO);
}

TEST(VerifyOrdering, CycleHasNoPerfectEliminationOrdering)
{
    std::vector<int> sigma{0, 1, 2, 3};
    do {
        EXPECT_EQ(verify_ordering(cycle4(), Ordering(sigma)), OrderingClass::NotPEO);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
}

TEST(VerifyOrdering, SizeMismatchThrows)
{
    EXPECT_THROW(verify_ordering(vinberg(), Ordering::natural(4)), InputError);
}

TEST(BuildEtree, Examples)
{
    EliminationTree t = build_etree(vinberg(), Ordering::natural(3));
    EXPECT_EQ(one_based(t.parents()), (std::vector<int>{3, 3, 3}));

    EliminationTree d = build_etree(SparsityPattern(4, {}), Ordering({3, 1, 0, 2}));
    EXPECT_EQ(d.roots().size(), 4u);

    TreeOrdering lb = accept(twelve());
    EXPECT_EQ(build_etree(twelve(), lb.ordering), lb.etree);
}

TEST(BuildEtree, ChildrenInvertParents)
{
    RandomPattern r = random_homogeneous_pattern(60, 3);
    for (int v = 0; v < 60; ++v) {
        for (int c : r.etree.children(v)) {
            EXPECT_EQ(r.etree.parent(c), v);
            EXPECT_GT(r.ordering.position(v), r.ordering.position(c));
        }
    }
}

TEST(Supernodes, RelabeledTwelveVertexExample)
{
    EliminationTree t({3, 2, 3, 4, 11, 10, 7, 10, 9, 10, 11, 11});
    SparsityPattern p = comparability_graph(t);
    Ordering nat = Ordering::natural(12);
    ASSERT_EQ(verify_ordering(p, nat), OrderingClass::TriviallyPerfectPEO);
    ASSERT_TRUE(is_postordering(t, nat));
    SupernodePartition sn = supernode_partition(p, nat, t);
    EXPECT_EQ(one_based(sn.representatives), (std::vector<int>{1, 2, 4, 6, 7, 9, 11, 12}));
    std::vector<std::vector<int>> members;
    for (const auto& m : sn.members) {
        members.push_back(one_based(m));
    }
    EXPECT_EQ(members, (std::vector<std::vector<int>>{{1}, {2, 3}, {4, 5}, {6}, {7, 8}, {9, 10}, {11}, {12}}));
    for (std::size_t s = 0; s < sn.members.size(); ++s) {
        for (int a : sn.members[s]) {
            EXPECT_EQ(sn.member_of[a], static_cast<int>(s));
            for (int b : sn.members[s]) {
                EXPECT_TRUE(a == b || p.has_edge(a, b));
            }
        }
    }
    EXPECT_EQ(sn.snode_parent[sn.member_of[4]], sn.member_of[11]);
}

TEST(Supernodes, DiagonalAndDense)
{
    SparsityPattern diag(3, {});
    SupernodePartition a = supernode_partition(diag, Ordering::natural(3), build_etree(diag, Ordering::natural(3)));
    EXPECT_EQ(a.members.size(), 3u);

    SparsityPattern dense = SparsityPattern::dense(4);
    SupernodePartition b = supernode_partition(dense, Ordering::natural(4), build_etree(dense, Ordering::natural(4)));
    ASSERT_EQ(b.members.size(), 1u);
    EXPECT_EQ(b.members[0], (std::vector<int>{0, 1, 2, 3}));
}

TEST(Supernodes, RejectsNonTriviallyPerfectOrdering)
{
    Ordering o({0, 2, 1});
    EXPECT_THROW(supernode_partition(vinberg(), o, build_etree(vinberg(), o)), PreconditionError);
}

TEST(ChordalOrdering, DetectsChordality)
{
    auto peo = chordal_ordering(chordal9());
    ASSERT_TRUE(peo.has_value());
    EXPECT_NE(verify_ordering(chordal9(), *peo), OrderingClass::NotPEO);
    EXPECT_FALSE(chordal_ordering(cycle4()).has_value());
}

TEST(Extension, AlreadyHomogeneousIsUnchanged)
{
    Extension e = homogeneous_extension(vinberg());
    EXPECT_EQ(e.extended, vinberg());
    EXPECT_EQ(verify_ordering(e.extended, e.ordering), OrderingClass::TriviallyPerfectPEO);
}

TEST(Extension, TridiagonalUnderNaturalOrderBecomesDense)
{
    Extension e = homogeneous_extension(path4(), Ordering::natural(4));
    EXPECT_EQ(e.extended, SparsityPattern::dense(4));
    EXPECT_EQ(verify_ordering(e.extended, e.ordering), OrderingClass::TriviallyPerfectPEO);
}

TEST(Extension, CycleGetsFillAndIsAccepted)
{
    Extension e = homogeneous_extension(cycle4());
    EXPECT_GT(e.extended.num_edges(), cycle4().num_edges());
    EXPECT_TRUE(std::holds_alternative<TreeOrdering>(lbfs_order(e.extended)));
}

TEST(Extension, RandomGraphsAreSupersetsAndAccepted)
{
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        SparsityPattern p = random_graph(3 + rng.index(30), 0.15, rng);
        Extension e = homogeneous_extension(p);
        for (auto [u, v] : p.edges()) {
            EXPECT_TRUE(e.extended.has_edge(u, v));
        }
        EXPECT_EQ(verify_ordering(e.extended, e.ordering), OrderingClass::TriviallyPerfectPEO);
        EXPECT_TRUE(is_postordering(e.etree, e.ordering));
        EXPECT_TRUE(std::holds_alternative<TreeOrdering>(lbfs_order(e.extended)));
    }
}

TEST(RandomPattern, Basics)
{
    EXPECT_EQ(random_homogeneous_pattern(1, 5).pattern.num_edges(), 0u);
    RandomPattern a = random_homogeneous_pattern(80, 42);
    RandomPattern b = random_homogeneous_pattern(80, 42);
    EXPECT_EQ(a.pattern, b.pattern);
    EXPECT_EQ(a.ordering, b.ordering);
    EXPECT_EQ(verify_ordering(a.pattern, a.ordering), OrderingClass::TriviallyPerfectPEO);
    EXPECT_TRUE(is_postordering(a.etree, a.ordering));
    EXPECT_EQ(comparability_graph(a.etree), a.pattern);
}
