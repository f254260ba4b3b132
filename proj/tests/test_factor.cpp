#include <gtest/gtest.h>

#include <cmath>

#include "homcone/error.hpp"
#include "homcone/factor.hpp"
#include "test_util.hpp"

using namespace homcone;
using namespace homcone::testutil;
using densecheck::Dense;

namespace {

StructurePtr vinberg_structure() { return SymbolicStructure::create(vinberg(), Ordering::natural(3)); }

SymSparse vinberg_x(const StructurePtr& s)
{
    std::vector<Triplet> t{{0, 0, 2}, {1, 1, 3}, {2, 2, 2}, {2, 0, 1}, {2, 1, 1}};
    return from_triplets(s, t);
}

// Dense position-indexed copy of a symmetric argument.
Dense pos(const SymSparse& x) { return densecheck::to_positions(densecheck::from_sparse(x), x.structure()->ordering()); }

// Vertex-indexed projection of a position-indexed dense matrix.
Dense proj(const Dense& p, const StructurePtr& s)
{
    return densecheck::project(densecheck::to_vertices(p, s->ordering()), s->pattern());
}

double rel(const SymSparse& got, const Dense& want) { return rel_diff(densecheck::from_sparse(got), want); }

}  // namespace

TEST(Cholesky, IdentityAndVinberg)
{
    StructurePtr s = vinberg_structure();
    EXPECT_EQ(to_dense(cholesky(SymSparse::identity(s)).L), Eigen::MatrixXd::Identity(3, 3));

    CholFactor f = cholesky(vinberg_x(s));
    EXPECT_NEAR(f.L.at(0, 0), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(f.L.at(1, 1), std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(f.L.at(2, 0), 1 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(f.L.at(2, 1), 1 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(f.L.at(2, 2), std::sqrt(7.0 / 6.0), 1e-15);
}

TEST(Cholesky, ReportsFailingNode)
{
    StructurePtr s = vinberg_structure();
    SymSparse x = SymSparse::identity(s);
    x.set(0, 0, -1.0);
    try {
        cholesky(x);
        FAIL();
    } catch (const NotPositiveDefinite& e) {
        EXPECT_EQ(e.vertex(), 0);
    }
}

TEST(Cholesky, MatchesDenseOracle)
{
    Rng rng(10);
    for (int trial = 0; trial < 50; ++trial) {
        StructurePtr s = random_structure(1 + rng.index(50), 1000 + trial);
        SymSparse x = random_primal(s, rng);
        CholFactor f = cholesky(x);
        EXPECT_LT(rel_diff(densecheck::from_sparse(f.L), densecheck::dense_chol(pos(x))), 1e-10);
        EXPECT_NEAR(barrier(f), -densecheck::dense_logdet(pos(x)), 1e-10 * s->size());
    }
}

TEST(Cholesky, WorkspaceReuseIsBitIdentical)
{
    Rng rng(11);
    StructurePtr s = random_structure(40, 77);
    FrontalWorkspace ws(*s);
    SymSparse x = random_primal(s, rng);
    CholFactor a = cholesky(x, ws);
    CholFactor b = cholesky(x, ws);
    CholFactor c = cholesky(x);
    EXPECT_TRUE(std::equal(a.L.values().begin(), a.L.values().end(), b.L.values().begin()));
    EXPECT_TRUE(std::equal(a.L.values().begin(), a.L.values().end(), c.L.values().begin()));
}

TEST(Maps, IdentityFactorIsIdentityMap)
{
    Rng rng(12);
    StructurePtr s = random_structure(20, 5);
    LowerSparse id = LowerSparse::identity(s);
    SymSparse x = random_sym(s, rng);
    EXPECT_LT(rel(forward_map(id, x), densecheck::from_sparse(x)), 1e-15);
    EXPECT_LT(rel(adjoint_map(id, x), densecheck::from_sparse(x)), 1e-15);
    EXPECT_LT(rel(inverse_forward_map(id, x), densecheck::from_sparse(x)), 1e-15);
    EXPECT_LT(rel(inverse_adjoint_map(id, x), densecheck::from_sparse(x)), 1e-15);
}

TEST(Maps, MatchDenseOracles)
{
    Rng rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        StructurePtr s = random_structure(1 + rng.index(50), 2000 + trial);
        LowerSparse l = random_lower(s, rng);
        SymSparse x = random_sym(s, rng);
        Dense dl = densecheck::from_sparse(l);
        Dense dlt = densecheck::transpose(dl);
        Dense li = densecheck::dense_inverse(dl);
        Dense lit = densecheck::transpose(li);
        Dense dx = pos(x);

        Dense fwd = densecheck::to_vertices(dl * dx * dlt, s->ordering());
        EXPECT_TRUE(densecheck::inside_pattern(fwd, s->pattern(), 1e-12 * std::max(1.0, fwd.max_abs())));
        EXPECT_LT(rel(forward_map(l, x), fwd), 1e-10);
        EXPECT_LT(rel(adjoint_map(l, x), proj(dlt * dx * dl, s)), 1e-10);
        Dense ifwd = densecheck::to_vertices(li * dx * lit, s->ordering());
        EXPECT_TRUE(densecheck::inside_pattern(ifwd, s->pattern(), 1e-10 * std::max(1.0, ifwd.max_abs())));
        EXPECT_LT(rel(inverse_forward_map(l, x), ifwd), 1e-10);
        EXPECT_LT(rel(inverse_adjoint_map(l, x), proj(lit * dx * li, s)), 1e-10);
    }
}

TEST(Maps, InversePairsAndAdjointness)
{
    Rng rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        StructurePtr s = random_structure(2 + rng.index(40), 3000 + trial);
        LowerSparse l = random_lower(s, rng);
        SymSparse x = random_sym(s, rng);
        SymSparse y = random_sym(s, rng);
        SymSparse a = inverse_forward_map(l, forward_map(l, x)) - x;
        SymSparse b = inverse_adjoint_map(l, adjoint_map(l, x)) - x;
        EXPECT_LT(norm(a), 1e-11 * norm(x));
        EXPECT_LT(norm(b), 1e-11 * norm(x));
        double lhs = inner(adjoint_map(l, y), x);
        double rhs = inner(y, forward_map(l, x));
        EXPECT_NEAR(lhs, rhs, 1e-12 * norm(x) * norm(y) * std::max(1.0, norm(forward_map(l, SymSparse::identity(s)))));
    }
}

TEST(Maps, ForwardOfIdentityIsProduct)
{
    Rng rng(15);
    StructurePtr s = random_structure(25, 9);
    LowerSparse l = random_lower(s, rng);
    Dense dl = densecheck::from_sparse(l);
    EXPECT_LT(rel(forward_map(l, SymSparse::identity(s)),
                  densecheck::to_vertices(dl * densecheck::transpose(dl), s->ordering())),
              1e-13);
}

TEST(ProjectedInverse, Vinberg)
{
    StructurePtr s = vinberg_structure();
    SymSparse x = vinberg_x(s);
    CholFactor f = cholesky(x);
    SymSparse p = projected_inverse(f);
    EXPECT_NEAR(p(0, 0), 5.0 / 7, 1e-14);
    EXPECT_NEAR(p(1, 1), 3.0 / 7, 1e-14);
    EXPECT_NEAR(p(2, 2), 6.0 / 7, 1e-14);
    EXPECT_NEAR(p(2, 0), -3.0 / 7, 1e-14);
    EXPECT_NEAR(p(2, 1), -2.0 / 7, 1e-14);
    EXPECT_NEAR(inner(p, x), 3.0, 1e-14);
    EXPECT_NEAR(barrier(f), -std::log(7.0), 1e-14);
    EXPECT_LT(rel(projected_inverse(cholesky(SymSparse::identity(s))), Dense::identity(3)), 1e-15);
}

TEST(ProjectedInverse, MatchesDenseOracle)
{
    Rng rng(16);
    for (int trial = 0; trial < 50; ++trial) {
        StructurePtr s = random_structure(1 + rng.index(50), 4000 + trial);
        SymSparse x = random_primal(s, rng);
        SymSparse p = projected_inverse(cholesky(x));
        EXPECT_LT(rel(p, proj(densecheck::dense_inverse(pos(x)), s)), 1e-10);
        EXPECT_NEAR(inner(p, x), s->size(), 1e-12 * s->size());
    }
}

TEST(MaxDet, IdentityAndVinberg)
{
    StructurePtr s = vinberg_structure();
    EXPECT_EQ(to_dense(maxdet_factor(SymSparse::identity(s)).L), Eigen::MatrixXd::Identity(3, 3));
    EXPECT_DOUBLE_EQ(dual_barrier(SymSparse::identity(s)), -3.0);
    EXPECT_LT(rel(dual_gradient(maxdet_factor(SymSparse::identity(s))), Dense::identity(3)), 1e-15);

    SymSparse sv = SymSparse::identity(s);
    sv.set(2, 0, 0.5);
    sv.set(2, 1, 0.5);
    CholFactor f = maxdet_factor(sv);
    Dense li = densecheck::dense_inverse(densecheck::from_sparse(f.L));
    Dense y = densecheck::transpose(li) * li;
    EXPECT_NEAR(y(1, 0), 0.25, 1e-14);
    Dense oracle = densecheck::dense_maxdet_completion(sv);
    EXPECT_NEAR(oracle(1, 0), 0.25, 1e-10);
}

TEST(MaxDet, NotCompletableAgreesWithBlockEigenvalues)
{
    StructurePtr s = vinberg_structure();
    std::vector<Triplet> t{{0, 0, 1}, {1, 1, 1}, {2, 2, 0.1}, {2, 0, 0.5}, {2, 1, 0.5}};
    SymSparse sv = from_triplets(s, t);
    Dense block(2);
    block(0, 0) = 1;
    block(1, 1) = 0.1;
    block(0, 1) = block(1, 0) = 0.5;
    ASSERT_LT(densecheck::min_eigenvalue(block), 0.0);
    EXPECT_THROW(maxdet_factor(sv), NotCompletable);
}

TEST(MaxDet, MatchesNewtonOracle)
{
    Rng rng(17);
    for (int trial = 0; trial < 25; ++trial) {
        StructurePtr s = random_structure(1 + rng.index(20), 5000 + trial);
        SymSparse sd = random_dual(s, rng);
        CholFactor f = maxdet_factor(sd);
        Dense li = densecheck::dense_inverse(densecheck::from_sparse(f.L));
        Dense y = densecheck::to_vertices(densecheck::transpose(li) * li, s->ordering());
        EXPECT_LT(rel(sd, densecheck::project(y, s->pattern())), 1e-10);
        EXPECT_LT(rel_diff(y, densecheck::dense_maxdet_completion(sd)), 1e-8);
        Dense xhat = densecheck::from_sparse(dual_gradient(f));
        EXPECT_LT(rel_diff(densecheck::project(densecheck::dense_inverse(xhat), s->pattern()),
                           densecheck::from_sparse(sd)),
                  1e-9);
        EXPECT_NEAR(dual_barrier(sd), -densecheck::dense_logdet(y) - s->size(), 1e-10 * s->size());
    }
}

TEST(MaxDet, PrimalConeIsInsideDualCone)
{
    Rng rng(18);
    for (int trial = 0; trial < 30; ++trial) {
        StructurePtr s = random_structure(1 + rng.index(40), 6000 + trial);
        SymSparse x = random_primal(s, rng);
        EXPECT_NO_THROW(maxdet_factor(x));
    }
}

TEST(Hessian, MatchesDenseOracleAndInverts)
{
    Rng rng(19);
    for (int trial = 0; trial < 40; ++trial) {
        StructurePtr s = random_structure(1 + rng.index(50), 7000 + trial);
        SymSparse x = random_primal(s, rng);
        SymSparse y = random_sym(s, rng);
        SymSparse z = random_sym(s, rng);
        CholFactor f = cholesky(x);
        Dense xi = densecheck::dense_inverse(pos(x));
        SymSparse h = hess_apply(f, y);
        EXPECT_LT(rel(h, proj(xi * pos(y) * xi, s)), 1e-10);
        EXPECT_LT(norm(inv_hess_apply(f, h) - y), 1e-10 * norm(y));
        double a = inner(h, z);
        double b = inner(y, hess_apply(f, z));
        EXPECT_NEAR(a, b, 1e-12 * norm(h) * norm(z));
    }
}

TEST(Hessian, IdentityAtIdentity)
{
    Rng rng(20);
    StructurePtr s = random_structure(15, 3);
    SymSparse y = random_sym(s, rng);
    EXPECT_LT(norm(hess_apply(cholesky(SymSparse::identity(s)), y) - y), 1e-15 * norm(y));
}

TEST(Hessian, FiniteDifferenceOfGradient)
{
    Rng rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        StructurePtr s = random_structure(2 + rng.index(30), 8000 + trial);
        SymSparse x = random_primal(s, rng);
        SymSparse y = random_sym(s, rng);
        const double h = 1e-5;
        SymSparse gp = projected_inverse(cholesky(x + h * y));
        SymSparse gm = projected_inverse(cholesky(x - h * y));
        SymSparse fd = (1.0 / (2 * h)) * (gm - gp);
        SymSparse hy = hess_apply(cholesky(x), y);
        EXPECT_LT(norm(fd - hy), 1e-5 * norm(hy));
    }
}

TEST(BarrierCalculus, CompositionAndConjugacy)
{
    Rng rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        StructurePtr s = random_structure(1 + rng.index(40), 9000 + trial);
        SymSparse x = random_primal(s, rng);
        SymSparse sd = random_dual(s, rng);
        LowerSparse l = random_lower(s, rng);
        const int n = s->size();

        // F'(L(X)) = L^{-*}(F'(X))
        SymSparse lhs = projected_inverse(cholesky(forward_map(l, x)));
        SymSparse rhs = inverse_adjoint_map(l, projected_inverse(cholesky(x)));
        EXPECT_LT(norm(lhs - rhs), 1e-10 * norm(rhs));

        // F*'(L^*(S)) = L^{-1}(F*'(S))
        SymSparse dl = dual_gradient(maxdet_factor(adjoint_map(l, sd)));
        SymSparse dr = inverse_forward_map(l, dual_gradient(maxdet_factor(sd)));
        EXPECT_LT(norm(dl - dr), 1e-10 * norm(dr));

        // F(L(X)) = F(X) + F(L L^T)
        double fl = barrier(cholesky(forward_map(l, x)));
        double sum = barrier(cholesky(x)) + barrier(cholesky(forward_map(l, SymSparse::identity(s))));
        EXPECT_NEAR(fl, sum, 1e-10 * std::max(1.0, std::abs(sum)));

        // F(X) + F*(Pi(X^{-1})) = -N
        CholFactor f = cholesky(x);
        EXPECT_NEAR(barrier(f) + dual_barrier(projected_inverse(f)), -n, 1e-10 * n);
    }
}
