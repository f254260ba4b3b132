#pragma once

#include <vector>

#include "homcone/matrix.hpp"

namespace homcone {

// L with positive diagonal such that X = L L^T in position coordinates.
struct CholFactor {
    LowerSparse L;

    const StructurePtr& structure() const noexcept { return L.structure(); }
};

// Dense frontal matrix plus the update-matrix stack used by the topological
// recursions.  Sized from the structure's symbolic footprint; reusable across calls on
// the same structure but not shareable between threads.
class FrontalWorkspace {
public:
    explicit FrontalWorkspace(const SymbolicStructure& s);

    void reset() { top_ = 0; }

    // Dense d x d column-major frontal block.
    double* frontal() { return frontal_.data(); }
    double* vec(int which) { return vectors_.data() + which * stride_; }

    // Pops `count` d x d update matrices and adds their sum into the frontal block.
    void pop_into_frontal(int count, int d);
    // Pushes the trailing (d-1) x (d-1) block of the frontal matrix.
    void push_trailing(int d);

private:
    std::vector<double> stack_;
    std::vector<double> frontal_;
    std::vector<double> vectors_;
    std::size_t top_ = 0;
    std::size_t stride_ = 0;
};

// Zero-fill multifrontal Cholesky.  Throws NotPositiveDefinite(node) when the pivot
// F11 <= 1e-13 (1 + |X_ii|); success certifies X in int K.
CholFactor cholesky(const SymSparse& x);
CholFactor cholesky(const SymSparse& x, FrontalWorkspace& ws);

// Y = L X L^T
SymSparse forward_map(const LowerSparse& l, const SymSparse& x);
SymSparse forward_map(const LowerSparse& l, const SymSparse& x, FrontalWorkspace& ws);
// Y = Pi_E(L^T S L)
SymSparse adjoint_map(const LowerSparse& l, const SymSparse& s);
// Y = L^{-1} X L^{-T}
SymSparse inverse_forward_map(const LowerSparse& l, const SymSparse& x);
SymSparse inverse_forward_map(const LowerSparse& l, const SymSparse& x, FrontalWorkspace& ws);
// Y = Pi_E(L^{-T} S L^{-1})
SymSparse inverse_adjoint_map(const LowerSparse& l, const SymSparse& s);

// Pi_E(X^{-1}) = -F'(X).
SymSparse projected_inverse(const CholFactor& f);

// L with Pi_E(L^{-T} L^{-1}) = S.  Throws NotCompletable(node) when S_ii - u^T u <=
// 1e-13 (1 + |S_ii|); success certifies S in int K*.
CholFactor maxdet_factor(const SymSparse& s);

// F(X) = -log det X.
double barrier(const CholFactor& f);
// F*(S) = -F(X_hat) - N with X_hat the inverse of the max-det completion of S.
double dual_barrier(const SymSparse& s);
double dual_barrier(const CholFactor& maxdet);

// X_hat = L L^T = -F*'(S) for L = maxdet_factor(S).
SymSparse dual_gradient(const CholFactor& maxdet);

// F''(X)[Y] = Pi_E(X^{-1} Y X^{-1}) and its inverse.
SymSparse hess_apply(const CholFactor& f, const SymSparse& y);
SymSparse inv_hess_apply(const CholFactor& f, const SymSparse& y);

}  // namespace homcone
