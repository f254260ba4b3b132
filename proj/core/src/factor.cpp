#include "homcone/factor.hpp"

#include <algorithm>
#include <cmath>

#include "homcone/error.hpp"
#include "path_block.hpp"

namespace homcone {

namespace {

constexpr double pivot_eps = 1e-13;

using detail::PathBlock;

// Principal block of `m` on alpha_k (the path above k).
PathBlock above(const PackedColumns& m, int k)
{
    const auto& st = *m.structure();
    auto rows = st.column_rows(k);
    return {m.values().data(), st.colptr().data(), rows.data() + 1, static_cast<int>(rows.size()) - 1};
}

int vertex_of(const PackedColumns& m, int k) { return m.structure()->ordering().vertex(k); }

}  // namespace

FrontalWorkspace::FrontalWorkspace(const SymbolicStructure& s)
    : stack_(s.peak_update_size()),
      frontal_(static_cast<std::size_t>(s.max_depth()) * s.max_depth()),
      vectors_(4 * static_cast<std::size_t>(s.max_depth())),
      stride_(s.max_depth())
{
}

void FrontalWorkspace::pop_into_frontal(int count, int d)
{
    const std::size_t block = static_cast<std::size_t>(d) * d;
    std::fill(frontal_.begin(), frontal_.begin() + block, 0.0);
    for (int c = 0; c < count; ++c) {
        top_ -= block;
        const double* u = stack_.data() + top_;
        for (std::size_t e = 0; e < block; ++e) {
            frontal_[e] += u[e];
        }
    }
}

void FrontalWorkspace::push_trailing(int d)
{
    const int a = d - 1;
    double* out = stack_.data() + top_;
    for (int j = 0; j < a; ++j) {
        for (int i = 0; i < a; ++i) {
            out[j * a + i] = frontal_[(j + 1) * d + (i + 1)];
        }
    }
    top_ += static_cast<std::size_t>(a) * a;
}

CholFactor cholesky(const SymSparse& x)
{
    FrontalWorkspace ws(*x.structure());
    return cholesky(x, ws);
}

CholFactor cholesky(const SymSparse& x, FrontalWorkspace& ws)
{
    const auto& st = *x.structure();
    LowerSparse l(x.structure());
    ws.reset();
    for (int k : st.topological()) {
        const int d = st.depth(k);
        double* f = ws.frontal();
        ws.pop_into_frontal(static_cast<int>(st.children(k).size()), d);
        auto xk = x.column(k);
        for (int t = 0; t < d; ++t) {
            f[t] += xk[t];
        }
        if (f[0] <= pivot_eps * (1.0 + std::abs(xk[0]))) {
            throw NotPositiveDefinite(vertex_of(x, k));
        }
        auto lk = l.column(k);
        const double piv = std::sqrt(f[0]);
        lk[0] = piv;
        for (int t = 1; t < d; ++t) {
            lk[t] = f[t] / piv;
        }
        // F22 - c c^T
        for (int j = 1; j < d; ++j) {
            for (int i = j; i < d; ++i) {
                f[j * d + i] -= lk[i] * lk[j];
                f[i * d + j] = f[j * d + i];
            }
        }
        ws.push_trailing(d);
    }
    return {std::move(l)};
}

SymSparse forward_map(const LowerSparse& l, const SymSparse& x)
{
    FrontalWorkspace ws(*x.structure());
    return forward_map(l, x, ws);
}

SymSparse forward_map(const LowerSparse& l, const SymSparse& x, FrontalWorkspace& ws)
{
    require_same_structure(l.structure(), x.structure());
    const auto& st = *x.structure();
    SymSparse y(x.structure());
    ws.reset();
    for (int k : st.topological()) {
        const int d = st.depth(k);
        const int a = d - 1;
        double* f = ws.frontal();
        ws.pop_into_frontal(static_cast<int>(st.children(k).size()), d);
        auto lk = l.column(k);
        auto xk = x.column(k);
        const double piv = lk[0];
        const double* c = lk.data() + 1;
        const double xkk = xk[0];
        double* w = ws.vec(0);
        detail::lower_matvec(above(l, k), xk.data() + 1, w);

        auto yk = y.column(k);
        yk[0] = piv * piv * xkk - f[0];
        for (int t = 0; t < a; ++t) {
            yk[t + 1] = piv * (c[t] * xkk + w[t]) - f[t + 1];
        }
        // U_k = F22 - (X_kk c c^T + w c^T + c w^T)
        for (int j = 0; j < a; ++j) {
            for (int i = j; i < a; ++i) {
                double& e = f[(j + 1) * d + (i + 1)];
                e -= xkk * c[i] * c[j] + w[i] * c[j] + c[i] * w[j];
                f[(i + 1) * d + (j + 1)] = e;
            }
        }
        ws.push_trailing(d);
    }
    return y;
}

SymSparse adjoint_map(const LowerSparse& l, const SymSparse& s)
{
    require_same_structure(l.structure(), s.structure());
    const auto& st = *s.structure();
    SymSparse y(s.structure());
    std::vector<double> w(st.max_depth());
    std::vector<double> vc(st.max_depth());
    // Each node only reads S and L, so the reverse-topological order is immaterial.
    for (int k = st.size() - 1; k >= 0; --k) {
        const int a = st.depth(k) - 1;
        auto lk = l.column(k);
        auto sk = s.column(k);
        const double piv = lk[0];
        const double* c = lk.data() + 1;
        const double* sa = sk.data() + 1;
        detail::sym_matvec(above(s, k), c, vc.data());
        for (int t = 0; t < a; ++t) {
            w[t] = sa[t] * piv + vc[t];
        }
        auto yk = y.column(k);
        yk[0] = piv * (sk[0] * piv + detail::dot(sa, c, a)) + detail::dot(c, w.data(), a);
        detail::lower_t_matvec(above(l, k), w.data(), yk.data() + 1);
    }
    return y;
}

SymSparse inverse_forward_map(const LowerSparse& l, const SymSparse& x)
{
    FrontalWorkspace ws(*x.structure());
    return inverse_forward_map(l, x, ws);
}

SymSparse inverse_forward_map(const LowerSparse& l, const SymSparse& x, FrontalWorkspace& ws)
{
    require_same_structure(l.structure(), x.structure());
    l.require_nonsingular();
    const auto& st = *x.structure();
    SymSparse y(x.structure());
    ws.reset();
    for (int k : st.topological()) {
        const int d = st.depth(k);
        const int a = d - 1;
        double* g = ws.frontal();
        // The stack holds the accumulated -V_j; adding gives G = [X_kk x^T; x 0] - sum V_j.
        ws.pop_into_frontal(static_cast<int>(st.children(k).size()), d);
        auto xk = x.column(k);
        for (int t = 0; t < d; ++t) {
            g[t] += xk[t];
        }
        auto lk = l.column(k);
        const double piv = lk[0];
        const double* c = lk.data() + 1;
        const double g11 = g[0];
        const double* g21 = g + 1;

        auto yk = y.column(k);
        yk[0] = g11 / (piv * piv);
        double* w = yk.data() + 1;
        for (int t = 0; t < a; ++t) {
            w[t] = (g21[t] - c[t] * g11 / piv) / piv;
        }
        // -V_k = G22 + c c^T g11 / l^2 - (g21 c^T + c g21^T) / l
        for (int j = 0; j < a; ++j) {
            for (int i = j; i < a; ++i) {
                double& e = g[(j + 1) * d + (i + 1)];
                e += c[i] * c[j] * g11 / (piv * piv) - (g21[i] * c[j] + c[i] * g21[j]) / piv;
                g[(i + 1) * d + (j + 1)] = e;
            }
        }
        detail::lower_solve(above(l, k), w);
        ws.push_trailing(d);
    }
    return y;
}

SymSparse inverse_adjoint_map(const LowerSparse& l, const SymSparse& s)
{
    require_same_structure(l.structure(), s.structure());
    l.require_nonsingular();
    const auto& st = *s.structure();
    SymSparse y(s.structure());
    std::vector<double> w(st.max_depth());
    std::vector<double> vc(st.max_depth());
    for (int k = st.size() - 1; k >= 0; --k) {
        const int a = st.depth(k) - 1;
        auto lk = l.column(k);
        auto sk = s.column(k);
        const double piv = lk[0];
        const double* c = lk.data() + 1;
        std::copy(sk.begin() + 1, sk.end(), w.begin());
        detail::lower_t_solve(above(l, k), w.data());
        // V = Y on alpha_k, already final because ancestors come first.
        detail::sym_matvec(above(y, k), c, vc.data());
        auto yk = y.column(k);
        yk[0] = (sk[0] - 2.0 * detail::dot(w.data(), c, a) + detail::dot(c, vc.data(), a)) / (piv * piv);
        for (int t = 0; t < a; ++t) {
            yk[t + 1] = (w[t] - vc[t]) / piv;
        }
    }
    return y;
}

SymSparse projected_inverse(const CholFactor& f)
{
    const LowerSparse& l = f.L;
    l.require_nonsingular();
    const auto& st = *l.structure();
    SymSparse y(l.structure());
    std::vector<double> vc(st.max_depth());
    for (int k = st.size() - 1; k >= 0; --k) {
        const int a = st.depth(k) - 1;
        auto lk = l.column(k);
        const double piv = lk[0];
        const double* c = lk.data() + 1;
        detail::sym_matvec(above(y, k), c, vc.data());
        auto yk = y.column(k);
        for (int t = 0; t < a; ++t) {
            yk[t + 1] = -vc[t] / piv;
        }
        yk[0] = (1.0 / piv - detail::dot(c, yk.data() + 1, a)) / piv;
    }
    return y;
}

CholFactor maxdet_factor(const SymSparse& s)
{
    const auto& st = *s.structure();
    LowerSparse l(s.structure());
    std::vector<double> u(st.max_depth());
    for (int k = st.size() - 1; k >= 0; --k) {
        const int a = st.depth(k) - 1;
        auto sk = s.column(k);
        auto block = above(l, k);
        detail::lower_t_matvec(block, sk.data() + 1, u.data());
        double r = sk[0] - detail::dot(u.data(), u.data(), a);
        if (r <= pivot_eps * (1.0 + std::abs(sk[0]))) {
            throw NotCompletable(vertex_of(s, k));
        }
        auto lk = l.column(k);
        const double piv = 1.0 / std::sqrt(r);
        lk[0] = piv;
        detail::lower_matvec(block, u.data(), lk.data() + 1);
        for (int t = 1; t <= a; ++t) {
            lk[t] *= -piv;
        }
    }
    return {std::move(l)};
}

double barrier(const CholFactor& f)
{
    double acc = 0.0;
    for (int k = 0; k < f.L.size(); ++k) {
        acc += std::log(f.L.diag(k));
    }
    return -2.0 * acc;
}

double dual_barrier(const CholFactor& maxdet) { return -barrier(maxdet) - maxdet.L.size(); }

double dual_barrier(const SymSparse& s) { return dual_barrier(maxdet_factor(s)); }

SymSparse dual_gradient(const CholFactor& maxdet)
{
    const LowerSparse& l = maxdet.L;
    const auto& st = *l.structure();
    FrontalWorkspace ws(st);
    SymSparse y(l.structure());
    for (int k : st.topological()) {
        const int d = st.depth(k);
        const int a = d - 1;
        double* f = ws.frontal();
        ws.pop_into_frontal(static_cast<int>(st.children(k).size()), d);
        auto lk = l.column(k);
        const double piv = lk[0];
        const double* c = lk.data() + 1;
        auto yk = y.column(k);
        yk[0] = piv * piv - f[0];
        for (int t = 0; t < a; ++t) {
            yk[t + 1] = piv * c[t] - f[t + 1];
        }
        for (int j = 0; j < a; ++j) {
            for (int i = j; i < a; ++i) {
                double& e = f[(j + 1) * d + (i + 1)];
                e -= c[i] * c[j];
                f[(i + 1) * d + (j + 1)] = e;
            }
        }
        ws.push_trailing(d);
    }
    return y;
}

SymSparse hess_apply(const CholFactor& f, const SymSparse& y)
{
    return inverse_adjoint_map(f.L, inverse_forward_map(f.L, y));
}

SymSparse inv_hess_apply(const CholFactor& f, const SymSparse& y)
{
    return forward_map(f.L, adjoint_map(f.L, y));
}

}  // namespace homcone
