#pragma once

// Dense operations on the principal block of a packed matrix indexed by an ancestor
// path alpha = (q, p(q), ...).  Because the path is closed under taking parents, entry
// (alpha[t], alpha[r]) with t >= r sits at values[colptr[alpha[r]] + t - r].

#include <span>

namespace homcone::detail {

struct PathBlock {
    const double* values;
    const int* colptr;
    const int* alpha;
    int size;

    const double* col(int r) const { return values + colptr[alpha[r]]; }
};

// y = V x for the symmetric block V.
inline void sym_matvec(const PathBlock& v, const double* x, double* y)
{
    for (int t = 0; t < v.size; ++t) {
        y[t] = 0.0;
    }
    for (int r = 0; r < v.size; ++r) {
        const double* col = v.col(r);
        double acc = col[0] * x[r];
        for (int t = r + 1; t < v.size; ++t) {
            double e = col[t - r];
            acc += e * x[t];
            y[t] += e * x[r];
        }
        y[r] += acc;
    }
}

// y = L x for the lower-triangular block L.
inline void lower_matvec(const PathBlock& l, const double* x, double* y)
{
    for (int t = 0; t < l.size; ++t) {
        y[t] = 0.0;
    }
    for (int r = 0; r < l.size; ++r) {
        const double* col = l.col(r);
        for (int t = r; t < l.size; ++t) {
            y[t] += col[t - r] * x[r];
        }
    }
}

// y = L^T x.
inline void lower_t_matvec(const PathBlock& l, const double* x, double* y)
{
    for (int r = 0; r < l.size; ++r) {
        const double* col = l.col(r);
        double acc = 0.0;
        for (int t = r; t < l.size; ++t) {
            acc += col[t - r] * x[t];
        }
        y[r] = acc;
    }
}

// x <- L^{-1} x.
inline void lower_solve(const PathBlock& l, double* x)
{
    for (int r = 0; r < l.size; ++r) {
        const double* col = l.col(r);
        x[r] /= col[0];
        for (int t = r + 1; t < l.size; ++t) {
            x[t] -= col[t - r] * x[r];
        }
    }
}

// x <- L^{-T} x.
inline void lower_t_solve(const PathBlock& l, double* x)
{
    for (int r = l.size - 1; r >= 0; --r) {
        const double* col = l.col(r);
        double acc = x[r];
        for (int t = r + 1; t < l.size; ++t) {
            acc -= col[t - r] * x[t];
        }
        x[r] = acc / col[0];
    }
}

inline double dot(const double* a, const double* b, int n)
{
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        acc += a[i] * b[i];
    }
    return acc;
}

}  // namespace homcone::detail
