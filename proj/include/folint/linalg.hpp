#pragma once
#include <optional>
#include <vector>
#include "rational.hpp"

// exact linear algebra over Q; pivoting is deterministic (first nonzero)

namespace folint {

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

// reduced row echelon form in place; returns pivot column indices (ascending).
// greedy leftmost pivots, i.e. the lexicographically first independent column set.
inline std::vector<int> rref(QMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    int rows = (int)m.size(), cols = (int)m[0].size();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int sel = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) { sel = i; break; }
        if (sel < 0) continue;
        std::swap(m[r], m[sel]);
        Rat inv = m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] /= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rat f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline int rank(QMat m) { return (int)rref(m).size(); }

// kernel basis of m (as column vectors of length cols), RREF-normalized:
// one basis vector per free column, entry 1 at that column.
inline std::vector<QVec> kernel_basis(QMat m, int cols) {
    if (m.empty()) m.push_back(QVec(cols, 0));
    auto pivots = rref(m);
    std::vector<bool> is_pivot(cols, false);
    for (int p : pivots) is_pivot[p] = true;
    std::vector<QVec> basis;
    for (int c = 0; c < cols; ++c) {
        if (is_pivot[c]) continue;
        QVec v(cols, 0);
        v[c] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

// solve A x = b for square nonsingular A
inline std::optional<QVec> solve_square(QMat a, QVec b) {
    int n = (int)a.size();
    if (n == 0) return QVec{};
    for (int i = 0; i < n; ++i) a[i].push_back(b[i]);
    auto pivots = rref(a);
    if ((int)pivots.size() != n) return std::nullopt;
    for (int i = 0; i < n; ++i)
        if (pivots[i] != i) return std::nullopt;
    QVec x(n);
    for (int i = 0; i < n; ++i) x[i] = a[i][n];
    return x;
}

inline Rat determinant(QMat a) {
    int n = (int)a.size();
    Rat det = 1;
    for (int c = 0; c < n; ++c) {
        int sel = -1;
        for (int i = c; i < n; ++i)
            if (a[i][c] != 0) { sel = i; break; }
        if (sel < 0) return Rat(0);
        if (sel != c) { std::swap(a[sel], a[c]); det = -det; }
        det *= a[c][c];
        for (int i = c + 1; i < n; ++i) {
            if (a[i][c] == 0) continue;
            Rat f = a[i][c] / a[c][c];
            for (int j = c; j < n; ++j) a[i][j] -= f * a[c][j];
        }
    }
    return det;
}

// all leading principal minors positive (exact positive-definiteness test)
inline bool positive_definite(const QMat& g) {
    int n = (int)g.size();
    for (int k = 1; k <= n; ++k) {
        QMat sub(k, QVec(k));
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) sub[i][j] = g[i][j];
        if (determinant(sub) <= 0) return false;
    }
    return true;
}

inline Rat dot(const QVec& a, const QVec& b) {
    internal_check(a.size() == b.size(), "dot: size mismatch");
    Rat s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace folint
