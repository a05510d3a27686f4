#pragma once
// Dense linear algebra over a field handle, plus integer-matrix normal forms
// (Hermite and Smith) used for lattices and abelian group computations.

#include "ag/rings.hpp"
#include <vector>
#include <stdexcept>

namespace ag {

template <class F>
struct Mat {
    using Elt = typename F::Elt;
    int rows = 0, cols = 0;
    std::vector<Elt> a;

    Mat() = default;
    Mat(const F& K, int r, int c) : rows(r), cols(c), a((size_t)r * c, K.zero()) {}
    Elt& at(int i, int j) { return a[(size_t)i * cols + j]; }
    const Elt& at(int i, int j) const { return a[(size_t)i * cols + j]; }
};

// In-place reduced row echelon form; returns pivot columns.
template <class F>
std::vector<int> rref(const F& K, Mat<F>& m) {
    std::vector<int> pivots;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int sel = -1;
        for (int i = r; i < m.rows; ++i)
            if (!K.is_zero(m.at(i, c))) { sel = i; break; }
        if (sel < 0) continue;
        if (sel != r)
            for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
        auto piv = K.inv(m.at(r, c));
        for (int j = c; j < m.cols; ++j) m.at(r, j) = K.mul(m.at(r, j), piv);
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || K.is_zero(m.at(i, c))) continue;
            auto t = m.at(i, c);
            for (int j = c; j < m.cols; ++j)
                m.at(i, j) = K.sub(m.at(i, j), K.mul(t, m.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

template <class F>
int mat_rank(const F& K, Mat<F> m) {
    return (int)rref(K, m).size();
}

// Basis of the right kernel, one vector per row of the result.
template <class F>
std::vector<std::vector<typename F::Elt>> kernel_basis(const F& K, Mat<F> m) {
    auto pivots = rref(K, m);
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<typename F::Elt>> out;
    for (int c = 0; c < m.cols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<typename F::Elt> v(m.cols, K.zero());
        v[c] = K.one();
        for (size_t r = 0; r < pivots.size(); ++r)
            if (pivots[r] < c) v[pivots[r]] = K.neg(m.at((int)r, c));
        out.push_back(std::move(v));
    }
    return out;
}

// Solve m x = b; returns false if inconsistent. Free variables get zero.
template <class F>
bool mat_solve(const F& K, Mat<F> m, const std::vector<typename F::Elt>& b,
               std::vector<typename F::Elt>& x) {
    Mat<F> aug(K, m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
        aug.at(i, m.cols) = b[i];
    }
    auto pivots = rref(K, aug);
    for (int c : pivots)
        if (c == m.cols) return false;
    x.assign(m.cols, K.zero());
    for (size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = aug.at((int)r, m.cols);
    return true;
}

// ---- integer matrices ----

using ZMat = std::vector<std::vector<Int>>;

// Row-style Hermite normal form (non-negative pivots, entries above a pivot
// reduced mod the pivot). Returns the HNF; zero rows are dropped.
inline ZMat hnf(ZMat m) {
    if (m.empty()) return m;
    int rows = (int)m.size(), cols = (int)m[0].size();
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        // clear below row r in column c using gcd steps
        for (;;) {
            int sel = -1;
            for (int i = r; i < rows; ++i)
                if (m[i][c] != 0) {
                    if (sel < 0 || abs(m[i][c]) < abs(m[sel][c])) sel = i;
                }
            if (sel < 0) break;
            std::swap(m[sel], m[r]);
            bool again = false;
            for (int i = r + 1; i < rows; ++i) {
                if (m[i][c] == 0) continue;
                Int q = m[i][c] / m[r][c]; // truncation is fine for the loop
                for (int j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
                if (m[i][c] != 0) again = true;
            }
            if (!again) break;
        }
        if (m[r][c] == 0) continue;
        if (m[r][c] < 0)
            for (int j = 0; j < cols; ++j) m[r][j] = -m[r][j];
        for (int i = 0; i < r; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[r][c].get_mpz_t());
            if (q != 0)
                for (int j = 0; j < cols; ++j) m[i][j] -= q * m[r][j];
        }
        ++r;
    }
    m.resize(r);
    return m;
}

// Smith normal form diagonal of an integer matrix (d1 | d2 | ...).
// Small dense matrices only; uses elementary row/column reduction.
inline std::vector<Int> snf_diagonal(ZMat m) {
    std::vector<Int> diag;
    if (m.empty() || m[0].empty()) return diag;
    int rows = (int)m.size(), cols = (int)m[0].size();
    int t = 0;
    while (t < rows && t < cols) {
        // find a nonzero pivot
        int pi = -1, pj = -1;
        for (int i = t; i < rows && pi < 0; ++i)
            for (int j = t; j < cols; ++j)
                if (m[i][j] != 0) { pi = i; pj = j; break; }
        if (pi < 0) break;
        std::swap(m[pi], m[t]);
        for (int i = 0; i < rows; ++i) std::swap(m[i][pj], m[i][t]);
        for (;;) {
            bool clean = true;
            // clear column t
            for (int i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                Int q = m[i][t] / m[t][t];
                for (int j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) {
                    std::swap(m[i], m[t]);
                    clean = false;
                }
            }
            // clear row t
            for (int j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                Int q = m[t][j] / m[t][t];
                for (int i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) {
                    for (int i = 0; i < rows; ++i) std::swap(m[i][j], m[i][t]);
                    clean = false;
                }
            }
            if (!clean) continue;
            // divisibility fix-up: pivot must divide all lower-right entries
            bool fixed = true;
            for (int i = t + 1; i < rows && fixed; ++i)
                for (int j = t + 1; j < cols && fixed; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        for (int jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
                        fixed = false;
                    }
            if (fixed) break;
        }
        if (m[t][t] < 0)
            for (int j = t; j < cols; ++j) m[t][j] = -m[t][j];
        diag.push_back(m[t][t]);
        ++t;
    }
    return diag;
}

} // namespace ag
