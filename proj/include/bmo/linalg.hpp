#pragma once

#include "arith.hpp"

#include <algorithm>
#include <vector>

namespace bmo {

using IntMat = std::vector<std::vector<BigInt>>;

inline IntMat zero_mat(std::size_t r, std::size_t c) { return IntMat(r, std::vector<BigInt>(c, 0)); }

inline IntMat identity_mat(std::size_t n) {
    IntMat m = zero_mat(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline std::size_t ncols(const IntMat& m) { return m.empty() ? 0 : m[0].size(); }

inline IntMat mat_mul(const IntMat& a, const IntMat& b) {
    std::size_t n = a.size(), k = b.size(), m = ncols(b);
    IntMat c = zero_mat(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

inline IntMat transpose(const IntMat& a) {
    IntMat t = zero_mat(ncols(a), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < ncols(a); ++j) t[j][i] = a[i][j];
    return t;
}

/// Bareiss fraction-free elimination; returns the rank.
inline int rank(IntMat a) {
    std::size_t rows = a.size(), cols = ncols(a);
    BigInt prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

inline BigInt det(IntMat a) {
    std::size_t n = a.size();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(a[piv], a[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

inline void ext_gcd(const BigInt& a, const BigInt& b, BigInt& g, BigInt& x, BigInt& y) {
    BigInt old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    g = old_r;
    x = old_s;
    y = old_t;
}

/// Column echelon form A*W = [E | 0] with W unimodular; winv = W^{-1}.
struct ColumnEchelon {
    IntMat e;     // A*W
    IntMat w;     // n x n
    IntMat winv;  // n x n
    std::size_t rank = 0;
};

inline ColumnEchelon column_echelon(const IntMat& a, std::size_t n_cols) {
    ColumnEchelon ce;
    ce.e = a;
    std::size_t n = n_cols;
    ce.w = identity_mat(n);
    ce.winv = identity_mat(n);
    std::size_t r = 0;
    for (std::size_t i = 0; i < a.size() && r < n; ++i) {
        auto& E = ce.e;
        for (std::size_t j = r + 1; j < n; ++j) {
            if (E[i][j] == 0) continue;
            if (E[i][r] == 0) {
                for (auto& row : E) std::swap(row[r], row[j]);
                for (auto& row : ce.w) std::swap(row[r], row[j]);
                std::swap(ce.winv[r], ce.winv[j]);
                continue;
            }
            BigInt av = E[i][r], bv = E[i][j], g, x, y;
            ext_gcd(av, bv, g, x, y);
            BigInt ag = av / g, bg = bv / g;
            auto colop = [&](IntMat& M) {
                for (auto& row : M) {
                    BigInt cr = row[r], cj = row[j];
                    row[r] = x * cr + y * cj;
                    row[j] = -bg * cr + ag * cj;
                }
            };
            colop(E);
            colop(ce.w);
            // inverse acts on rows r, j
            for (std::size_t k = 0; k < n; ++k) {
                BigInt rr = ce.winv[r][k], rj = ce.winv[j][k];
                ce.winv[r][k] = ag * rr + bg * rj;
                ce.winv[j][k] = -y * rr + x * rj;
            }
        }
        if (E[i][r] != 0) ++r;
    }
    ce.rank = r;
    return ce;
}

/// Z-basis of {x in Z^n : A x = 0}, as columns.
inline IntMat integer_kernel(const IntMat& a, std::size_t n) {
    auto ce = column_echelon(a, n);
    IntMat k = zero_mat(n, n - ce.rank);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = ce.rank; j < n; ++j) k[i][j - ce.rank] = ce.w[i][j];
    return k;
}

/// Z-basis (columns) of the lattice spanned by the columns of g.
inline IntMat lattice_basis(const IntMat& g) {
    std::size_t n = ncols(g);
    auto ce = column_echelon(g, n);
    IntMat b = zero_mat(g.size(), ce.rank);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < ce.rank; ++j) b[i][j] = ce.e[i][j];
    return b;
}

/// Diagonal of the Smith normal form (nonzero entries, ascending divisibility).
inline std::vector<BigInt> smith_diagonal(IntMat a) {
    std::size_t rows = a.size(), cols = ncols(a);
    std::vector<BigInt> d;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // pivot: smallest nonzero absolute value
        std::size_t pi = rows, pj = cols;
        BigInt best = -1;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (a[i][j] != 0) {
                    BigInt v = a[i][j] < 0 ? BigInt(-a[i][j]) : a[i][j];
                    if (best < 0 || v < best) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
        if (pi == rows) break;
        std::swap(a[t], a[pi]);
        for (auto& row : a) std::swap(row[t], row[pj]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a[i][t] == 0) continue;
                BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) {
                    std::swap(a[t], a[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a[t][j] == 0) continue;
                BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) {
                    for (auto& row : a) std::swap(row[t], row[j]);
                    clean = false;
                }
            }
            if (clean) {
                // divisibility of the remaining block
                for (std::size_t i = t + 1; i < rows && clean; ++i)
                    for (std::size_t j = t + 1; j < cols && clean; ++j)
                        if (a[i][j] % a[t][t] != 0) {
                            for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
                            clean = false;
                        }
            }
        }
        d.push_back(a[t][t] < 0 ? BigInt(-a[t][t]) : a[t][t]);
        ++t;
    }
    return d;
}

/// Inverse over Q of a square integer matrix, returned as (adjugate-like
/// integer matrix, common denominator).  Throws if singular.
inline std::pair<IntMat, BigInt> rational_inverse(const IntMat& a) {
    std::size_t n = a.size();
    std::vector<std::vector<Rational>> m(n, std::vector<Rational>(2 * n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m[i][j] = Rational(a[i][j]);
        m[i][n + i] = 1;
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) throw std::domain_error("singular matrix");
        std::swap(m[p], m[c]);
        Rational inv = Rational(1) / m[c][c];
        for (auto& x : m[c]) x *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || m[i][c].is_zero()) continue;
            Rational f = m[i][c];
            for (std::size_t j = 0; j < 2 * n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    BigInt l = 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) l = l / big_gcd(l, m[i][n + j].den()) * m[i][n + j].den();
    IntMat out = zero_mat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out[i][j] = (m[i][n + j] * Rational(l)).num();
    return {out, l};
}

}  // namespace bmo
