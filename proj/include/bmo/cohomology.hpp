#pragma once

#include "linalg.hpp"

#include <array>
#include <bitset>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace bmo {

using Perm = std::vector<std::uint8_t>;

inline Perm perm_mul(const Perm& a, const Perm& b) {  // (a*b)(i) = a(b(i))
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
}

inline Perm perm_inv(const Perm& a) {
    Perm c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<std::uint8_t>(i);
    return c;
}

inline std::string perm_str(const Perm& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i] + 1);
    return s + "]";
}

/// Parse "[a1,...,an]" (1-based images), several separated by ';'.
inline std::vector<Perm> parse_perm_list(const std::string& text) {
    std::vector<Perm> out;
    Perm cur;
    std::string num;
    bool open = false;
    for (char ch : text) {
        if (ch == '[') {
            open = true;
            cur.clear();
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            num += ch;
        } else if (ch == ',' || ch == ']' || std::isspace(static_cast<unsigned char>(ch))) {
            if (!num.empty()) {
                int v = std::stoi(num);
                if (v < 1 || v > 255) throw std::invalid_argument("permutation entry out of range");
                cur.push_back(static_cast<std::uint8_t>(v - 1));
                num.clear();
            }
            if (ch == ']') {
                if (!open) throw std::invalid_argument("unbalanced bracket in permutation list");
                open = false;
                std::vector<bool> seen(cur.size(), false);
                for (auto v : cur) {
                    if (v >= cur.size() || seen[v]) throw std::invalid_argument("not a permutation: " + perm_str(cur));
                    seen[v] = true;
                }
                out.push_back(cur);
            }
        } else if (ch != ';') {
            throw std::invalid_argument(std::string("unexpected character in permutation list: ") + ch);
        }
    }
    if (open) throw std::invalid_argument("unbalanced bracket in permutation list");
    return out;
}

// ---------------------------------------------------------------- lines

/// Classes in Pic of the blow-up of P^2 in five points, basis H, E1..E5.
inline std::vector<std::array<int, 6>> line_classes() {
    std::vector<std::array<int, 6>> l;
    for (int i = 1; i <= 5; ++i) {
        std::array<int, 6> c{};
        c[i] = 1;
        l.push_back(c);
    }
    for (int i = 1; i <= 5; ++i)
        for (int j = i + 1; j <= 5; ++j) {
            std::array<int, 6> c{};
            c[0] = 1;
            c[i] = -1;
            c[j] = -1;
            l.push_back(c);
        }
    l.push_back({2, -1, -1, -1, -1, -1});
    return l;
}

inline int pic_dot(const std::array<int, 6>& a, const std::array<int, 6>& b) {
    int s = a[0] * b[0];
    for (int i = 1; i < 6; ++i) s -= a[i] * b[i];
    return s;
}

using SymMat = std::vector<std::vector<int>>;

inline SymMat build_line_graph() {
    auto l = line_classes();
    SymMat m(16, std::vector<int>(16));
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j) m[i][j] = pic_dot(l[i], l[j]);
    return m;
}

/// All permutations p with m[p(i)][p(j)] == m[i][j], by backtracking.
inline std::vector<Perm> automorphisms(const SymMat& m) {
    std::size_t n = m.size();
    for (auto& row : m)
        if (row.size() != n) throw std::invalid_argument("matrix is not square");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (m[i][j] != m[j][i]) throw std::invalid_argument("matrix is not symmetric");
    std::vector<Perm> out;
    Perm img(n);
    std::vector<bool> used(n, false);
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == n) {
            out.push_back(img);
            return;
        }
        for (std::size_t c = 0; c < n; ++c) {
            if (used[c] || m[c][c] != m[k][k]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j) ok = m[c][img[j]] == m[k][j];
            if (!ok) continue;
            used[c] = true;
            img[k] = static_cast<std::uint8_t>(c);
            self(self, k + 1);
            used[c] = false;
        }
    };
    rec(rec, 0);
    return out;
}

// ---------------------------------------------------------------- groups

constexpr std::size_t kMaxOrder = 1920;
using ElemSet = std::bitset<kMaxOrder>;

/// A finite permutation group with all elements listed and a full
/// multiplication table.
class PermGroup {
public:
    PermGroup() = default;
    explicit PermGroup(std::vector<Perm> elements) : elems_(std::move(elements)) {
        if (elems_.empty()) throw std::invalid_argument("empty group");
        if (elems_.size() > kMaxOrder) throw std::invalid_argument("group too large");
        degree_ = elems_[0].size();
        std::sort(elems_.begin(), elems_.end());
        for (std::size_t i = 0; i < elems_.size(); ++i) index_[key(elems_[i])] = static_cast<int>(i);
        Perm id(degree_);
        std::iota(id.begin(), id.end(), 0);
        identity_ = find(id);
        if (identity_ < 0) throw std::invalid_argument("element list lacks the identity");
        std::size_t n = elems_.size();
        mul_.resize(n * n);
        inv_.resize(n);
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b) {
                int c = find(perm_mul(elems_[a], elems_[b]));
                if (c < 0) throw std::invalid_argument("element list is not closed");
                mul_[a * n + b] = static_cast<std::uint16_t>(c);
                if (c == identity_) inv_[a] = static_cast<std::uint16_t>(b);
            }
        // cycle types
        std::map<std::vector<int>, int> ids;
        cycle_type_.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            auto ct = cycle_type(elems_[a]);
            auto it = ids.emplace(ct, static_cast<int>(ids.size())).first;
            cycle_type_[a] = it->second;
        }
        n_cycle_types_ = ids.size();
    }

    static PermGroup generated_by(const std::vector<Perm>& gens, std::size_t degree) {
        Perm id(degree);
        std::iota(id.begin(), id.end(), 0);
        std::vector<Perm> list{id};
        std::set<Perm> seen{id};
        for (std::size_t i = 0; i < list.size(); ++i)
            for (auto& g : gens) {
                if (g.size() != degree) throw std::invalid_argument("generator of wrong degree");
                Perm p = perm_mul(g, list[i]);
                if (seen.insert(p).second) {
                    list.push_back(p);
                    if (list.size() > kMaxOrder) throw std::invalid_argument("group too large");
                }
            }
        return PermGroup(list);
    }

    std::size_t order() const { return elems_.size(); }
    std::size_t degree() const { return degree_; }
    int identity() const { return identity_; }
    const Perm& element(int i) const { return elems_[i]; }
    int find(const Perm& p) const {
        auto it = index_.find(key(p));
        return it == index_.end() ? -1 : it->second;
    }
    int mul(int a, int b) const { return mul_[static_cast<std::size_t>(a) * elems_.size() + b]; }
    int inv(int a) const { return inv_[a]; }
    int conj(int x, int h) const { return mul(mul(x, h), inv(x)); }
    int cycle_type_id(int a) const { return cycle_type_[a]; }
    std::size_t cycle_type_count() const { return n_cycle_types_; }

    ElemSet all() const {
        ElemSet s;
        for (std::size_t i = 0; i < order(); ++i) s.set(i);
        return s;
    }

    bool is_transitive() const {
        std::vector<bool> hit(degree_, false);
        for (auto& e : elems_) hit[e[0]] = true;
        return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
    }

    /// Small generating set, chosen greedily.
    std::vector<int> generators() const;

private:
    static std::vector<int> cycle_type(const Perm& p) {
        std::vector<int> ct;
        std::vector<bool> seen(p.size(), false);
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (std::size_t j = i; !seen[j]; j = p[j]) {
                seen[j] = true;
                ++len;
            }
            ct.push_back(len);
        }
        std::sort(ct.begin(), ct.end());
        return ct;
    }
    static std::string key(const Perm& p) { return std::string(p.begin(), p.end()); }

    std::size_t degree_ = 0;
    std::vector<Perm> elems_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::uint16_t> mul_, inv_;
    std::vector<int> cycle_type_;
    std::size_t n_cycle_types_ = 0;
    int identity_ = 0;
};

/// Subgroup given by element indices of an ambient PermGroup.
struct Subgroup {
    ElemSet elems;
    std::vector<int> gens;
    std::size_t order() const { return elems.count(); }
};

inline Subgroup closure(const PermGroup& g, const std::vector<int>& gens) {
    Subgroup s;
    std::vector<int> list{g.identity()};
    s.elems.set(g.identity());
    for (int x : gens)
        if (x != g.identity()) s.gens.push_back(x);
    for (std::size_t i = 0; i < list.size(); ++i)
        for (int x : s.gens) {
            int y = g.mul(x, list[i]);
            if (!s.elems.test(y)) {
                s.elems.set(y);
                list.push_back(y);
            }
        }
    return s;
}

/// Extend a subgroup by one element, reusing its element list.
inline Subgroup extend(const PermGroup& g, const Subgroup& h, int x) {
    Subgroup s;
    s.elems = h.elems;
    s.gens = h.gens;
    s.gens.push_back(x);
    std::vector<int> list;
    for (std::size_t i = 0; i < g.order(); ++i)
        if (h.elems.test(i)) list.push_back(static_cast<int>(i));
    for (std::size_t i = 0; i < list.size(); ++i)
        for (int y : s.gens) {
            int z = g.mul(y, list[i]);
            if (!s.elems.test(z)) {
                s.elems.set(z);
                list.push_back(z);
            }
        }
    return s;
}

inline std::vector<int> PermGroup::generators() const {
    std::vector<int> gens;
    ElemSet have;
    have.set(identity_);
    for (std::size_t i = order(); i-- > 0;) {
        if (have.test(i)) continue;
        gens.push_back(static_cast<int>(i));
        have = closure(*this, gens).elems;
        if (have.count() == order()) break;
    }
    return gens;
}

inline std::vector<int> elements_of(const Subgroup& h, const PermGroup& g) {
    std::vector<int> v;
    for (std::size_t i = 0; i < g.order(); ++i)
        if (h.elems.test(i)) v.push_back(static_cast<int>(i));
    return v;
}

inline Subgroup subgroup_from_perms(const PermGroup& g, const std::vector<Perm>& gens) {
    std::vector<int> ids;
    for (auto& p : gens) {
        int i = g.find(p);
        if (i < 0) throw std::invalid_argument("permutation " + perm_str(p) + " is not in the group");
        ids.push_back(i);
    }
    return closure(g, ids);
}

inline std::vector<int> orbit_type(const PermGroup& g, const Subgroup& h) {
    std::size_t n = g.degree();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto root = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int x : h.gens) {
        const Perm& p = g.element(x);
        for (std::size_t i = 0; i < n; ++i) parent[root(static_cast<int>(i))] = root(p[i]);
    }
    std::map<int, int> size;
    for (std::size_t i = 0; i < n; ++i) ++size[root(static_cast<int>(i))];
    std::vector<int> t;
    for (auto& [r, s] : size) t.push_back(s);
    std::sort(t.begin(), t.end());
    return t;
}

inline std::vector<int> cycle_histogram(const PermGroup& g, const Subgroup& h) {
    std::vector<int> hist(g.cycle_type_count(), 0);
    for (std::size_t i = 0; i < g.order(); ++i)
        if (h.elems.test(i)) ++hist[g.cycle_type_id(static_cast<int>(i))];
    return hist;
}

inline bool are_conjugate(const PermGroup& g, const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return false;
    auto ea = elements_of(a, g);
    for (std::size_t x = 0; x < g.order(); ++x) {
        bool ok = true;
        for (int h : ea)
            if (!b.elems.test(g.conj(static_cast<int>(x), h))) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

inline std::vector<BigInt> to_bigs(const std::vector<long long>& v) {
    std::vector<BigInt> out;
    for (auto x : v) out.emplace_back(x);
    return out;
}

/// Invariant factors (d1 | d2 | ...) of H/[H,H].
inline std::vector<long long> abelianization(const PermGroup& g, const Subgroup& h) {
    std::vector<int> comm;
    for (int a : h.gens)
        for (int b : h.gens) comm.push_back(g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b))));
    Subgroup d = closure(g, comm);
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<int> dg = d.gens;
        for (int s : dg)
            for (int x : h.gens) {
                int t = g.conj(x, s);
                if (!d.elems.test(t)) {
                    d = extend(g, d, t);
                    changed = true;
                }
            }
    }
    std::size_t q = h.order() / d.order();
    auto elems = elements_of(h, g);
    auto count_killed = [&](long long m) {  // #{x in Q : x^m = 1}
        std::size_t c = 0;
        for (int x : elems) {
            int y = g.identity();
            for (long long k = 0; k < m; ++k) y = g.mul(y, x);
            if (d.elems.test(y)) ++c;
        }
        return static_cast<long long>(c / d.order());
    };
    std::map<long long, std::vector<int>> primary;  // prime -> exponents
    std::size_t rest = q;
    for (long long p = 2; rest > 1; ++p) {
        if (rest % p) continue;
        int e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        std::vector<int> logs{0};
        long long pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            long long c = count_killed(pk);
            int l = 0;
            while (c > 1) {
                c /= p;
                ++l;
            }
            logs.push_back(l);
        }
        // factors of order >= p^k: logs[k] - logs[k-1]
        std::vector<int> ge(e + 2, 0);
        for (int k = 1; k <= e; ++k) ge[k] = logs[k] - logs[k - 1];
        std::vector<int> exps;
        for (int k = 1; k <= e; ++k)
            for (int c = 0; c < ge[k] - ge[k + 1]; ++c) exps.push_back(k);
        std::sort(exps.rbegin(), exps.rend());
        primary[p] = exps;
    }
    std::size_t len = 0;
    for (auto& [p, ex] : primary) len = std::max(len, ex.size());
    std::vector<long long> inv(len, 1);
    for (auto& [p, ex] : primary)
        for (std::size_t i = 0; i < ex.size(); ++i)
            for (int k = 0; k < ex[i]; ++k) inv[len - 1 - i] *= p;
    return inv;
}

// ---------------------------------------------------------------- module

using SmallMat = std::vector<std::vector<long long>>;

inline SmallMat small_mul(const SmallMat& a, const SmallMat& b) {
    std::size_t n = a.size(), m = b[0].size(), k = b.size();
    SmallMat c(n, std::vector<long long>(m, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    return c;
}

inline IntMat to_int_mat(const SmallMat& a) {
    IntMat m = zero_mat(a.size(), a.empty() ? 0 : a[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) m[i][j] = a[i][j];
    return m;
}

/// The rank-5 quotient of the permutation module on lines.
struct LatticeModule {
    std::size_t rank = 0;
    std::vector<SmallMat> action;  // indexed like the group elements
    SmallMat gram;                 // pairing, scaled by 4
};

inline LatticeModule build_d5star_module(const PermGroup& g, const SymMat& m) {
    std::size_t n = m.size();
    if (g.degree() != n) throw std::invalid_argument("group degree does not match the matrix");
    // Div0: intersection numbers with all lines agree
    IntMat a = zero_mat(n - 1, n);
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m[i][j] - m[n - 1][j];
    auto ce = column_echelon(a, n);
    std::size_t r = ce.rank;
    if (r != 5) throw std::domain_error("quotient rank is " + std::to_string(r) + ", expected 5");
    LatticeModule mod;
    mod.rank = r;
    // image of line i: column i of winv, first r rows
    std::vector<std::vector<BigInt>> c(n, std::vector<BigInt>(r));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < r; ++k) c[i][k] = ce.winv[k][i];
    // pick r independent images
    std::vector<std::size_t> basis;
    for (std::size_t i = 0; i < n && basis.size() < r; ++i) {
        IntMat t;
        for (auto b : basis) t.push_back(c[b]);
        t.push_back(c[i]);
        if (static_cast<std::size_t>(rank(t)) == basis.size() + 1) basis.push_back(i);
    }
    IntMat C = zero_mat(r, r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t k = 0; k < r; ++k) C[k][j] = c[basis[j]][k];
    auto [Cinv, den] = rational_inverse(C);
    mod.action.resize(g.order());
    for (std::size_t e = 0; e < g.order(); ++e) {
        const Perm& p = g.element(static_cast<int>(e));
        IntMat Cg = zero_mat(r, r);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t k = 0; k < r; ++k) Cg[k][j] = c[p[basis[j]]][k];
        IntMat Mg = mat_mul(Cg, Cinv);
        SmallMat sm(r, std::vector<long long>(r));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                if (Mg[i][j] % den != 0) throw std::domain_error("action is not integral");
                sm[i][j] = (Mg[i][j] / den).convert_to<long long>();
            }
        // the action must be compatible with all sixteen images
        IntMat M = to_int_mat(sm);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < r; ++k) {
                BigInt s = 0;
                for (std::size_t l = 0; l < r; ++l) s += M[k][l] * c[i][l];
                if (s != c[p[i]][k]) throw std::domain_error("permutation does not descend to the quotient");
            }
        }
        mod.action[e] = sm;
    }
    // pairing 4<x,y> - (x.K)(y.K) on lifts (columns of w)
    mod.gram.assign(r, std::vector<long long>(r, 0));
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t l = 0; l < r; ++l) {
            BigInt xy = 0, sx = 0, sy = 0;
            for (std::size_t i = 0; i < n; ++i) {
                sx += ce.w[i][k];
                sy += ce.w[i][l];
                for (std::size_t j = 0; j < n; ++j) xy += ce.w[i][k] * m[i][j] * ce.w[j][l];
            }
            mod.gram[k][l] = (4 * xy - sx * sy).convert_to<long long>();
        }
    return mod;
}

/// Invariant factors > 1 of H^1(H, M), via (M/nM)^H / image of M^H.
inline std::vector<BigInt> h1(const PermGroup& g, const Subgroup& h, const LatticeModule& mod) {
    std::size_t r = mod.rank;
    long long n = static_cast<long long>(h.order());
    if (n == 1) return {};
    std::vector<int> gens = h.gens;
    if (gens.empty()) return {};
    std::size_t k = gens.size();
    IntMat S = zero_mat(k * r, r);
    for (std::size_t t = 0; t < k; ++t)
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) S[t * r + i][j] = mod.action[gens[t]][i][j] - (i == j ? 1 : 0);
    // A' = {x : S x = 0 mod n}
    IntMat big = zero_mat(k * r, r + k * r);
    for (std::size_t i = 0; i < k * r; ++i) {
        for (std::size_t j = 0; j < r; ++j) big[i][j] = S[i][j];
        big[i][r + i] = n;
    }
    IntMat ker = integer_kernel(big, r + k * r);
    IntMat gen = zero_mat(r, ncols(ker));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < ncols(ker); ++j) gen[i][j] = ker[i][j];
    IntMat A = lattice_basis(gen);
    if (ncols(A) != r) throw std::domain_error("fixed lattice mod n has wrong rank");
    // B' = M^H + n Z^r
    IntMat fix = integer_kernel(S, r);
    IntMat bg = zero_mat(r, ncols(fix) + r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < ncols(fix); ++j) bg[i][j] = fix[i][j];
        bg[i][ncols(fix) + i] = n;
    }
    IntMat B = lattice_basis(bg);
    auto [Ainv, den] = rational_inverse(A);
    IntMat coords = mat_mul(Ainv, B);
    for (auto& row : coords)
        for (auto& x : row) {
            if (x % den != 0) throw std::domain_error("image lattice is not contained in the fixed lattice");
            x /= den;
        }
    std::vector<BigInt> out;
    for (auto& d : smith_diagonal(coords))
        if (d > 1) out.push_back(d);
    return out;
}

/// Oracle for cyclic groups: ker(N) / im(sigma - 1).
inline std::vector<BigInt> h1_cyclic_oracle(const PermGroup& g, int sigma, const LatticeModule& mod) {
    std::size_t r = mod.rank;
    SmallMat id(r, std::vector<long long>(r, 0));
    for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
    SmallMat N = id, pw = id;
    int x = sigma;
    while (x != g.identity()) {
        pw = mod.action[x];
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) N[i][j] += pw[i][j];
        x = g.mul(sigma, x);
    }
    IntMat K = integer_kernel(to_int_mat(N), r);
    std::size_t kr = ncols(K);
    if (kr == 0) return {};
    IntMat D = to_int_mat(mod.action[sigma]);
    for (std::size_t i = 0; i < r; ++i) D[i][i] -= 1;
    // coordinates of the columns of D in the basis K (K is saturated)
    // solve via a nonsingular kr x kr block of K
    IntMat Kt = transpose(K);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < r && rows.size() < kr; ++i) {
        IntMat t;
        for (auto rr : rows) t.push_back(K[rr]);
        t.push_back(K[i]);
        if (static_cast<std::size_t>(rank(t)) == rows.size() + 1) rows.push_back(i);
    }
    IntMat Ks = zero_mat(kr, kr), Ds = zero_mat(kr, r);
    for (std::size_t a = 0; a < kr; ++a) {
        Ks[a] = K[rows[a]];
        Ds[a] = D[rows[a]];
    }
    auto [Kinv, den] = rational_inverse(Ks);
    IntMat coords = mat_mul(Kinv, Ds);
    for (auto& row : coords)
        for (auto& v : row) {
            if (v % den != 0) throw std::domain_error("oracle coordinates not integral");
            v /= den;
        }
    // check the reconstruction
    if (mat_mul(K, coords) != D) throw std::domain_error("image of sigma-1 not in ker N");
    (void)Kt;
    auto diag = smith_diagonal(coords);
    if (diag.size() < kr) throw std::domain_error("infinite cohomology");
    std::vector<BigInt> out;
    for (auto& d : diag)
        if (d > 1) out.push_back(d);
    return out;
}

// ---------------------------------------------------------------- W(D5)

/// The line graph, its automorphism group and the module D5*, built once.
struct WeylD5 {
    SymMat lines;
    PermGroup group;
    LatticeModule module;
    std::vector<Perm> s5_image;  // action on the five conic-pairs, per element

    WeylD5() {
        lines = build_line_graph();
        group = PermGroup(automorphisms(lines));
        if (group.order() != 1920)
            throw std::domain_error("automorphism group has order " + std::to_string(group.order()) + ", expected 1920");
        module = build_d5star_module(group, lines);
        build_conic_pairs();
    }

    Subgroup trivial() const { return closure(group, {}); }
    Subgroup full() const { return closure(group, group.generators()); }

    /// Preimage of a subgroup of S5 given by a predicate on perms.
    template <class Pred>
    Subgroup preimage(Pred keep) const {
        std::vector<int> ids;
        for (std::size_t e = 0; e < group.order(); ++e)
            if (keep(s5_image[e])) ids.push_back(static_cast<int>(e));
        Subgroup s;
        for (int i : ids) s.elems.set(i);
        // generators: grow greedily
        ElemSet have;
        have.set(group.identity());
        for (int i : ids) {
            if (have.test(i)) continue;
            s.gens.push_back(i);
            have = closure(group, s.gens).elems;
        }
        if (have != s.elems) throw std::logic_error("preimage is not a subgroup");
        return s;
    }

    Subgroup index_five() const {
        return preimage([](const Perm& p) { return p[0] == 0; });
    }
    Subgroup order_96() const {
        return preimage([](const Perm& p) { return p[0] == 0 && p[1] == 1; });
    }
    Subgroup index_two() const {
        return preimage([](const Perm& p) { return perm_sign(p) == 1; });
    }
    Subgroup kernel_s5() const {
        return preimage([](const Perm& p) {
            for (std::size_t i = 0; i < p.size(); ++i)
                if (p[i] != i) return false;
            return true;
        });
    }

    static int perm_sign(const Perm& p) {
        int s = 1;
        for (std::size_t i = 0; i < p.size(); ++i)
            for (std::size_t j = i + 1; j < p.size(); ++j)
                if (p[i] > p[j]) s = -s;
        return s;
    }

private:
    void build_conic_pairs() {
        // conic classes L_i + L_j for meeting lines, keyed by intersection vector
        std::map<std::vector<int>, int> conic;
        std::vector<std::vector<int>> vecs;
        auto vec_of = [&](int i, int j) {
            std::vector<int> v(16);
            for (int k = 0; k < 16; ++k) v[k] = lines[i][k] + lines[j][k];
            return v;
        };
        std::map<std::pair<int, int>, int> pair_conic;
        for (int i = 0; i < 16; ++i)
            for (int j = i + 1; j < 16; ++j)
                if (lines[i][j] == 1) {
                    auto v = vec_of(i, j);
                    auto it = conic.find(v);
                    if (it == conic.end()) {
                        it = conic.emplace(v, static_cast<int>(vecs.size())).first;
                        vecs.push_back(v);
                    }
                    pair_conic[{i, j}] = it->second;
                }
        if (vecs.size() != 10) throw std::domain_error("expected ten conic classes");
        // representatives (i, j) for each conic
        std::vector<std::pair<int, int>> rep(10);
        for (auto& [ij, c] : pair_conic) rep[c] = ij;
        auto dot = [&](int a, int b) {
            auto [i, j] = rep[a];
            auto [k, l] = rep[b];
            return lines[i][k] + lines[i][l] + lines[j][k] + lines[j][l];
        };
        std::vector<int> partner(10, -1), pair_id(10, -1);
        int np = 0;
        for (int a = 0; a < 10; ++a)
            for (int b = a + 1; b < 10; ++b)
                if (dot(a, b) == 2) {
                    if (partner[a] >= 0 || partner[b] >= 0) throw std::domain_error("conic pairing is not perfect");
                    partner[a] = b;
                    partner[b] = a;
                    pair_id[a] = pair_id[b] = np++;
                }
        if (np != 5) throw std::domain_error("expected five conic pairs");
        s5_image.resize(group.order());
        for (std::size_t e = 0; e < group.order(); ++e) {
            const Perm& p = group.element(static_cast<int>(e));
            Perm img(5);
            for (int a = 0; a < 10; ++a) {
                auto [i, j] = rep[a];
                int u = std::min(p[i], p[j]), v = std::max(p[i], p[j]);
                img[pair_id[a]] = static_cast<std::uint8_t>(pair_id[pair_conic.at({u, v})]);
            }
            s5_image[e] = img;
        }
    }
};

inline int small_trace(const SmallMat& m) {
    long long t = 0;
    for (std::size_t i = 0; i < m.size(); ++i) t += m[i][i];
    return static_cast<int>(t);
}

/// Closure of a finite matrix group; throws past `limit` elements.
inline std::vector<SmallMat> matrix_group(const std::vector<SmallMat>& gens, std::size_t limit = 4000) {
    std::size_t r = gens.at(0).size();
    SmallMat id(r, std::vector<long long>(r, 0));
    for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
    std::vector<SmallMat> list{id};
    std::set<SmallMat> seen{id};
    for (std::size_t i = 0; i < list.size(); ++i)
        for (auto& g : gens) {
            SmallMat p = small_mul(g, list[i]);
            if (seen.insert(p).second) {
                list.push_back(p);
                if (list.size() > limit) throw std::domain_error("matrix group exceeds limit");
            }
        }
    return list;
}

inline std::map<int, int> trace_multiset(const std::vector<SmallMat>& elems) {
    std::map<int, int> t;
    for (auto& m : elems) ++t[small_trace(m)];
    return t;
}

// ---------------------------------------------------------------- classes

struct SubgroupClass {
    Subgroup rep;
    std::size_t order = 0;
    std::vector<int> orbit_type;
    std::vector<long long> abelian;
    std::vector<BigInt> h1;
};

inline bool class_less(const SubgroupClass& a, const SubgroupClass& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.orbit_type != b.orbit_type) return a.orbit_type < b.orbit_type;
    if (a.abelian != b.abelian) return a.abelian < b.abelian;
    return a.h1 < b.h1;
}

struct ClassEnumeration {
    std::vector<SubgroupClass> classes;
    bool complete = true;
    std::size_t subgroups_seen = 0;
};

/// Conjugacy classes of subgroups by one-element extension of class
/// representatives. `budget` caps the number of distinct subgroups examined.
inline ClassEnumeration subgroup_classes(const WeylD5& w, std::size_t budget = 2000000) {
    const PermGroup& g = w.group;
    struct Entry {
        Subgroup s;
        std::vector<int> orbit;
        std::vector<int> hist;
    };
    std::vector<Entry> reps;
    std::map<std::pair<std::size_t, std::vector<int>>, std::vector<std::size_t>> by_print;
    std::unordered_set<ElemSet> seen;
    ClassEnumeration out;
    auto add = [&](Subgroup s) {
        if (!seen.insert(s.elems).second) return;
        ++out.subgroups_seen;
        auto orbit = orbit_type(g, s);
        auto hist = cycle_histogram(g, s);
        std::vector<int> print = orbit;
        print.push_back(-1);
        print.insert(print.end(), hist.begin(), hist.end());
        auto& bucket = by_print[{s.order(), print}];
        for (auto idx : bucket)
            if (are_conjugate(g, s, reps[idx].s)) return;
        bucket.push_back(reps.size());
        reps.push_back({std::move(s), orbit, hist});
    };
    add(w.trivial());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        if (out.subgroups_seen > budget) {
            out.complete = false;
            break;
        }
        Subgroup base = reps[i].s;
        ElemSet covered = base.elems;
        auto belems = elements_of(base, g);
        for (std::size_t x = 0; x < g.order(); ++x) {
            if (covered.test(x)) continue;
            for (int h : belems) covered.set(g.mul(h, static_cast<int>(x)));
            add(extend(g, base, static_cast<int>(x)));
        }
    }
    for (auto& e : reps) {
        SubgroupClass c;
        c.rep = e.s;
        c.order = e.s.order();
        c.orbit_type = e.orbit;
        c.abelian = abelianization(g, e.s);
        c.h1 = h1(g, e.s, w.module);
        out.classes.push_back(std::move(c));
    }
    std::sort(out.classes.begin(), out.classes.end(), class_less);
    return out;
}

inline std::string factor_list_str(const std::vector<BigInt>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : " ") + v[i].str();
    return s + (v.empty() ? "]" : " ]");
}

}  // namespace bmo
