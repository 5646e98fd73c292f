#pragma once

#include "arith.hpp"
#include "linalg.hpp"
#include "poly.hpp"
#include "upoly.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace bmo {

/// Point of P^n given by a representative; equality is projective.
class ProjPoint {
public:
    ProjPoint() = default;
    explicit ProjPoint(std::vector<Rational> c) : c_(std::move(c)) {
        bool nz = false;
        for (auto& x : c_) nz = nz || !x.is_zero();
        if (!nz) throw std::invalid_argument("projective point with all coordinates zero");
    }
    static ProjPoint of_ints(std::initializer_list<long long> v) {
        std::vector<Rational> c;
        for (auto x : v) c.emplace_back(x);
        return ProjPoint(c);
    }
    /// Affine coordinates in the chart X_h = 1.
    static ProjPoint from_affine(const std::vector<Rational>& a, std::size_t h) {
        std::vector<Rational> c = a;
        c.insert(c.begin() + static_cast<long>(h), Rational(1));
        return ProjPoint(c);
    }
    /// "(a:b:c:d:e)" or whitespace-separated affine "a b c d" (chart X_h = 1).
    static ProjPoint parse(const std::string& s, std::size_t h = 0, bool affine = false) {
        std::string t = s;
        std::vector<Rational> c;
        if (!t.empty() && t.front() == '(') {
            if (t.back() != ')') throw std::invalid_argument("bad point '" + s + "'");
            t = t.substr(1, t.size() - 2);
            std::size_t b = 0;
            for (;;) {
                std::size_t e = t.find(':', b);
                c.push_back(Rational::parse(t.substr(b, e == std::string::npos ? std::string::npos : e - b)));
                if (e == std::string::npos) break;
                b = e + 1;
            }
            return ProjPoint(c);
        }
        std::istringstream is(t);
        std::string tok;
        while (is >> tok) c.push_back(Rational::parse(tok));
        if (affine) return from_affine(c, h);
        return ProjPoint(c);
    }

    std::size_t size() const { return c_.size(); }
    const Rational& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<Rational>& coords() const { return c_; }

    /// Integer coordinates, gcd 1, first nonzero coordinate positive.
    std::vector<BigInt> normalized() const {
        BigInt l = 1;
        for (auto& x : c_) l = l / big_gcd(l, x.den()) * x.den();
        std::vector<BigInt> v;
        BigInt g = 0;
        for (auto& x : c_) {
            v.push_back((x * Rational(l)).num());
            g = big_gcd(g, v.back());
        }
        int sg = 0;
        for (auto& x : v)
            if (x != 0) {
                sg = x < 0 ? -1 : 1;
                break;
            }
        for (auto& x : v) x = x / g * sg;
        return v;
    }
    ProjPoint normal_form() const {
        std::vector<Rational> c;
        for (auto& x : normalized()) c.emplace_back(x);
        return ProjPoint(c);
    }
    /// Affine coordinates with X_h = 1 (X_h removed); throws on the boundary.
    std::vector<Rational> affine(std::size_t h) const {
        if (c_[h].is_zero()) throw std::domain_error("point lies on the boundary hyperplane");
        std::vector<Rational> a;
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (i != h) a.push_back(c_[i] / c_[h]);
        return a;
    }
    /// Chart representative (X_h = 1, other coordinates kept).
    ProjPoint dehomogenized(std::size_t h) const { return from_affine(affine(h), h); }

    std::string str() const {
        std::string s = "(";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += ":";
            s += c_[i].str();
        }
        return s + ")";
    }
    friend bool operator==(const ProjPoint& a, const ProjPoint& b) {
        return a.size() == b.size() && a.normalized() == b.normalized();
    }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.c_ < b.c_; }

private:
    std::vector<Rational> c_;
};

inline Rational evaluate_form(const Poly& f, const ProjPoint& x) {
    if (f.nvars() != x.size()) throw std::invalid_argument("evaluate_form: dimension mismatch");
    return f.evaluate(x.coords());
}

/// V(forms) in P^n with a distinguished hyperplane X_h = 0.
struct Scheme {
    std::string name;
    std::size_t ambient_dim = 0;
    std::size_t hyperplane_index = 0;
    std::vector<Poly> forms;

    std::size_t nvars() const { return ambient_dim + 1; }

    void validate() const {
        if (hyperplane_index > ambient_dim) throw std::invalid_argument(name + ": hyperplane index out of range");
        if (forms.empty()) throw std::invalid_argument(name + ": no forms");
        for (auto& f : forms) {
            if (f.nvars() != nvars()) throw std::invalid_argument(name + ": form arity mismatch");
            if (!f.is_homogeneous() || f.is_zero()) throw std::invalid_argument(name + ": form not homogeneous");
        }
    }
    bool is_pencil_surface() const {
        return ambient_dim == 4 && forms.size() == 2 && forms[0].degree() == 2 && forms[1].degree() == 2;
    }
    friend bool operator==(const Scheme& a, const Scheme& b) {
        return a.name == b.name && a.ambient_dim == b.ambient_dim && a.hyperplane_index == b.hyperplane_index &&
               a.forms == b.forms;
    }
};

inline bool on_surface(const Scheme& s, const ProjPoint& x) {
    if (x.size() != s.nvars()) throw std::invalid_argument("on_surface: dimension mismatch");
    for (auto& f : s.forms)
        if (!evaluate_form(f, x).is_zero()) return false;
    return true;
}

inline bool is_integral_point(const Scheme& s, const ProjPoint& x) {
    if (x.size() != s.nvars()) throw std::invalid_argument("is_integral_point: dimension mismatch");
    if (x[s.hyperplane_index].is_zero()) return false;
    for (auto& a : x.affine(s.hyperplane_index))
        if (!a.is_integer()) return false;
    return true;
}

/// 2*Gram matrix of a quadratic form.
inline IntMat gram2(const Poly& q) {
    std::size_t n = q.nvars();
    if (q.degree() != 2 || !q.is_homogeneous()) throw std::invalid_argument("gram2: not a quadratic form");
    IntMat g = zero_mat(n, n);
    for (auto& [e, c] : q.terms()) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            for (int k = 0; k < e[i]; ++k) idx.push_back(i);
        if (idx[0] == idx[1]) {
            g[idx[0]][idx[0]] = 2 * c;
        } else {
            g[idx[0]][idx[1]] = c;
            g[idx[1]][idx[0]] = c;
        }
    }
    return g;
}

struct DegenerateMember {
    bool rational = false;
    Rational mu = 0, nu = 0;        // exact root (mu:nu) when rational
    Rational lo = 0, hi = 0;        // isolating interval for t = mu/nu (real roots)
    bool at_infinity = false;       // nu = 0
    bool real = false;
    int rank = -1;                  // -1: not determined individually
    int discriminant_sign = 0;      // sign of the sum of principal 4x4 minors
};

struct PencilReport {
    std::vector<Rational> quintic;           // coefficients of t^i in det(t*G1 + G2)
    std::vector<UPoly> squarefree_factors;   // multiplicity i+1 at index i
    bool squarefree = false;                 // as a binary form
    bool infinity_root = false;              // det(G1) = 0
    int real_members = 0;
    bool all_rank_four = false;
    std::vector<DegenerateMember> members;   // real members plus rational ones
};

namespace detail {

using PolyMat = std::vector<std::vector<UPoly>>;

inline UPoly poly_det(const PolyMat& m) {
    std::size_t n = m.size();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    UPoly d;
    do {
        int inv = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        UPoly t(std::vector<Rational>{Rational(inv % 2 ? -1 : 1)});
        for (std::size_t i = 0; i < n && !t.is_zero(); ++i) t = t * m[i][perm[i]];
        d = d + t;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return d;
}

inline PolyMat minor_mat(const PolyMat& m, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) {
    PolyMat out(rows.size(), std::vector<UPoly>(cols.size()));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) out[i][j] = m[rows[i]][cols[j]];
    return out;
}

inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<long>(k), true);
    do {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < n; ++i)
            if (mask[i]) s.push_back(i);
        out.push_back(s);
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
}

inline IntMat scaled_member(const IntMat& a, const IntMat& b, const Rational& mu, const Rational& nu) {
    // clear denominators of mu, nu
    BigInt l = mu.den() / big_gcd(mu.den(), nu.den()) * nu.den();
    BigInt m = (mu * Rational(l)).num(), n = (nu * Rational(l)).num();
    IntMat c = zero_mat(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) c[i][j] = m * a[i][j] + n * b[i][j];
    return c;
}

}  // namespace detail

/// Degenerate members of the pencil t*q1 + q2 (and q1 itself at t = infinity).
inline PencilReport pencil_degenerates(const Scheme& s) {
    if (!s.is_pencil_surface()) throw std::invalid_argument(s.name + ": not a pencil of two quadrics in P^4");
    IntMat A = gram2(s.forms[0]), B = gram2(s.forms[1]);
    const std::size_t n = 5;
    detail::PolyMat M(n, std::vector<UPoly>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) M[i][j] = UPoly(std::vector<Rational>{Rational(B[i][j]), Rational(A[i][j])});
    UPoly f = detail::poly_det(M);
    if (f.is_zero()) throw std::domain_error("degenerate pencil");

    PencilReport rep;
    for (int i = 0; i <= 5; ++i) rep.quintic.push_back(f.coeff(i));
    rep.infinity_root = f.degree() < 5;
    rep.squarefree_factors = f.squarefree_decomposition();
    rep.squarefree = f.is_squarefree() && f.degree() >= 4;

    // rank 4 at every finite root iff no root is shared with all 4x4 minors
    UPoly g = f;
    for (auto& r : detail::subsets(n, 4))
        for (auto& c : detail::subsets(n, 4)) {
            g = UPoly::gcd(g, detail::poly_det(detail::minor_mat(M, r, c)));
            if (g.degree() == 0) break;
        }
    bool finite_rank4 = g.degree() == 0;
    bool inf_rank4 = !rep.infinity_root || rank(A) == 4;
    rep.all_rank_four = finite_rank4 && inf_rank4;

    // principal 4x4 minors summed
    UPoly e4;
    for (std::size_t skip = 0; skip < n; ++skip) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (i != skip) idx.push_back(i);
        e4 = e4 + detail::poly_det(detail::minor_mat(M, idx, idx));
    }

    auto rat = f.rational_roots();
    UPoly sq = f;
    if (!f.is_squarefree()) sq = UPoly::divmod(f, UPoly::gcd(f, f.derivative())).first;
    for (auto [lo, hi] : sq.isolate_real_roots()) {
        DegenerateMember m;
        m.real = true;
        // refine until e4 has constant sign on the interval
        for (int it = 0; it < 400; ++it) {
            if (rat) {
                bool hit = false;
                for (auto& r : *rat)
                    if (lo < r && r <= hi) {
                        m.rational = true;
                        m.mu = r;
                        m.nu = 1;
                        hit = true;
                    }
                if (hit) break;
            }
            if (e4.is_zero()) break;
            UPoly e4sq = e4.is_squarefree() ? e4 : UPoly::divmod(e4, UPoly::gcd(e4, e4.derivative())).first;
            if (e4sq.roots_in(lo, hi) == 0 && !e4(hi).is_zero()) break;
            Rational mid = (lo + hi) / Rational(2);
            if (sq.roots_in(lo, mid) == 1) hi = mid;
            else lo = mid;
        }
        m.lo = lo;
        m.hi = hi;
        if (m.rational) {
            m.rank = rank(detail::scaled_member(A, B, m.mu, m.nu));
            m.discriminant_sign = e4(m.mu).sign();
        } else {
            m.rank = finite_rank4 ? 4 : -1;
            m.discriminant_sign = e4(hi).sign();
        }
        rep.members.push_back(m);
    }
    if (rep.infinity_root) {
        DegenerateMember m;
        m.at_infinity = m.real = m.rational = true;
        m.mu = 1;
        m.nu = 0;
        m.rank = rank(A);
        // leading coefficient of e4 in t is the e4 of A itself
        IntMat a4 = A;
        BigInt s4 = 0;
        for (std::size_t skip = 0; skip < n; ++skip) {
            IntMat sub;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == skip) continue;
                std::vector<BigInt> row;
                for (std::size_t j = 0; j < n; ++j)
                    if (j != skip) row.push_back(a4[i][j]);
                sub.push_back(row);
            }
            s4 += det(sub);
        }
        m.discriminant_sign = s4 < 0 ? -1 : (s4 > 0 ? 1 : 0);
        rep.members.push_back(m);
    }
    rep.real_members = static_cast<int>(rep.members.size());
    return rep;
}

/// Exact: two quadrics in P^4 meet smoothly iff det(t*G1+G2), as a binary
/// quintic, has five distinct roots.
inline bool smoothness_check(const Scheme& s) {
    if (!s.is_pencil_surface()) throw std::invalid_argument(s.name + ": not a pencil of two quadrics in P^4");
    try {
        return pencil_degenerates(s).squarefree;
    } catch (const std::domain_error&) {
        return false;
    }
}

/// Component i is num[i]/den[i]; all components share one degree.
struct RationalMap {
    std::string name;
    std::string source;
    std::string target;
    std::vector<Poly> num;
    std::vector<Poly> den;

    bool is_polynomial() const {
        for (auto& d : den)
            if (d.degree() != 0) return false;
        return true;
    }
    friend bool operator==(const RationalMap& a, const RationalMap& b) {
        return a.name == b.name && a.source == b.source && a.target == b.target && a.num == b.num && a.den == b.den;
    }
};

inline ProjPoint apply_map(const RationalMap& m, const ProjPoint& x, const Scheme* target = nullptr) {
    std::vector<Rational> out;
    bool nz = false;
    for (std::size_t i = 0; i < m.num.size(); ++i) {
        Rational d = evaluate_form(m.den[i], x);
        if (d.is_zero()) throw std::domain_error("indeterminate: denominator vanishes");
        out.push_back(evaluate_form(m.num[i], x) / d);
        nz = nz || !out.back().is_zero();
    }
    if (!nz) throw std::domain_error("indeterminate: all components vanish");
    ProjPoint y(out);
    if (target && !on_surface(*target, y))
        throw std::logic_error("image of " + x.str() + " under " + m.name + " is not on " + target->name);
    return y;
}

/// f o m for a polynomial map (denominators constant).
inline Poly pullback(const Poly& f, const RationalMap& m) {
    if (!m.is_polynomial()) throw std::invalid_argument("pullback needs a polynomial map");
    std::vector<Poly> comps;
    for (std::size_t i = 0; i < m.num.size(); ++i) {
        BigInt d = m.den[i].terms().begin()->second;
        if (d != 1 && d != -1) throw std::invalid_argument("pullback needs unit denominators");
        comps.push_back(d * m.num[i]);
    }
    return f.compose(comps);
}

}  // namespace bmo
