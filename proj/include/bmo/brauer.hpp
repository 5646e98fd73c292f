#pragma once

#include "arith.hpp"
#include "geometry.hpp"
#include "linalg.hpp"
#include "poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bmo {

/// num/den, both forms of the same degree.
struct RatForm {
    Poly num, den;

    Rational at(const ProjPoint& x) const {
        Rational d = evaluate_form(den, x);
        if (d.is_zero()) throw std::domain_error("point on symbol support");
        return evaluate_form(num, x) / d;
    }
    friend bool operator==(const RatForm& a, const RatForm& b) { return a.num == b.num && a.den == b.den; }
};

/// The quaternion symbol (f, g; -1).
struct Symbol {
    RatForm f, g;
    friend bool operator==(const Symbol& a, const Symbol& b) { return a.f == b.f && a.g == b.g; }
};

/// Sum of symbols; one representative of a class.
using SymbolSum = std::vector<Symbol>;

enum class ClassKind { Algebraic, Transcendental, Unknown };

inline std::string kind_name(ClassKind k) {
    switch (k) {
        case ClassKind::Algebraic: return "algebraic";
        case ClassKind::Transcendental: return "transcendental";
        default: return "unknown";
    }
}
inline ClassKind parse_kind(const std::string& s) {
    if (s == "algebraic") return ClassKind::Algebraic;
    if (s == "transcendental") return ClassKind::Transcendental;
    if (s == "unknown") return ClassKind::Unknown;
    throw std::invalid_argument("unknown class kind '" + s + "'");
}

/// reps[0] is the primary representative; the others are equal in Br(U)
/// and are only consulted where the primary one is undefined.
struct SymbolClass {
    std::string name;
    ClassKind kind = ClassKind::Unknown;
    std::vector<SymbolSum> reps;

    const SymbolSum& primary() const {
        if (reps.empty() || reps[0].empty()) throw std::logic_error("class " + name + " has no representative");
        return reps[0];
    }
    friend bool operator==(const SymbolClass& a, const SymbolClass& b) {
        return a.name == b.name && a.kind == b.kind && a.reps == b.reps;
    }
};

/// Values in Q/Z are kept as 0 or 1/2.
inline Rational half_if(bool b) { return b ? Rational(1, 2) : Rational(0); }

inline Rational add_mod1(const Rational& a, const Rational& b) {
    Rational s = a + b;
    while (s >= Rational(1)) s -= Rational(1);
    return s;
}

inline Rational evaluate_sum(const SymbolSum& rep, const ProjPoint& x, const Place& v) {
    Rational total(0);
    for (auto& s : rep) {
        Rational f = s.f.at(x), g = s.g.at(x);
        if (f.is_zero() || g.is_zero()) throw std::domain_error("point on symbol support");
        total = add_mod1(total, half_if(hilbert_symbol(f, g, v) == -1));
    }
    return total;
}

/// Uses the primary representative only unless use_alternates is set.
inline Rational evaluate_class(const SymbolClass& c, const ProjPoint& x, const Place& v, bool use_alternates = false) {
    if (!use_alternates) return evaluate_sum(c.primary(), x, v);
    for (auto& rep : c.reps) {
        try {
            return evaluate_sum(rep, x, v);
        } catch (const std::domain_error&) {
        }
    }
    throw std::domain_error("point on symbol support");
}

inline Rational adelic_sum(const SymbolClass& c, const std::map<Place, ProjPoint>& assignment,
                           const std::vector<Place>& places) {
    Rational s(0);
    for (auto& v : places) {
        auto it = assignment.find(v);
        if (it == assignment.end()) throw std::invalid_argument("no local point assigned at place " + v.str());
        s = add_mod1(s, evaluate_class(c, it->second, v));
    }
    return s;
}

/// Class sum; representatives are all pairwise combinations.
inline SymbolClass class_sum(const std::string& name, const SymbolClass& a, const SymbolClass& b,
                             std::vector<SymbolSum> leading = {}) {
    SymbolClass c;
    c.name = name;
    c.kind = (a.kind == b.kind) ? a.kind : ClassKind::Unknown;
    c.reps = std::move(leading);
    for (auto& ra : a.reps)
        for (auto& rb : b.reps) {
            SymbolSum s = ra;
            s.insert(s.end(), rb.begin(), rb.end());
            c.reps.push_back(s);
        }
    return c;
}

// ---------------------------------------------------------------- patterns

/// mu*q1 + nu*q2 = l1*l2 - l3^2 + d*l4^2.
struct AlgebraicPattern {
    std::string name;
    std::string class_name;
    Poly l1, l2, l3, l4;
    BigInt d = 0;
    BigInt mu = 0, nu = 0;
    friend bool operator==(const AlgebraicPattern& a, const AlgebraicPattern& b) {
        return a.name == b.name && a.class_name == b.class_name && a.l1 == b.l1 && a.l2 == b.l2 && a.l3 == b.l3 &&
               a.l4 == b.l4 && a.d == b.d && a.mu == b.mu && a.nu == b.nu;
    }
};

/// q1 = l1*l2 + a*u^2 - X_h*l3,  q2 = l3*l4 + b*v^2 - X_h*l1.
struct TranscendentalPattern {
    std::string name;
    std::string class_name;
    Poly l1, l2, l3, l4, u, v;
    BigInt a = 0, b = 0;
    friend bool operator==(const TranscendentalPattern& x, const TranscendentalPattern& y) {
        return x.name == y.name && x.class_name == y.class_name && x.l1 == y.l1 && x.l2 == y.l2 && x.l3 == y.l3 &&
               x.l4 == y.l4 && x.u == y.u && x.v == y.v && x.a == y.a && x.b == y.b;
    }
};

struct PatternCheck {
    bool ok = false;
    std::string report;
    std::optional<SymbolClass> derived;
};

namespace detail {

inline bool is_linear_form(const Poly& l) { return l.is_zero() || (l.degree() == 1 && l.is_homogeneous()); }

inline IntMat coefficient_rows(const std::vector<Poly>& ls) {
    IntMat m;
    for (auto& l : ls) {
        std::vector<BigInt> row;
        for (std::size_t i = 0; i < l.nvars(); ++i) row.push_back(l.linear_coeff(i));
        m.push_back(row);
    }
    return m;
}

inline bool is_rational_square(const BigInt& d) {
    if (d < 0) return false;
    bool exact = false;
    isqrt(d, &exact);
    return exact;
}

inline RatForm over_h(const Poly& l, std::size_t h, const BigInt& scale = 1) {
    return RatForm{scale * l, Poly::variable(l.nvars(), h)};
}
inline RatForm constant_form(std::size_t n, const BigInt& c) {
    return RatForm{Poly::constant(n, c), Poly::constant(n, 1)};
}

inline int rank_mod_p(IntMat m, std::uint64_t p) {
    for (auto& row : m)
        for (auto& x : row) x = BigInt(mod_u64(x, p));
    std::size_t rows = m.size(), cols = ncols(m), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[piv], m[r]);
        std::uint64_t inv = detail::powmod(mod_u64(m[r][c], p), p - 2, p);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            std::uint64_t f = detail::mulmod(mod_u64(m[i][c], p), inv, p);
            for (std::size_t j = 0; j < cols; ++j)
                m[i][j] = BigInt(mod_u64(m[i][j] - BigInt(f) * m[r][j], p));
        }
        ++r;
    }
    return static_cast<int>(r);
}

}  // namespace detail

inline PatternCheck verify_algebraic_pattern(const Scheme& s, const AlgebraicPattern& pat) {
    PatternCheck out;
    if (!s.is_pencil_surface()) {
        out.report = "not a pencil surface";
        return out;
    }
    for (auto* l : {&pat.l1, &pat.l2, &pat.l3, &pat.l4})
        if (l->nvars() != s.nvars() || !detail::is_linear_form(*l)) {
            out.report = "pattern forms must be linear in the ambient variables";
            return out;
        }
    Poly lhs = pat.mu * s.forms[0] + pat.nu * s.forms[1];
    Poly rhs = pat.l1 * pat.l2 - pat.l3 * pat.l3 + pat.d * (pat.l4 * pat.l4);
    if (lhs != rhs) {
        out.report = "identity fails: difference " + (lhs - rhs).str();
        return out;
    }
    if (pat.d == 0 || detail::is_rational_square(pat.d)) {
        out.report = "d is a rational square";
        return out;
    }
    out.ok = true;
    out.report = "ok";
    std::size_t h = s.hyperplane_index, n = s.nvars();
    SymbolClass c;
    c.name = pat.class_name.empty() ? pat.name : pat.class_name;
    c.kind = ClassKind::Algebraic;
    c.reps.push_back({Symbol{detail::over_h(pat.l1, h), detail::constant_form(n, pat.d)}});
    // l1*l2 is a norm from k(sqrt d)
    c.reps.push_back({Symbol{detail::over_h(pat.l2, h), detail::constant_form(n, pat.d)}});
    out.derived = c;
    return out;
}

inline PatternCheck verify_transcendental_pattern(const Scheme& s, const TranscendentalPattern& pat) {
    PatternCheck out;
    if (!s.is_pencil_surface()) {
        out.report = "not a pencil surface";
        return out;
    }
    for (auto* l : {&pat.l1, &pat.l2, &pat.l3, &pat.l4, &pat.u, &pat.v})
        if (l->nvars() != s.nvars() || !detail::is_linear_form(*l)) {
            out.report = "pattern forms must be linear in the ambient variables";
            return out;
        }
    std::size_t h = s.hyperplane_index, n = s.nvars();
    Poly xh = Poly::variable(n, h);
    Poly e1 = pat.l1 * pat.l2 + pat.a * (pat.u * pat.u) - xh * pat.l3;
    Poly e2 = pat.l3 * pat.l4 + pat.b * (pat.v * pat.v) - xh * pat.l1;
    if (e1 != s.forms[0]) {
        out.report = "first identity fails: difference " + (s.forms[0] - e1).str();
        return out;
    }
    if (e2 != s.forms[1]) {
        out.report = "second identity fails: difference " + (s.forms[1] - e2).str();
        return out;
    }
    if (rank(detail::coefficient_rows({pat.l1, pat.l3, pat.u, pat.v})) != 4) {
        out.report = "l1, l3, u, v are linearly dependent";
        return out;
    }
    if (pat.a == 0 || pat.b == 0) {
        out.report = "a and b must be nonzero";
        return out;
    }
    out.ok = true;
    out.report = "ok";
    SymbolClass c;
    c.name = pat.class_name.empty() ? pat.name : pat.class_name;
    c.kind = ClassKind::Transcendental;
    BigInt ab = pat.a * pat.b;
    c.reps.push_back({Symbol{detail::over_h(pat.l1, h, pat.b), detail::over_h(pat.l3, h, pat.a)}});
    // a*l1*l2 is a norm from k(sqrt(a*l3)), b*l3*l4 one from k(sqrt(b*l1))
    c.reps.push_back({Symbol{detail::over_h(pat.l2, h, ab), detail::over_h(pat.l3, h, pat.a)}});
    c.reps.push_back({Symbol{detail::over_h(pat.l1, h, pat.b), detail::over_h(pat.l4, h, ab)}});
    out.derived = c;
    return out;
}

/// Primitive integer common zero of l1..l4 (requires rank 4 over Q).
inline std::vector<BigInt> pattern_cusp(const AlgebraicPattern& pat) {
    IntMat m = detail::coefficient_rows({pat.l1, pat.l2, pat.l3, pat.l4});
    IntMat k = integer_kernel(m, pat.l1.nvars());
    if (ncols(k) != 1) throw std::domain_error("pattern forms do not cut out a single point");
    std::vector<BigInt> c;
    for (auto& row : k) c.push_back(row[0]);
    return c;
}

namespace detail {

inline bool cusp_on_reduction(const Scheme& s, const std::vector<BigInt>& c, std::uint64_t p) {
    std::vector<BigInt> x = c;
    for (auto& f : s.forms)
        if (mod_u64(f.evaluate(x), p) != 0) return false;
    return true;
}

}  // namespace detail

/// Hypotheses "p does not divide 2d, l1..l4 independent mod p, and the cusp
/// does not reduce onto X_p".
inline bool lemma_algconst_applies(const Scheme& s, const AlgebraicPattern& pat, std::uint64_t p) {
    require_prime(p);
    if (mod_u64(2 * pat.d, p) == 0) return false;
    if (detail::rank_mod_p(detail::coefficient_rows({pat.l1, pat.l2, pat.l3, pat.l4}), p) != 4) return false;
    return !detail::cusp_on_reduction(s, pattern_cusp(pat), p);
}

/// Direct check: the cusp reduces off U_p (either off X_p or onto the boundary).
inline bool cusp_off_integral_model(const Scheme& s, const AlgebraicPattern& pat, std::uint64_t p) {
    require_prime(p);
    if (mod_u64(2 * pat.d, p) == 0) return false;
    if (detail::rank_mod_p(detail::coefficient_rows({pat.l1, pat.l2, pat.l3, pat.l4}), p) != 4) return false;
    auto c = pattern_cusp(pat);
    if (mod_u64(c[s.hyperplane_index], p) == 0) return true;
    return !detail::cusp_on_reduction(s, c, p);
}

inline bool lemma_trconst_applies(const Scheme&, const TranscendentalPattern& pat, std::uint64_t p) {
    require_prime(p);
    return mod_u64(2 * pat.a * pat.b, p) != 0;
}

}  // namespace bmo
