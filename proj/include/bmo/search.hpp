#pragma once

#include "arith.hpp"
#include "geometry.hpp"
#include "poly.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace bmo {

/// Variable indices refer to projective coordinates; the hyperplane
/// coordinate is fixed to 1.
struct SearchStrategy {
    int eliminate_var = -1;   // -1: no linear elimination (single equation)
    int linear_eq = 0;
    int quadratic_var = -1;
    int quadratic_eq = 1;
    std::vector<int> enumerate_vars;
    long long height = 0;
    friend bool operator==(const SearchStrategy& a, const SearchStrategy& b) {
        return a.eliminate_var == b.eliminate_var && a.linear_eq == b.linear_eq && a.quadratic_var == b.quadratic_var &&
               a.quadratic_eq == b.quadratic_eq && a.enumerate_vars == b.enumerate_vars && a.height == b.height;
    }
};

namespace detail {

/// Polynomial in the enumerated variables with values in Int.
struct EnumPoly {
    struct Term {
        BigInt c;
        std::vector<int> e;
    };
    std::vector<Term> terms;
    BigInt abs_sum = 0;
    int degree = 0;

    static EnumPoly from(const Poly& f, const std::vector<int>& vars) {
        EnumPoly p;
        for (auto& [e, c] : f.terms()) {
            Term t{c, {}};
            int d = 0;
            for (int v : vars) {
                t.e.push_back(e[v]);
                d += e[v];
            }
            p.terms.push_back(t);
            p.abs_sum += c < 0 ? BigInt(-c) : c;
            p.degree = std::max(p.degree, d);
        }
        return p;
    }

    template <class Int>
    Int eval(const std::vector<std::vector<Int>>& powers) const {
        Int s = 0;
        for (auto& t : terms) {
            Int v = static_cast<Int>(t.c);
            for (std::size_t i = 0; i < t.e.size(); ++i)
                if (t.e[i]) v *= powers[i][t.e[i]];
            s += v;
        }
        return s;
    }

    BigInt bound(long long H) const {
        return abs_sum * boost::multiprecision::pow(BigInt(H), degree);
    }
};

template <class Int>
Int int_sqrt(const Int& n, bool& exact);

template <>
inline BigInt int_sqrt<BigInt>(const BigInt& n, bool& exact) {
    return isqrt(n, &exact);
}

template <>
inline __int128 int_sqrt<__int128>(const __int128& n, bool& exact) {
    if (n < 0) {
        exact = false;
        return 0;
    }
    __int128 r = static_cast<__int128>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    exact = r * r == n;
    return r;
}

/// Integer roots of a2 t^2 + a1 t + a0 with |t| <= H; all = identically zero.
template <class Int>
std::vector<Int> int_roots(const Int& a2, const Int& a1, const Int& a0, long long H, bool& all) {
    all = false;
    std::vector<Int> r;
    auto push = [&](const Int& t) {
        if (t >= -H && t <= H && std::find(r.begin(), r.end(), t) == r.end()) r.push_back(t);
    };
    if (a2 != 0) {
        Int D = a1 * a1 - 4 * a2 * a0;
        if (D < 0) return r;
        bool exact = false;
        Int s = int_sqrt<Int>(D, exact);
        if (!exact) return r;
        for (Int num : {Int(-a1 + s), Int(-a1 - s)})
            if (num % (2 * a2) == 0) push(num / (2 * a2));
        return r;
    }
    if (a1 != 0) {
        if (a0 % a1 == 0) push(-a0 / a1);
        return r;
    }
    if (a0 == 0) all = true;
    return r;
}

}  // namespace detail

class PointSearch {
public:
    PointSearch(const Scheme& s, const SearchStrategy& st) : s_(s), st_(st) {
        s.validate();
        n_ = s.nvars();
        h_ = s.hyperplane_index;
        Poly one = Poly::constant(n_, 1);
        for (auto& f : s.forms) aff_.push_back(f.substitute(h_, one));
        validate();
        prepare();
    }

    /// Integral points with all affine coordinates in [-H, H], sorted.
    std::vector<ProjPoint> run(int workers = 1) const {
        const long long H = st_.height;
        std::vector<std::vector<std::vector<BigInt>>> parts(std::max(1, workers));
        auto job = [&](int w) {
            for (long long a = -H + w; a <= H; a += std::max(1, workers)) scan_first(a, parts[w]);
        };
        if (workers <= 1) {
            job(0);
        } else {
            std::vector<std::thread> ts;
            for (int w = 0; w < workers; ++w) ts.emplace_back(job, w);
            for (auto& t : ts) t.join();
        }
        std::vector<std::vector<BigInt>> all;
        for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        std::vector<ProjPoint> out;
        for (auto& a : all) {
            std::vector<Rational> c;
            for (auto& x : a) c.emplace_back(x);
            out.push_back(ProjPoint(c));
        }
        return out;
    }

private:
    void fail(const std::string& why) const { throw std::invalid_argument("invalid search strategy for " + s_.name + ": " + why); }

    void validate() {
        auto in_range = [&](int v) { return v >= 0 && static_cast<std::size_t>(v) < n_ && static_cast<std::size_t>(v) != h_; };
        if (st_.height < 0) fail("negative height");
        if (!in_range(st_.quadratic_var)) fail("bad quadratic variable");
        std::vector<int> used = st_.enumerate_vars;
        used.push_back(st_.quadratic_var);
        if (st_.eliminate_var >= 0) {
            if (!in_range(st_.eliminate_var)) fail("bad eliminated variable");
            used.push_back(st_.eliminate_var);
        }
        for (int v : st_.enumerate_vars)
            if (!in_range(v)) fail("bad enumerated variable");
        std::vector<int> sorted = used;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("variables repeated");
        // every affine variable that occurs must be accounted for
        for (std::size_t v = 0; v < n_; ++v) {
            if (v == h_ || std::find(used.begin(), used.end(), static_cast<int>(v)) != used.end()) continue;
            for (auto& f : aff_)
                if (f.involves(v)) fail("variable X" + std::to_string(v) + " is not covered");
        }
        auto only_enum = [&](const Poly& f) {
            for (std::size_t v = 0; v < n_; ++v)
                if (f.involves(v) && std::find(st_.enumerate_vars.begin(), st_.enumerate_vars.end(), static_cast<int>(v)) ==
                                         st_.enumerate_vars.end())
                    return false;
            return true;
        };
        const std::size_t q = static_cast<std::size_t>(st_.quadratic_var);
        if (st_.eliminate_var < 0) {
            if (aff_.size() != 1) fail("linear elimination needed for two equations");
            if (static_cast<std::size_t>(st_.quadratic_eq) != 0) fail("single equation has index 0");
            const Poly& Q = aff_[0];
            int dq = Q.degree_in(q);
            if (dq < 1 || dq > 2) fail("equation must have degree 1 or 2 in the quadratic variable");
            for (int k = 0; k <= 2; ++k) {
                qk_.push_back(Q.coeff_in(q, k));
                if (!only_enum(qk_.back())) fail("coefficients must depend on enumerated variables only");
            }
            return;
        }
        if (aff_.size() != 2) fail("linear elimination expects two equations");
        if (st_.linear_eq == st_.quadratic_eq || st_.linear_eq < 0 || st_.linear_eq > 1 || st_.quadratic_eq < 0 ||
            st_.quadratic_eq > 1)
            fail("equation indices must be 0 and 1");
        const std::size_t e = static_cast<std::size_t>(st_.eliminate_var);
        const Poly& L = aff_[st_.linear_eq];
        const Poly& Q = aff_[st_.quadratic_eq];
        if (L.degree_in(e) != 1) fail("designated equation is not linear in the eliminated variable");
        c_ = L.coeff_in(e, 1);
        r_ = L.coeff_in(e, 0);
        if (!only_enum(c_)) fail("coefficient of the eliminated variable must depend on enumerated variables only");
        if (r_.degree_in(q) > 2) fail("linear equation has degree > 2 in the quadratic variable");
        int m = Q.degree_in(e);
        if (m < 0) m = 0;
        // c^m * Q(x_e = -r/c)
        Poly R(n_);
        for (int k = 0; k <= m; ++k) R += Q.coeff_in(e, k) * (-r_).pow(k) * c_.pow(m - k);
        int dq = R.degree_in(q);
        if (dq < 1 || dq > 2) fail("substituted equation must have degree 1 or 2 in the quadratic variable");
        for (int k = 0; k <= 2; ++k) {
            Rk_.push_back(R.coeff_in(q, k));
            rk_.push_back(r_.coeff_in(q, k));
            if (!only_enum(Rk_.back()) || !only_enum(rk_.back())) fail("unexpected variable dependence");
        }
        for (int k = 0; k <= Q.degree_in(e); ++k) Qe_.push_back(Q.coeff_in(e, k));
    }

    void scan_first(long long a, std::vector<std::vector<BigInt>>& out) const {
        const long long H = st_.height;
        std::size_t ne = st_.enumerate_vars.size();
        std::vector<long long> vals(ne, -H);
        if (ne == 0) {
            if (a == -H) solve_at({}, out);
            return;
        }
        vals[0] = a;
        for (;;) {
            solve_at(vals, out);
            std::size_t i = ne;
            bool carry = true;
            while (carry && i > 1) {
                --i;
                if (++vals[i] <= H) carry = false;
                else vals[i] = -H;
            }
            if (carry) return;
        }
    }

    void solve_at(const std::vector<long long>& vals, std::vector<std::vector<BigInt>>& out) const {
        if (fast_) solve_typed<__int128>(vals, out);
        else solve_typed<BigInt>(vals, out);
    }

    void prepare() {
        auto conv = [&](const std::vector<Poly>& ps, std::vector<detail::EnumPoly>& dst) {
            for (auto& p : ps) dst.push_back(detail::EnumPoly::from(p, st_.enumerate_vars));
        };
        conv(Rk_, eR_);
        conv(rk_, er_);
        conv(qk_, eq_);
        if (st_.eliminate_var >= 0) ec_ = detail::EnumPoly::from(c_, st_.enumerate_vars);
        // fast path whenever all intermediate quantities stay far below 2^127
        BigInt bound = ec_.bound(st_.height);
        for (auto* group : {&eR_, &er_, &eq_})
            for (auto& p : *group) bound = std::max(bound, p.bound(st_.height));
        static const BigInt limit = BigInt(1) << 56;
        fast_ = bound < limit && st_.height < (1LL << 20);
        max_pow_ = 0;
        for (auto* group : {&eR_, &er_, &eq_})
            for (auto& p : *group) max_pow_ = std::max(max_pow_, p.degree);
        max_pow_ = std::max(max_pow_, ec_.degree);
        for (auto& q : Qe_) max_pow_ = std::max(max_pow_, q.degree());
    }

    template <class Int>
    void solve_typed(const std::vector<long long>& vals, std::vector<std::vector<BigInt>>& out) const {
        const long long H = st_.height;
        std::vector<std::vector<Int>> pw(vals.size());
        for (std::size_t i = 0; i < vals.size(); ++i) {
            pw[i].push_back(1);
            for (int k = 1; k <= max_pow_; ++k) pw[i].push_back(pw[i].back() * Int(vals[i]));
        }
        auto ev = [&](const detail::EnumPoly& p) { return p.template eval<Int>(pw); };
        std::vector<BigInt> x(n_, 0);
        x[h_] = 1;
        for (std::size_t i = 0; i < vals.size(); ++i) x[st_.enumerate_vars[i]] = vals[i];
        const std::size_t q = static_cast<std::size_t>(st_.quadratic_var);
        auto emit = [&]() {
            for (std::size_t i = 0; i < n_; ++i)
                if (i != h_ && (x[i] > H || x[i] < -H)) return;
            for (auto& f : s_.forms)
                if (f.evaluate(x) != 0) return;
            out.push_back(x);
        };
        auto each_root = [&](const Int& a2, const Int& a1, const Int& a0, const std::function<void(const Int&)>& fn) {
            bool all = false;
            auto roots = detail::int_roots<Int>(a2, a1, a0, H, all);
            if (all)
                for (long long t = -H; t <= H; ++t) fn(Int(t));
            else
                for (auto& t : roots) fn(t);
        };
        if (st_.eliminate_var < 0) {
            each_root(ev(eq_[2]), ev(eq_[1]), ev(eq_[0]), [&](const Int& t) {
                x[q] = BigInt(t);
                emit();
            });
            return;
        }
        const std::size_t e = static_cast<std::size_t>(st_.eliminate_var);
        Int c = ev(ec_);
        if (c != 0) {
            Int r0 = ev(er_[0]), r1 = ev(er_[1]), r2 = ev(er_[2]);
            each_root(ev(eR_[2]), ev(eR_[1]), ev(eR_[0]), [&](const Int& t) {
                Int num = -(r0 + r1 * t + r2 * t * t);
                if (num % c != 0) return;
                x[q] = BigInt(t);
                x[e] = BigInt(num / c);
                emit();
            });
            return;
        }
        // linear coefficient vanishes: the linear equation constrains q alone
        each_root(ev(er_[2]), ev(er_[1]), ev(er_[0]), [&](const Int& t) {
            x[q] = BigInt(t);
            std::vector<BigInt> co;
            for (auto& qe : Qe_) {
                Poly p = qe.substitute(q, Poly::constant(n_, BigInt(t)));
                co.push_back(BigInt(detail::EnumPoly::from(p, st_.enumerate_vars).template eval<Int>(pw)));
            }
            while (co.size() < 3) co.push_back(0);
            bool all = false;
            auto roots = detail::int_roots<BigInt>(co[2], co[1], co[0], H, all);
            if (all) {
                for (long long u = -H; u <= H; ++u) {
                    x[e] = u;
                    emit();
                }
            } else {
                for (auto& u : roots) {
                    x[e] = u;
                    emit();
                }
            }
        });
    }

    const Scheme& s_;
    SearchStrategy st_;
    std::size_t n_ = 0, h_ = 0;
    std::vector<Poly> aff_;
    Poly c_, r_;
    std::vector<Poly> Rk_, rk_, qk_, Qe_;
    std::vector<detail::EnumPoly> eR_, er_, eq_;
    detail::EnumPoly ec_;
    bool fast_ = false;
    int max_pow_ = 0;
};

inline std::vector<ProjPoint> integral_point_search(const Scheme& s, const SearchStrategy& st, int workers = 1) {
    return PointSearch(s, st).run(workers);
}

/// First valid strategy, preferring a constant coefficient for the
/// eliminated variable.
inline SearchStrategy auto_strategy(const Scheme& s, long long H) {
    std::size_t n = s.nvars(), h = s.hyperplane_index;
    std::vector<int> vars;
    for (std::size_t v = 0; v < n; ++v) {
        bool used = false;
        for (auto& f : s.forms) used = used || f.involves(v);
        if (v != h && used) vars.push_back(static_cast<int>(v));
    }
    std::vector<SearchStrategy> good;
    auto try_it = [&](const SearchStrategy& st) {
        try {
            PointSearch ps(s, st);
            good.push_back(st);
        } catch (const std::invalid_argument&) {
        }
    };
    if (s.forms.size() == 1) {
        for (int q : vars) {
            SearchStrategy st;
            st.quadratic_var = q;
            st.quadratic_eq = 0;
            st.height = H;
            for (int v : vars)
                if (v != q) st.enumerate_vars.push_back(v);
            try_it(st);
        }
    } else {
        for (int le = 0; le < 2; ++le)
            for (int e : vars)
                for (int q : vars) {
                    if (q == e) continue;
                    SearchStrategy st;
                    st.eliminate_var = e;
                    st.linear_eq = le;
                    st.quadratic_var = q;
                    st.quadratic_eq = 1 - le;
                    st.height = H;
                    for (int v : vars)
                        if (v != q && v != e) st.enumerate_vars.push_back(v);
                    try_it(st);
                }
    }
    if (good.empty()) throw std::invalid_argument("no valid search strategy for " + s.name);
    std::size_t h_ = h;
    for (auto& st : good) {
        if (st.eliminate_var < 0) return st;
        Poly one = Poly::constant(n, 1);
        Poly L = s.forms[st.linear_eq].substitute(h_, one);
        if (L.coeff_in(st.eliminate_var, 1).degree() == 0) return st;
    }
    return good.front();
}

/// Independent oracle: nested loops over the whole box.
inline std::vector<ProjPoint> naive_point_search(const Scheme& s, long long H) {
    std::size_t n = s.nvars(), h = s.hyperplane_index;
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < n; ++v)
        if (v != h) vars.push_back(v);
    std::vector<std::vector<std::pair<long long, std::vector<int>>>> fs;
    for (auto& f : s.forms) {
        std::vector<std::pair<long long, std::vector<int>>> t;
        for (auto& [e, c] : f.terms()) t.push_back({c.convert_to<long long>(), e});
        fs.push_back(t);
    }
    std::vector<ProjPoint> out;
    std::vector<long long> x(n, -H);
    x[h] = 1;
    for (;;) {
        bool ok = true;
        for (auto& f : fs) {
            __int128 sum = 0;
            for (auto& [c, e] : f) {
                __int128 t = c;
                for (std::size_t i = 0; i < n; ++i)
                    for (int k = 0; k < e[i]; ++k) t *= x[i];
                sum += t;
            }
            if (sum != 0) {
                ok = false;
                break;
            }
        }
        if (ok) {
            std::vector<Rational> c;
            for (auto v : x) c.emplace_back(v);
            out.push_back(ProjPoint(c));
        }
        std::size_t i = vars.size();
        bool carry = true;
        while (carry && i > 0) {
            --i;
            if (++x[vars[i]] <= H) carry = false;
            else x[vars[i]] = -H;
        }
        if (carry) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Integral points on the hyperplane section V(l) of a two-quadric surface.
inline std::vector<ProjPoint> elliptic_section_points(const Scheme& s, const Poly& section, long long H) {
    std::size_t n = s.nvars(), h = s.hyperplane_index;
    if (section.nvars() != n || section.degree() != 1 || !section.is_homogeneous())
        throw std::invalid_argument("section must be a linear form in the ambient variables");
    int solved = -1;
    for (std::size_t v = 0; v < n; ++v) {
        if (v == h) continue;
        BigInt c = section.linear_coeff(v);
        if (c == 1 || c == -1) {
            solved = static_cast<int>(v);
            break;
        }
    }
    if (solved < 0) throw std::invalid_argument("section form needs a non-boundary variable with coefficient +-1");
    BigInt c = section.linear_coeff(solved);
    // X_solved = -c * (section - c X_solved)
    Poly rest = section - c * Poly::variable(n, solved);
    Poly expr = (-c) * rest;
    Scheme r = s;
    r.name = s.name + "_section";
    for (auto& f : r.forms) f = f.substitute(solved, expr);
    for (auto& f : r.forms)
        if (f.is_zero()) throw std::invalid_argument("section contains a component of the surface");
    // symbolic search on the restricted curve
    std::vector<Poly> nz;
    for (auto& f : r.forms)
        if (!f.is_zero()) nz.push_back(f);
    r.forms = nz;
    SearchStrategy st = auto_strategy(r, H);
    std::vector<ProjPoint> out;
    for (auto& p : integral_point_search(r, st)) {
        std::vector<Rational> x = p.coords();
        x[solved] = evaluate_form(expr, p);
        if (abs(x[solved]) > Rational(H)) continue;
        ProjPoint q(x);
        if (on_surface(s, q)) out.push_back(q);
    }
    std::sort(out.begin(), out.end());
    return out;
}

using Triple = std::vector<BigInt>;

/// c_{i+2} = A c_{i+1} + B c_i + t; every term must satisfy the cubic in the
/// chart X_h = 1 of `cubic`.
inline std::vector<Triple> recurrence_family(const Triple& seed1, const Triple& seed2, const BigInt& A, const BigInt& B,
                                             const Triple& t, int count, const Scheme& cubic) {
    if (count < 2) throw std::invalid_argument("recurrence needs at least the two seeds");
    std::vector<Triple> out{seed1, seed2};
    while (static_cast<int>(out.size()) < count) {
        const Triple& a = out[out.size() - 1];
        const Triple& b = out[out.size() - 2];
        Triple c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = A * a[i] + B * b[i] + t[i];
        out.push_back(c);
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        std::vector<Rational> aff;
        for (auto& x : out[i]) aff.emplace_back(x);
        if (!on_surface(cubic, ProjPoint::from_affine(aff, cubic.hyperplane_index)))
            throw std::domain_error("recurrence term " + std::to_string(i + 1) + " is not on " + cubic.name);
    }
    return out;
}

// ---------------------------------------------------------------- audits

struct Predicate {
    enum Kind { GcdGtOne, HilbertEq, Disjunction } kind = GcdGtOne;
    std::string name;
    std::vector<Poly> forms;           // two forms for gcd / hilbert
    std::vector<Place> places;         // hilbert: product over these places
    int expected = 1;
    std::vector<Predicate> children;   // disjunction
    std::vector<Poly> require_nonzero; // points where one of these vanishes are skipped
    friend bool operator==(const Predicate& a, const Predicate& b) {
        return a.kind == b.kind && a.name == b.name && a.forms == b.forms && a.places == b.places &&
               a.expected == b.expected && a.children == b.children && a.require_nonzero == b.require_nonzero;
    }
};

struct PredicateOutcome {
    enum Status { Holds, Fails, Skipped } status = Holds;
    std::string reason;
};

inline PredicateOutcome evaluate_predicate(const Predicate& pr, const ProjPoint& x, std::size_t h) {
    ProjPoint y = x.dehomogenized(h);
    for (auto& f : pr.require_nonzero)
        if (evaluate_form(f, y).is_zero()) return {PredicateOutcome::Skipped, "precondition " + f.str() + " = 0"};
    switch (pr.kind) {
        case Predicate::GcdGtOne: {
            Rational a = evaluate_form(pr.forms[0], y), b = evaluate_form(pr.forms[1], y);
            if (!a.is_integer() || !b.is_integer()) return {PredicateOutcome::Skipped, "non-integral gcd argument"};
            if (a.is_zero() && b.is_zero()) return {PredicateOutcome::Skipped, "gcd of zeros"};
            BigInt g = big_gcd(a.num(), b.num());
            if (g > 1) return {PredicateOutcome::Holds, "gcd " + g.str()};
            return {PredicateOutcome::Fails, "gcd " + g.str()};
        }
        case Predicate::HilbertEq: {
            Rational a = evaluate_form(pr.forms[0], y), b = evaluate_form(pr.forms[1], y);
            if (a.is_zero() || b.is_zero()) return {PredicateOutcome::Skipped, "zero symbol argument"};
            int prod = 1;
            for (auto& v : pr.places) prod *= hilbert_symbol(a, b, v);
            std::string r = "symbol " + std::to_string(prod);
            return {prod == pr.expected ? PredicateOutcome::Holds : PredicateOutcome::Fails, r};
        }
        case Predicate::Disjunction: {
            bool skipped = false;
            std::string why;
            for (auto& c : pr.children) {
                auto o = evaluate_predicate(c, y, h);
                if (!why.empty()) why += "; ";
                why += o.reason;
                if (o.status == PredicateOutcome::Holds) return {PredicateOutcome::Holds, why};
                if (o.status == PredicateOutcome::Skipped) skipped = true;
            }
            return {skipped ? PredicateOutcome::Skipped : PredicateOutcome::Fails, why};
        }
    }
    return {PredicateOutcome::Skipped, "unknown predicate"};
}

struct AuditReport {
    bool holds_for_all = true;
    std::size_t checked = 0;
    std::vector<std::pair<ProjPoint, std::string>> counterexamples;
    std::vector<std::pair<ProjPoint, std::string>> skipped;
};

inline AuditReport audit_predicate(const std::vector<ProjPoint>& points, const Predicate& pr, std::size_t h) {
    AuditReport r;
    for (auto& x : points) {
        auto o = evaluate_predicate(pr, x, h);
        if (o.status == PredicateOutcome::Skipped) {
            r.skipped.push_back({x, o.reason});
            continue;
        }
        ++r.checked;
        if (o.status == PredicateOutcome::Fails) {
            r.holds_for_all = false;
            r.counterexamples.push_back({x, o.reason});
        }
    }
    return r;
}

struct ResidueCertificate {
    bool holds = false;              // every class gives a symbol different from the predicate's
    std::uint64_t classes = 0;
    std::uint64_t undetermined = 0;  // symbol not fixed by the residue class
    std::map<int, std::uint64_t> values;
};

/// Exhausts the residues mod 2^bits of the affine source coordinates: if the
/// pulled-back symbol of `pr` (one place, p = 2) never equals pr.expected, no
/// integral point of the source maps to a point satisfying `pr`.
inline ResidueCertificate residue_symbol_certificate(const Scheme& source, const RationalMap& m, const Predicate& pr,
                                                     int bits = 3) {
    if (pr.kind != Predicate::HilbertEq || pr.places.size() != 1 || pr.places[0] != Place::prime(2))
        throw std::invalid_argument("certificate needs a 2-adic Hilbert-symbol predicate");
    if (bits < 3 || bits > 16) throw std::invalid_argument("certificate precision out of range");
    Poly F = pullback(pr.forms[0], m), G = pullback(pr.forms[1], m);
    std::size_t n = source.nvars(), h = source.hyperplane_index;
    Poly one = Poly::constant(n, 1);
    F = F.substitute(h, one);
    G = G.substitute(h, one);
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < n; ++v)
        if (v != h) vars.push_back(v);
    const long long mod = 1LL << bits;
    ResidueCertificate out;
    std::vector<BigInt> x(n, 0);
    x[h] = 1;
    std::vector<long long> r(vars.size(), 0);
    for (;;) {
        ++out.classes;
        for (std::size_t i = 0; i < vars.size(); ++i) x[vars[i]] = r[i];
        BigInt a = F.evaluate(x), b = G.evaluate(x);
        // the square class of a is fixed mod 2^bits once v(a) + 3 <= bits
        auto fixed = [&](const BigInt& z) {
            BigInt t = z % mod;
            if (t < 0) t += mod;
            return t != 0 && valuation(t, 2) + 3 <= bits;
        };
        if (!fixed(a) || !fixed(b)) {
            ++out.undetermined;
        } else {
            int s = hilbert_symbol(Rational(a), Rational(b), Place::prime(2));
            ++out.values[s];
        }
        std::size_t i = vars.size();
        bool carry = true;
        while (carry && i > 0) {
            --i;
            if (++r[i] < mod) carry = false;
            else r[i] = 0;
        }
        if (carry) break;
    }
    out.holds = out.undetermined == 0 && out.values.count(pr.expected) == 0;
    return out;
}

// ---------------------------------------------------------------- real place

/// Sign classifier for real components.
struct SignForm {
    std::string label;
    Poly form;
    std::optional<Poly> tiebreak;
    friend bool operator==(const SignForm& a, const SignForm& b) {
        return a.label == b.label && a.form == b.form && a.tiebreak == b.tiebreak;
    }
};

struct ComponentInfo {
    std::string label;  // sign pattern, e.g. "x0-,x0+x2+"
    std::string name;
    bool compact = false;
    friend bool operator==(const ComponentInfo& a, const ComponentInfo& b) {
        return a.label == b.label && a.name == b.name && a.compact == b.compact;
    }
};

struct ComponentClassifier {
    std::vector<SignForm> forms;
    std::vector<ComponentInfo> components;
    friend bool operator==(const ComponentClassifier& a, const ComponentClassifier& b) {
        return a.forms == b.forms && a.components == b.components;
    }

    /// Label of a real point given in the chart X_h = 1 (double coordinates).
    ComponentInfo classify(const std::vector<double>& x) const {
        std::string label;
        for (auto& sf : forms) {
            double v = sf.form.evaluate_double(x);
            if (std::fabs(v) < 1e-12 && sf.tiebreak) v = sf.tiebreak->evaluate_double(x);
            if (std::fabs(v) < 1e-12) return ComponentInfo{"UNCLASSIFIED", "UNCLASSIFIED", false};
            if (!label.empty()) label += ",";
            label += sf.label + (v > 0 ? "+" : "-");
        }
        for (auto& c : components)
            if (c.label == label) return c;
        return ComponentInfo{label, label, false};
    }
    ComponentInfo classify(const ProjPoint& p, std::size_t h) const {
        std::vector<double> x;
        ProjPoint y = p.dehomogenized(h);
        for (auto& c : y.coords()) x.push_back(c.to_double());
        return classify(x);
    }
};

struct Condition {
    enum Cmp { LE, LT, GE, GT } cmp = LE;
    Poly form;
    bool absolute = false;
    Rational bound = 0;
    friend bool operator==(const Condition& a, const Condition& b) {
        return a.cmp == b.cmp && a.form == b.form && a.absolute == b.absolute && a.bound == b.bound;
    }
    bool holds(const std::vector<double>& x, double tol) const {
        double v = form.evaluate_double(x);
        if (absolute) v = std::fabs(v);
        double b = bound.to_double();
        switch (cmp) {
            case LE: return v <= b + tol;
            case LT: return v < b + tol;
            case GE: return v >= b - tol;
            case GT: return v > b - tol;
        }
        return false;
    }
};

struct SamplerStep {
    int var = 0;
    int eq = 0;
    bool quadratic = false;
    friend bool operator==(const SamplerStep& a, const SamplerStep& b) {
        return a.var == b.var && a.eq == b.eq && a.quadratic == b.quadratic;
    }
};

/// Free coordinates drawn uniformly from boxes, the rest solved in order.
struct SamplerRecipe {
    std::vector<int> free_vars;
    std::vector<std::pair<Rational, Rational>> box;
    std::vector<SamplerStep> steps;
    friend bool operator==(const SamplerRecipe& a, const SamplerRecipe& b) {
        return a.free_vars == b.free_vars && a.box == b.box && a.steps == b.steps;
    }
};

/// premise (all) implies conclusion (any), optionally on one component.
struct InequalityWitness {
    std::string name;
    std::vector<Condition> premise;
    std::vector<Condition> conclusion;
    std::string component;  // component name or empty
    SamplerRecipe recipe;
    friend bool operator==(const InequalityWitness& a, const InequalityWitness& b) {
        return a.name == b.name && a.premise == b.premise && a.conclusion == b.conclusion && a.component == b.component &&
               a.recipe == b.recipe;
    }
};

struct WitnessReport {
    std::size_t samples = 0;
    std::size_t attempts = 0;
    std::size_t discarded = 0;         // sampler failures
    std::size_t off_component = 0;
    std::size_t premise_true = 0;
    std::size_t violations = 0;
    std::vector<std::vector<double>> examples;  // first few violations, chart coordinates
    double max_residual = 0;
};

inline WitnessReport real_witness_sample(const Scheme& s, const InequalityWitness& w, std::size_t n_samples,
                                         const ComponentClassifier* classifier = nullptr,
                                         std::uint64_t seed = 20240601) {
    std::size_t n = s.nvars(), h = s.hyperplane_index;
    std::mt19937_64 rng(seed);
    WitnessReport rep;
    std::vector<std::vector<Poly>> coeff(s.forms.size());
    const double tol = 1e-9;
    std::size_t max_attempts = n_samples * 1000 + 1000;
    while (rep.samples < n_samples && rep.attempts < max_attempts) {
        ++rep.attempts;
        std::vector<double> x(n, 0);
        x[h] = 1;
        for (std::size_t i = 0; i < w.recipe.free_vars.size(); ++i) {
            std::uniform_real_distribution<double> U(w.recipe.box[i].first.to_double(), w.recipe.box[i].second.to_double());
            x[w.recipe.free_vars[i]] = U(rng);
        }
        bool ok = true;
        for (auto& st : w.recipe.steps) {
            const Poly& f = s.forms[st.eq];
            double c0 = f.coeff_in(st.var, 0).evaluate_double(x);
            double c1 = f.coeff_in(st.var, 1).evaluate_double(x);
            double c2 = f.coeff_in(st.var, 2).evaluate_double(x);
            if (!st.quadratic || std::fabs(c2) < 1e-14) {
                if (std::fabs(c1) < 1e-12) {
                    ok = false;
                    break;
                }
                x[st.var] = -c0 / c1;
            } else {
                double D = c1 * c1 - 4 * c2 * c0;
                if (D < 0) {
                    ok = false;
                    break;
                }
                double sq = std::sqrt(D);
                x[st.var] = (rng() & 1) ? (-c1 + sq) / (2 * c2) : (-c1 - sq) / (2 * c2);
            }
        }
        if (ok) {
            double res = 0;
            for (auto& f : s.forms) res = std::max(res, std::fabs(f.evaluate_double(x)));
            if (res > tol) ok = false;
            else rep.max_residual = std::max(rep.max_residual, res);
        }
        if (!ok) {
            ++rep.discarded;
            continue;
        }
        if (!w.component.empty()) {
            if (!classifier) throw std::invalid_argument("witness " + w.name + " needs a component classifier");
            if (classifier->classify(x).name != w.component) {
                ++rep.off_component;
                continue;
            }
        }
        ++rep.samples;
        bool prem = true;
        for (auto& c : w.premise) prem = prem && c.holds(x, 0.0);
        if (!prem) continue;
        ++rep.premise_true;
        bool concl = w.conclusion.empty();
        for (auto& c : w.conclusion) concl = concl || c.holds(x, tol);
        if (!concl) {
            ++rep.violations;
            if (rep.examples.size() < 5) rep.examples.push_back(x);
        }
    }
    (void)coeff;
    return rep;
}

}  // namespace bmo
