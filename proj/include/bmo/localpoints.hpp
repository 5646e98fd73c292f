#pragma once

#include "arith.hpp"
#include "brauer.hpp"
#include "geometry.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace bmo {

namespace detail {

/// Polynomial with machine-word coefficients, evaluated modulo m < 2^62.
struct ModPoly {
    struct Term {
        long long c;
        std::vector<int> e;
    };
    std::vector<Term> terms;

    static ModPoly from(const Poly& f, const std::vector<std::size_t>& vars) {
        ModPoly m;
        for (auto& [e, c] : f.terms()) {
            if (c > BigInt(std::numeric_limits<long long>::max() / 4) || c < BigInt(std::numeric_limits<long long>::min() / 4))
                throw std::domain_error("coefficient too large for modular evaluation");
            Term t{c.convert_to<long long>(), {}};
            for (auto v : vars) t.e.push_back(e[v]);
            m.terms.push_back(t);
        }
        return m;
    }

    std::uint64_t eval(const std::vector<std::uint64_t>& x, std::uint64_t m) const {
        unsigned __int128 s = 0;
        for (auto& t : terms) {
            long long c = t.c % static_cast<long long>(m);
            if (c < 0) c += static_cast<long long>(m);
            unsigned __int128 v = static_cast<std::uint64_t>(c);
            for (std::size_t i = 0; i < t.e.size(); ++i)
                for (int k = 0; k < t.e[i]; ++k) v = v * x[i] % m;
            s = (s + v) % m;
        }
        return static_cast<std::uint64_t>(s);
    }
};

inline int val_mod(std::uint64_t r, std::uint64_t p, int k) {
    if (r == 0) return k;
    int v = 0;
    while (r % p == 0) {
        r /= p;
        ++v;
    }
    return v;
}

}  // namespace detail

/// Solution modulo p^k of the affine equations in the chart X_h = 1.
struct ResiduePoint {
    std::vector<std::uint64_t> coords;  // the non-hyperplane coordinates, in order
    int precision = 0;
    int minor_valuation = 0;  // smallest valuation of a maximal Jacobian minor (capped at k)
    bool liftable = false;    // some maximal minor is a p-adic unit

    /// Hensel: a Z_p-point exists congruent to coords mod p^{k-e}.
    bool certified() const { return minor_valuation < precision && precision >= 2 * minor_valuation + 1; }
};

/// Affine system for local work.
class LocalSystem {
public:
    LocalSystem(const Scheme& s, std::uint64_t p) : s_(s), p_(p) {
        require_prime(p);
        for (std::size_t i = 0; i < s.nvars(); ++i)
            if (i != s.hyperplane_index) vars_.push_back(i);
        std::size_t h = s.hyperplane_index;
        for (auto& f : s.forms) {
            Poly a = f.substitute(h, Poly::constant(s.nvars(), 1));
            eqs_.push_back(detail::ModPoly::from(a, vars_));
            std::vector<detail::ModPoly> row;
            for (auto v : vars_) row.push_back(detail::ModPoly::from(derivative(a, v), vars_));
            jac_.push_back(row);
        }
    }

    std::size_t dim() const { return vars_.size(); }
    std::uint64_t p() const { return p_; }
    const std::vector<std::size_t>& vars() const { return vars_; }
    const Scheme& scheme() const { return s_; }

    bool solves(const std::vector<std::uint64_t>& x, std::uint64_t m) const {
        for (auto& e : eqs_)
            if (e.eval(x, m) != 0) return false;
        return true;
    }

    /// Minimal valuation of the maximal minors of the Jacobian, capped at k.
    int minor_valuation(const std::vector<std::uint64_t>& x, int k) const {
        std::uint64_t m = ipow(p_, k);
        std::size_t r = eqs_.size(), n = vars_.size();
        std::vector<std::vector<std::uint64_t>> J(r, std::vector<std::uint64_t>(n));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < n; ++j) J[i][j] = jac_[i][j].eval(x, m);
        int best = k;
        if (r == 1) {
            for (std::size_t j = 0; j < n; ++j) best = std::min(best, detail::val_mod(J[0][j], p_, k));
        } else if (r == 2) {
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = a + 1; b < n; ++b) {
                    unsigned __int128 t1 = static_cast<unsigned __int128>(J[0][a]) * J[1][b] % m;
                    unsigned __int128 t2 = static_cast<unsigned __int128>(J[0][b]) * J[1][a] % m;
                    std::uint64_t d = static_cast<std::uint64_t>((t1 + m - t2) % m);
                    best = std::min(best, detail::val_mod(d, p_, k));
                }
        } else {
            throw std::invalid_argument("local analysis supports one or two equations");
        }
        return best;
    }

    ResiduePoint make_point(const std::vector<std::uint64_t>& x, int k) const {
        ResiduePoint rp;
        rp.coords = x;
        rp.precision = k;
        rp.minor_valuation = minor_valuation(x, k);
        rp.liftable = rp.minor_valuation == 0;
        return rp;
    }

    /// Solutions mod p^{k+1} reducing to x mod p^k.
    std::vector<std::vector<std::uint64_t>> children(const std::vector<std::uint64_t>& x, int k,
                                                     std::uint64_t& work) const {
        std::vector<std::vector<std::uint64_t>> out;
        std::uint64_t pk = ipow(p_, k), m = pk * p_;
        std::size_t n = x.size();
        std::vector<std::uint64_t> t(n, 0), y(n);
        for (;;) {
            for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + pk * t[i];
            ++work;
            if (solves(y, m)) out.push_back(y);
            std::size_t i = n;
            while (i > 0) {
                --i;
                if (++t[i] < p_) break;
                t[i] = 0;
                if (i == 0) return out;
            }
        }
    }

    static std::uint64_t ipow(std::uint64_t p, int k) {
        std::uint64_t r = 1;
        for (int i = 0; i < k; ++i) {
            if (r > (std::uint64_t(1) << 62) / p) throw std::domain_error("precision budget exceeded");
            r *= p;
        }
        return r;
    }

private:
    static Poly derivative(const Poly& f, std::size_t v) {
        Poly d(f.nvars());
        for (auto& [e, c] : f.terms()) {
            if (e[v] == 0) continue;
            Exponent g = e;
            g[v] -= 1;
            d.add_term(g, c * e[v]);
        }
        return d;
    }

    const Scheme& s_;
    std::uint64_t p_;
    std::vector<std::size_t> vars_;
    std::vector<detail::ModPoly> eqs_;
    std::vector<std::vector<detail::ModPoly>> jac_;
};

struct LocalOptions {
    int cap = 8;                             // precision cap K
    std::uint64_t budget = 1000000000ULL;    // residue tuples examined
};

/// All solutions mod p^k, lexicographically ordered, built level by level.
inline std::vector<ResiduePoint> enumerate_residue_points(const Scheme& s, std::uint64_t p, int k,
                                                          const LocalOptions& opt = {}) {
    if (k < 1) throw std::invalid_argument("precision must be at least 1");
    LocalSystem sys(s, p);
    std::uint64_t work = 0;
    std::vector<std::vector<std::uint64_t>> level;
    {
        std::size_t n = sys.dim();
        long double total = 1;
        for (std::size_t i = 0; i < n; ++i) total *= static_cast<long double>(p);
        if (total > static_cast<long double>(opt.budget)) throw std::domain_error("precision budget exceeded");
        std::vector<std::uint64_t> t(n, 0);
        bool done = false;
        while (!done) {
            ++work;
            if (sys.solves(t, p)) level.push_back(t);
            std::size_t i = n;
            done = true;
            while (i > 0) {
                --i;
                if (++t[i] < p) {
                    done = false;
                    break;
                }
                t[i] = 0;
            }
        }
    }
    for (int j = 1; j < k; ++j) {
        std::vector<std::vector<std::uint64_t>> next;
        for (auto& x : level) {
            auto ch = sys.children(x, j, work);
            next.insert(next.end(), ch.begin(), ch.end());
            if (work > opt.budget) throw std::domain_error("precision budget exceeded");
        }
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }
    std::vector<ResiduePoint> out;
    for (auto& x : level) out.push_back(sys.make_point(x, k));
    return out;
}

struct Solubility {
    enum Status { Soluble, Insoluble, Unknown } status = Unknown;
    std::optional<ResiduePoint> witness;
    int level = 0;  // precision at which the decision was made
};

inline std::string status_name(Solubility::Status s) {
    switch (s) {
        case Solubility::Soluble: return "SOLUBLE";
        case Solubility::Insoluble: return "INSOLUBLE";
        default: return "UNKNOWN";
    }
}

/// Z_p-points of the integral model of U.
inline Solubility zp_solubility(const Scheme& s, std::uint64_t p, const LocalOptions& opt = {}) {
    LocalSystem sys(s, p);
    Solubility out;
    std::uint64_t work = 0;
    std::vector<std::vector<std::uint64_t>> level;
    for (auto& rp : enumerate_residue_points(s, p, 1, opt)) level.push_back(rp.coords);
    for (int k = 1; k <= opt.cap; ++k) {
        out.level = k;
        if (level.empty()) {
            out.status = Solubility::Insoluble;
            return out;
        }
        for (auto& x : level) {
            ResiduePoint rp = sys.make_point(x, k);
            if (rp.certified()) {
                out.status = Solubility::Soluble;
                out.witness = rp;
                return out;
            }
        }
        if (k == opt.cap) break;
        std::vector<std::vector<std::uint64_t>> next;
        for (auto& x : level) {
            auto ch = sys.children(x, k, work);
            next.insert(next.end(), ch.begin(), ch.end());
            if (work > opt.budget) return out;
        }
        std::sort(next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

// ---------------------------------------------------------------- sweeps

struct SweepSummary {
    bool constant = false;
    std::map<std::string, std::uint64_t> values;  // "0" / "1/2" -> number of residue classes
    std::uint64_t indeterminate = 0;              // support-limited classes left at the cap
    std::uint64_t previous_indeterminate = 0;     // same count one level before the cap
    std::uint64_t unresolved_singular = 0;        // classes without a Hensel certificate at the cap
    bool shrinking = false;                       // undetermined part loses measure at the last level
    std::vector<ResiduePoint> indeterminate_points;
    int start = 0, cap = 0;
};

namespace detail {

struct ModForm {
    ModPoly num, den;
};

/// Class value on a certified residue ball of radius p^{-m}; nullopt if the
/// symbol is not determined at that precision.
inline std::optional<Rational> value_on_ball(const std::vector<std::vector<std::pair<ModForm, ModForm>>>& reps,
                                             const std::vector<std::uint64_t>& x, std::uint64_t p, int m) {
    if (m <= 0) return std::nullopt;
    std::uint64_t pm = LocalSystem::ipow(p, m);
    int slack = p == 2 ? 3 : 1;
    auto square_class = [&](const ModForm& f, Rational& out) {
        std::uint64_t a = f.num.eval(x, pm), b = f.den.eval(x, pm);
        int va = val_mod(a, p, m), vb = val_mod(b, p, m);
        if (va + slack > m || vb + slack > m) return false;
        // f = a/b and a*b share a square class
        out = Rational(BigInt(a) * BigInt(b));
        return true;
    };
    Place v = Place::prime(p);
    for (auto& rep : reps) {
        Rational total(0);
        bool ok = true;
        for (auto& [f, g] : rep) {
            Rational fv, gv;
            if (!square_class(f, fv) || !square_class(g, gv)) {
                ok = false;
                break;
            }
            total = add_mod1(total, half_if(hilbert_symbol(fv, gv, v) == -1));
        }
        if (ok) return total;
    }
    return std::nullopt;
}

}  // namespace detail

/// Adaptive residue-class sweep of ev_c over U(Z_p): start at precision k,
/// refine undetermined classes up to opt.cap.
inline SweepSummary sweep_evaluation(const Scheme& s, const SymbolClass& c, std::uint64_t p, int k,
                                     const LocalOptions& opt = {}) {
    LocalSystem sys(s, p);
    SweepSummary out;
    out.start = k;
    out.cap = std::max(k, opt.cap);
    std::vector<std::vector<std::pair<detail::ModForm, detail::ModForm>>> reps;
    for (auto& rep : c.reps) {
        std::vector<std::pair<detail::ModForm, detail::ModForm>> r;
        for (auto& sym : rep) {
            auto mf = [&](const RatForm& f) {
                std::size_t h = s.hyperplane_index;
                Poly one = Poly::constant(s.nvars(), 1);
                return detail::ModForm{detail::ModPoly::from(f.num.substitute(h, one), sys.vars()),
                                       detail::ModPoly::from(f.den.substitute(h, one), sys.vars())};
            };
            r.push_back({mf(sym.f), mf(sym.g)});
        }
        reps.push_back(r);
    }

    std::uint64_t work = 0;
    std::vector<std::vector<std::uint64_t>> level;
    for (auto& rp : enumerate_residue_points(s, p, k, opt)) level.push_back(rp.coords);
    for (int j = k; j <= out.cap; ++j) {
        std::vector<std::vector<std::uint64_t>> pending;
        std::uint64_t indeterminate_here = 0;
        for (auto& x : level) {
            ResiduePoint rp = sys.make_point(x, j);
            if (!rp.certified()) {
                if (j == out.cap) ++out.unresolved_singular;
                else pending.push_back(x);
                continue;
            }
            auto val = detail::value_on_ball(reps, x, p, j - rp.minor_valuation);
            if (val) {
                ++out.values[val->str()];
                continue;
            }
            ++indeterminate_here;
            if (j == out.cap) {
                ++out.indeterminate;
                out.indeterminate_points.push_back(rp);
            } else {
                pending.push_back(x);
            }
        }
        if (j == out.cap - 1) out.previous_indeterminate = indeterminate_here;
        if (j == out.cap) break;
        std::vector<std::vector<std::uint64_t>> next;
        for (auto& x : pending) {
            auto ch = sys.children(x, j, work);
            next.insert(next.end(), ch.begin(), ch.end());
            if (work > opt.budget) throw std::domain_error("precision budget exceeded");
        }
        std::sort(next.begin(), next.end());
        level = std::move(next);
        if (level.empty()) break;
    }
    // A class at level j is a ball of measure p^{-j*dim}.  Classes still
    // undetermined at the cap must cover a shrinking part of U(Z_p), so their
    // count has to grow by less than p^dim over the last level.
    std::uint64_t growth = LocalSystem::ipow(p, static_cast<int>(sys.dim() - s.forms.size()));
    bool isolated = out.indeterminate == 0 ||
                    (out.cap > out.start && out.indeterminate < out.previous_indeterminate * growth);
    out.shrinking = isolated;
    out.constant = out.values.size() == 1 && out.unresolved_singular == 0 && isolated;
    return out;
}

// ---------------------------------------------------------------- census

struct Census {
    std::uint64_t count = 0;
    std::uint64_t nonvanishing = 0;
    std::uint64_t square_ratio = 0;
};

/// F_p-points of D = V(X_h) on the reduction, by a scan of P^{n-1}(F_p).
inline Census boundary_census(const Scheme& s, std::uint64_t p, std::size_t i, std::size_t j) {
    require_prime(p);
    std::size_t h = s.hyperplane_index, n = s.nvars();
    if (i >= n || j >= n || i == h || j == h) throw std::invalid_argument("census pair must avoid the hyperplane coordinate");
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v < n; ++v)
        if (v != h) vars.push_back(v);
    std::vector<detail::ModPoly> eqs;
    for (auto& f : s.forms) eqs.push_back(detail::ModPoly::from(f.substitute(h, Poly::constant(n, 0)), vars));
    Census c;
    std::size_t m = vars.size();
    std::size_t ii = std::find(vars.begin(), vars.end(), i) - vars.begin();
    std::size_t jj = std::find(vars.begin(), vars.end(), j) - vars.begin();
    // points with first nonzero coordinate equal to 1
    for (std::size_t lead = 0; lead < m; ++lead) {
        std::vector<std::uint64_t> x(m, 0);
        x[lead] = 1;
        std::size_t free = m - lead - 1;
        std::uint64_t total = 1;
        for (std::size_t t = 0; t < free; ++t) total *= p;
        for (std::uint64_t code = 0; code < total; ++code) {
            std::uint64_t r = code;
            for (std::size_t t = m; t-- > lead + 1;) {
                x[t] = r % p;
                r /= p;
            }
            bool ok = true;
            for (auto& e : eqs)
                if (e.eval(x, p) != 0) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            ++c.count;
            if (x[ii] != 0 && x[jj] != 0) {
                ++c.nonvanishing;
                if (p == 2 || legendre_symbol(BigInt(x[ii] * x[jj]), p) == 1) ++c.square_ratio;
            }
        }
    }
    return c;
}

}  // namespace bmo
