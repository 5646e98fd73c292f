#pragma once

#include "arith.hpp"

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

namespace bmo {

/// Dense univariate polynomial over Q; c[i] is the coefficient of t^i.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

    static UPoly monomial(const Rational& a, int k) {
        std::vector<Rational> c(k + 1);
        c[k] = a;
        return UPoly(c);
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : Rational(0); }
    Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

    Rational operator()(const Rational& t) const {
        Rational r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * t + *it;
        return r;
    }

    friend UPoly operator+(const UPoly& a, const UPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
        return UPoly(c);
    }
    friend UPoly operator-(const UPoly& a, const UPoly& b) {
        std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) - b.coeff(i);
        return UPoly(c);
    }
    friend UPoly operator*(const UPoly& a, const UPoly& b) {
        if (a.is_zero() || b.is_zero()) return UPoly();
        std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return UPoly(c);
    }
    friend UPoly operator*(const Rational& k, const UPoly& a) {
        std::vector<Rational> c = a.c_;
        for (auto& x : c) x *= k;
        return UPoly(c);
    }
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

    /// Returns (quotient, remainder).
    static std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        std::vector<Rational> r = a.c_;
        int db = b.degree();
        if (a.degree() < db) return {UPoly(), a};
        std::vector<Rational> q(a.degree() - db + 1);
        for (int i = a.degree(); i >= db; --i) {
            Rational f = r[i] / b.lead();
            q[i - db] = f;
            if (f.is_zero()) continue;
            for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b.c_[j];
        }
        return {UPoly(q), UPoly(r)};
    }

    UPoly monic() const {
        if (is_zero()) return *this;
        return (Rational(1) / lead()) * *this;
    }

    static UPoly gcd(UPoly a, UPoly b) {
        while (!b.is_zero()) {
            UPoly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    UPoly derivative() const {
        if (c_.size() <= 1) return UPoly();
        std::vector<Rational> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rational(static_cast<long long>(i));
        return UPoly(c);
    }

    bool is_squarefree() const { return degree() <= 0 || gcd(*this, derivative()).degree() == 0; }

    /// Yun's algorithm: factors[i] is the product of the irreducible factors
    /// of multiplicity i+1 (monic).
    std::vector<UPoly> squarefree_decomposition() const {
        std::vector<UPoly> out;
        if (degree() <= 0) return out;
        UPoly f = monic();
        UPoly a = gcd(f, f.derivative());
        UPoly b = divmod(f, a).first;
        UPoly c = divmod(f.derivative(), a).first;
        UPoly d = c - b.derivative();
        while (b.degree() > 0) {
            UPoly g = gcd(b, d);
            out.push_back(g);
            b = divmod(b, g).first;
            c = divmod(d, g).first;
            d = c - b.derivative();
        }
        while (!out.empty() && out.back().degree() == 0) out.pop_back();
        return out;
    }

    /// Sturm sequence p, p', -rem(...), ...
    std::vector<UPoly> sturm() const {
        std::vector<UPoly> s{*this, derivative()};
        while (!s.back().is_zero()) {
            UPoly r = divmod(s[s.size() - 2], s.back()).second;
            if (r.is_zero()) break;
            s.push_back(Rational(-1) * r);
        }
        return s;
    }

    /// Number of distinct real roots in (a, b]; requires a square-free input
    /// for multiplicity-free counting.
    int roots_in(const Rational& a, const Rational& b) const {
        auto s = sturm();
        return variations(s, a) - variations(s, b);
    }

    int real_root_count() const {
        auto s = sturm();
        return variations_at_inf(s, false) - variations_at_inf(s, true);
    }

    /// Cauchy bound for all real roots.
    Rational root_bound() const {
        Rational m(0);
        for (int i = 0; i < degree(); ++i) m = std::max(m, abs(c_[i] / lead()));
        return m + Rational(1);
    }

    /// Disjoint isolating intervals (lo, hi], one per distinct real root,
    /// in increasing order.
    std::vector<std::pair<Rational, Rational>> isolate_real_roots() const {
        std::vector<std::pair<Rational, Rational>> out;
        if (degree() <= 0) return out;
        UPoly f = *this;
        if (!f.is_squarefree()) f = divmod(f, gcd(f, f.derivative())).first;
        auto s = f.sturm();
        Rational B = f.root_bound();
        std::vector<std::pair<Rational, Rational>> stack{{-B, B}};
        while (!stack.empty()) {
            auto [lo, hi] = stack.back();
            stack.pop_back();
            int n = variations(s, lo) - variations(s, hi);
            if (n == 0) continue;
            if (n == 1) {
                out.push_back({lo, hi});
                continue;
            }
            Rational mid = (lo + hi) / Rational(2);
            stack.push_back({lo, mid});
            stack.push_back({mid, hi});
        }
        std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.first < y.first; });
        return out;
    }

    /// Integer-coefficient rational roots via the rational root theorem.
    /// Returns nullopt if the coefficients are too large to factor by trial division.
    std::optional<std::vector<Rational>> rational_roots() const {
        std::vector<Rational> out;
        if (degree() <= 0) return out;
        // clear denominators
        BigInt l = 1;
        for (auto& x : c_) l = l / big_gcd(l, x.den()) * x.den();
        std::vector<BigInt> a;
        for (auto& x : c_) a.push_back((x * Rational(l)).num());
        std::size_t low = 0;
        while (a[low] == 0) ++low;
        if (low > 0) out.push_back(Rational(0));
        const BigInt limit("1000000000000");
        auto small = [&](const BigInt& x) { return (x < 0 ? BigInt(-x) : x) <= limit; };
        if (!small(a[low]) || !small(a.back())) return std::nullopt;
        auto divisors = [](BigInt n) {
            if (n < 0) n = -n;
            std::vector<BigInt> d;
            for (BigInt i = 1; i * i <= n; ++i)
                if (n % i == 0) {
                    d.push_back(i);
                    if (i * i != n) d.push_back(n / i);
                }
            return d;
        };
        for (auto& num : divisors(a[low]))
            for (auto& den : divisors(a.back()))
                for (int sg : {1, -1}) {
                    Rational r(sg * num, den);
                    if ((*this)(r).is_zero() &&
                        std::find(out.begin(), out.end(), r) == out.end())
                        out.push_back(r);
                }
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    static int sign_changes(const std::vector<int>& signs) {
        int v = 0, last = 0;
        for (int s : signs) {
            if (s == 0) continue;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    }
    static int variations(const std::vector<UPoly>& s, const Rational& x) {
        std::vector<int> sg;
        for (auto& p : s) sg.push_back(p(x).sign());
        return sign_changes(sg);
    }
    static int variations_at_inf(const std::vector<UPoly>& s, bool plus) {
        std::vector<int> sg;
        for (auto& p : s) {
            int l = p.lead().sign();
            if (!plus && p.degree() % 2 == 1) l = -l;
            sg.push_back(l);
        }
        return sign_changes(sg);
    }

    std::vector<Rational> c_;
};

}  // namespace bmo
