#pragma once

#include "arith.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace bmo {

using Exponent = std::vector<int>;

/// Integer polynomial in a fixed number of variables X0..X{n-1}.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::size_t nvars) : nvars_(nvars) {}

    static Poly constant(std::size_t nvars, const BigInt& c) {
        Poly p(nvars);
        p.add_term(Exponent(nvars, 0), c);
        return p;
    }
    static Poly variable(std::size_t nvars, std::size_t i) {
        if (i >= nvars) throw std::out_of_range("variable index out of range");
        Poly p(nvars);
        Exponent e(nvars, 0);
        e[i] = 1;
        p.add_term(e, 1);
        return p;
    }
    /// Linear form sum c_i X_i.
    static Poly linear(const std::vector<long long>& c) {
        Poly p(c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i]) {
                Exponent e(c.size(), 0);
                e[i] = 1;
                p.add_term(e, c[i]);
            }
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    const std::map<Exponent, BigInt>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Exponent& e, const BigInt& c) {
        if (e.size() != nvars_) throw std::invalid_argument("exponent length mismatch");
        for (int x : e)
            if (x < 0) throw std::invalid_argument("negative exponent");
        if (c == 0) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    /// -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (auto& [e, c] : terms_) d = std::max(d, total(e));
        return d;
    }
    bool is_homogeneous() const {
        int d = -2;
        for (auto& [e, c] : terms_) {
            int t = total(e);
            if (d == -2) d = t;
            else if (t != d) return false;
        }
        return true;
    }
    int degree_in(std::size_t var) const {
        int d = -1;
        for (auto& [e, c] : terms_) d = std::max(d, e[var]);
        return d;
    }
    /// Coefficient of var^k, as a polynomial in the same variables (var absent).
    Poly coeff_in(std::size_t var, int k) const {
        Poly out(nvars_);
        for (auto& [e, c] : terms_)
            if (e[var] == k) {
                Exponent f = e;
                f[var] = 0;
                out.add_term(f, c);
            }
        return out;
    }
    bool involves(std::size_t var) const { return degree_in(var) > 0; }

    /// Coefficient of a degree-one form on X_i.
    BigInt linear_coeff(std::size_t i) const {
        Exponent e(nvars_, 0);
        e[i] = 1;
        auto it = terms_.find(e);
        return it == terms_.end() ? BigInt(0) : it->second;
    }
    BigInt coeff(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    Poly operator-() const {
        Poly r(nvars_);
        for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        check(a, b);
        Poly r = a;
        for (auto& [e, c] : b.terms_) r.add_term(e, c);
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        check(a, b);
        Poly r(a.nvars_);
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) {
                Exponent e(a.nvars_);
                for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        return r;
    }
    friend Poly operator*(const BigInt& k, const Poly& a) {
        Poly r(a.nvars_);
        if (k == 0) return r;
        for (auto& [e, c] : a.terms_) r.terms_.emplace(e, k * c);
        return r;
    }
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(int k) const {
        Poly r = constant(nvars_, 1), base = *this;
        while (k > 0) {
            if (k & 1) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    /// Replace X_var by q.
    Poly substitute(std::size_t var, const Poly& q) const {
        check(*this, q);
        Poly r(nvars_);
        std::map<int, Poly> powers;
        for (auto& [e, c] : terms_) {
            Exponent f = e;
            int k = f[var];
            f[var] = 0;
            Poly mono(nvars_);
            mono.add_term(f, c);
            if (k == 0) {
                r += mono;
                continue;
            }
            auto it = powers.find(k);
            if (it == powers.end()) it = powers.emplace(k, q.pow(k)).first;
            r += mono * it->second;
        }
        return r;
    }

    /// X_i -> comps[i]; result lives in the variables of comps.
    Poly compose(const std::vector<Poly>& comps) const {
        if (comps.size() != nvars_) throw std::invalid_argument("compose: arity mismatch");
        std::size_t m = comps.empty() ? 0 : comps[0].nvars();
        Poly r(m);
        for (auto& [e, c] : terms_) {
            Poly t = constant(m, c);
            for (std::size_t i = 0; i < nvars_; ++i)
                if (e[i]) t *= comps[i].pow(e[i]);
            r += t;
        }
        return r;
    }

    template <class T>
    T evaluate(const std::vector<T>& x) const {
        if (x.size() != nvars_) throw std::invalid_argument("evaluate: dimension mismatch");
        T sum = T(0);
        for (auto& [e, c] : terms_) {
            T t = T(c);
            for (std::size_t i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) t = t * x[i];
            sum = sum + t;
        }
        return sum;
    }

    double evaluate_double(const std::vector<double>& x) const {
        if (x.size() != nvars_) throw std::invalid_argument("evaluate: dimension mismatch");
        double sum = 0;
        for (auto& [e, c] : terms_) {
            double t = c.convert_to<double>();
            for (std::size_t i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k) t *= x[i];
            sum += t;
        }
        return sum;
    }

    /// Human-readable form, e.g. "X0*X1 + X2^2 - X3*X4".
    std::string str(char letter = 'X') const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            BigInt a = c < 0 ? BigInt(-c) : c;
            if (first) {
                if (c < 0) os << "-";
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            first = false;
            bool constant_term = total(e) == 0;
            bool wrote = false;
            if (a != 1 || constant_term) {
                os << a;
                wrote = true;
            }
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (!e[i]) continue;
                if (wrote) os << "*";
                os << letter << i;
                if (e[i] > 1) os << "^" << e[i];
                wrote = true;
            }
        }
        return os.str();
    }

    /// Parses expressions such as "X0*X1+X2^2-X4*X3" or "2*(X0+X2)".  Any
    /// letter may prefix the variable index.
    static Poly parse(const std::string& s, std::size_t nvars) {
        Parser ps{s, 0, nvars};
        Poly p = ps.expr();
        ps.skip();
        if (ps.i != s.size()) throw std::invalid_argument("trailing input in polynomial '" + s + "'");
        return p;
    }

private:
    static int total(const Exponent& e) {
        int t = 0;
        for (int x : e) t += x;
        return t;
    }
    static void check(const Poly& a, const Poly& b) {
        if (a.nvars_ != b.nvars_) throw std::invalid_argument("polynomial arity mismatch");
    }

    struct Parser {
        const std::string& s;
        std::size_t i;
        std::size_t n;

        void skip() {
            while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        }
        [[noreturn]] void fail() const {
            throw std::invalid_argument("cannot parse polynomial '" + s + "' at offset " + std::to_string(i));
        }
        Poly expr() {
            skip();
            bool neg = false;
            if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
                neg = s[i] == '-';
                ++i;
            }
            Poly r = term();
            if (neg) r = -r;
            for (;;) {
                skip();
                if (i >= s.size() || (s[i] != '+' && s[i] != '-')) break;
                char op = s[i++];
                Poly t = term();
                r = op == '+' ? r + t : r - t;
            }
            return r;
        }
        Poly term() {
            Poly r = factor();
            for (;;) {
                skip();
                if (i >= s.size() || s[i] != '*') break;
                ++i;
                r = r * factor();
            }
            return r;
        }
        Poly factor() {
            Poly a = atom();
            skip();
            if (i < s.size() && s[i] == '^') {
                ++i;
                skip();
                std::size_t b = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (b == i) fail();
                a = a.pow(std::stoi(s.substr(b, i - b)));
            }
            return a;
        }
        Poly atom() {
            skip();
            if (i >= s.size()) fail();
            char c = s[i];
            if (c == '(') {
                ++i;
                Poly r = expr();
                skip();
                if (i >= s.size() || s[i] != ')') fail();
                ++i;
                return r;
            }
            if (c == '-') {
                ++i;
                return -factor();
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::size_t b = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                return constant(n, BigInt(s.substr(b, i - b)));
            }
            if (std::isalpha(static_cast<unsigned char>(c))) {
                ++i;
                std::size_t b = i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                if (b == i) fail();
                std::size_t idx = std::stoul(s.substr(b, i - b));
                if (idx >= n) throw std::invalid_argument("variable index out of range in '" + s + "'");
                return variable(n, idx);
            }
            fail();
        }
    };

    std::size_t nvars_ = 0;
    std::map<Exponent, BigInt> terms_;
};

}  // namespace bmo
