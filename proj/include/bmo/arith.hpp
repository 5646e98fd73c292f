#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>

namespace bmo {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt big_gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// Floor of the square root; exact flag reports whether n is a perfect square.
inline BigInt isqrt(const BigInt& n, bool* exact = nullptr) {
    if (n < 0) throw std::domain_error("isqrt of negative number");
    BigInt r = boost::multiprecision::sqrt(n);
    if (exact) *exact = (r * r == n);
    return r;
}

/// Reduced fraction with positive denominator.
class Rational {
public:
    Rational() : num_(0), den_(1) {}
    Rational(long long n) : num_(n), den_(1) {}
    Rational(const BigInt& n) : num_(n), den_(1) {}
    Rational(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) { normalize(); }

    const BigInt& num() const { return num_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }
    int sign() const { return num_ < 0 ? -1 : (num_ > 0 ? 1 : 0); }

    /// Accepts "a", "-a", "a/b".
    static Rational parse(const std::string& s) {
        auto trim = [](std::string t) {
            size_t b = t.find_first_not_of(" \t");
            size_t e = t.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : t.substr(b, e - b + 1);
        };
        std::string t = trim(s);
        auto slash = t.find('/');
        auto parse_int = [&](const std::string& x) {
            std::string y = trim(x);
            if (y.empty()) throw std::invalid_argument("cannot parse rational '" + s + "'");
            size_t i = (y[0] == '-' || y[0] == '+') ? 1 : 0;
            if (i == y.size()) throw std::invalid_argument("cannot parse rational '" + s + "'");
            for (size_t j = i; j < y.size(); ++j)
                if (y[j] < '0' || y[j] > '9') throw std::invalid_argument("cannot parse rational '" + s + "'");
            if (y[0] == '+') y = y.substr(1);
            return BigInt(y);
        };
        if (slash == std::string::npos) return Rational(parse_int(t));
        BigInt d = parse_int(t.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
        return Rational(parse_int(t.substr(0, slash)), d);
    }

    std::string str() const {
        if (den_ == 1) return num_.str();
        return num_.str() + "/" + den_.str();
    }

    Rational operator-() const { return Rational(-num_, den_, raw_tag{}); }
    friend Rational operator+(const Rational& a, const Rational& b) {
        if (a.den_ == 1 && b.den_ == 1) return Rational(a.num_ + b.num_);
        return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator-(const Rational& a, const Rational& b) {
        if (a.den_ == 1 && b.den_ == 1) return Rational(a.num_ - b.num_);
        return Rational(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend Rational operator*(const Rational& a, const Rational& b) {
        if (a.den_ == 1 && b.den_ == 1) return Rational(a.num_ * b.num_);
        return Rational(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend Rational operator/(const Rational& a, const Rational& b) {
        if (b.num_ == 0) throw std::domain_error("division by zero");
        return Rational(a.num_ * b.den_, a.den_ * b.num_);
    }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }
    Rational& operator/=(const Rational& o) { return *this = *this / o; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b) { return a.num_ * b.den_ < b.num_ * a.den_; }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

    double to_double() const { return num_.convert_to<double>() / den_.convert_to<double>(); }

private:
    struct raw_tag {};
    Rational(BigInt n, BigInt d, raw_tag) : num_(std::move(n)), den_(std::move(d)) {}

    void normalize() {
        if (den_ == 0) throw std::domain_error("zero denominator");
        if (den_ < 0) {
            num_ = -num_;
            den_ = -den_;
        }
        BigInt g = big_gcd(num_, den_);
        if (g != 1) {
            num_ /= g;
            den_ /= g;
        }
    }

    BigInt num_, den_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

inline Rational pow(const Rational& r, long long e) {
    if (e < 0) {
        if (r.is_zero()) throw std::domain_error("negative power of zero");
        return pow(Rational(1) / r, -e);
    }
    Rational out(1), base = r;
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

// ---------------------------------------------------------------- primes

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

/// Deterministic for all 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static const std::uint64_t small[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto q : small) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (auto a : small) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline void require_prime(std::uint64_t p) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
}

/// A place of Q: a finite prime or the real place.
struct Place {
    bool real = true;
    std::uint64_t p = 0;

    static Place real_place() { return Place{}; }
    static Place prime(std::uint64_t q) {
        require_prime(q);
        return Place{false, q};
    }
    /// "real", "inf" or a prime.
    static Place parse(const std::string& s) {
        if (s == "real" || s == "inf" || s == "infinity" || s == "oo") return real_place();
        if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
            throw std::invalid_argument("bad place '" + s + "'");
        return prime(std::stoull(s));
    }
    std::string str() const { return real ? "real" : std::to_string(p); }
    friend bool operator==(const Place& a, const Place& b) { return a.real == b.real && a.p == b.p; }
    friend bool operator<(const Place& a, const Place& b) {
        if (a.real != b.real) return !a.real;
        return a.p < b.p;
    }
};

// ---------------------------------------------------------------- valuations

inline int valuation(BigInt n, std::uint64_t p) {
    if (n == 0) throw std::domain_error("valuation of zero");
    int v = 0;
    BigInt q, r;
    for (;;) {
        boost::multiprecision::divide_qr(n, BigInt(p), q, r);
        if (r != 0) break;
        n = q;
        ++v;
    }
    return v;
}

inline int valuation(const Rational& x, std::uint64_t p) {
    if (x.is_zero()) throw std::domain_error("valuation of zero");
    return valuation(x.num(), p) - valuation(x.den(), p);
}

/// x = p^valuation(x) * unit_part(x).
inline Rational unit_part(const Rational& x, std::uint64_t p) {
    int v = valuation(x, p);
    BigInt pv = boost::multiprecision::pow(BigInt(p), v < 0 ? -v : v);
    return v >= 0 ? x / Rational(pv) : x * Rational(pv);
}

inline std::uint64_t mod_u64(const BigInt& a, std::uint64_t m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r.convert_to<std::uint64_t>();
}

/// Euler criterion.
inline int legendre_symbol(const BigInt& a, std::uint64_t p) {
    if (p == 2) throw std::invalid_argument("legendre symbol needs an odd prime");
    require_prime(p);
    std::uint64_t r = mod_u64(a, p);
    if (r == 0) return 0;
    std::uint64_t e = detail::powmod(r, (p - 1) / 2, p);
    return e == 1 ? 1 : -1;
}

namespace detail {

// Residue class of a p-adic unit given as a rational with p-free num and den.
inline int unit_legendre(const Rational& u, std::uint64_t p) {
    return legendre_symbol(u.num(), p) * legendre_symbol(u.den(), p);
}

inline unsigned unit_mod8(const Rational& u) {
    // den is odd, so den^{-1} = den mod 8
    return static_cast<unsigned>((mod_u64(u.num(), 8) * mod_u64(u.den(), 8)) % 8);
}

inline unsigned eps2(unsigned u) { return ((u - 1) / 2) & 1u; }
inline unsigned omega2(unsigned u) { return ((u * u - 1) / 8) & 1u; }

}  // namespace detail

inline int hilbert_symbol(const Rational& a, const Rational& b, const Place& v) {
    if (a.is_zero() || b.is_zero()) throw std::domain_error("hilbert symbol of zero");
    if (v.real) return (a.sign() < 0 && b.sign() < 0) ? -1 : 1;
    const std::uint64_t p = v.p;
    int alpha = valuation(a, p), beta = valuation(b, p);
    Rational u = unit_part(a, p), w = unit_part(b, p);
    if (p != 2) {
        int s = 1;
        if ((alpha & 1) && (beta & 1) && ((p - 1) / 2) % 2 == 1) s = -s;
        if (beta & 1) s *= detail::unit_legendre(u, p);
        if (alpha & 1) s *= detail::unit_legendre(w, p);
        return s;
    }
    unsigned u8 = detail::unit_mod8(u), w8 = detail::unit_mod8(w);
    unsigned e = detail::eps2(u8) * detail::eps2(w8);
    if (alpha & 1) e += detail::omega2(w8);
    if (beta & 1) e += detail::omega2(u8);
    return (e & 1) ? -1 : 1;
}

inline bool is_square_local(const Rational& x, const Place& v) {
    if (x.is_zero()) throw std::domain_error("square test of zero");
    if (v.real) return x.sign() > 0;
    if (valuation(x, v.p) % 2 != 0) return false;
    Rational u = unit_part(x, v.p);
    if (v.p == 2) return detail::unit_mod8(u) == 1;
    return detail::unit_legendre(u, v.p) == 1;
}

/// (-1)^{vf vg} f^{vg} / g^{vf}, given the residues of the unit parts.
inline Rational tame_symbol(long long vf, long long vg, const Rational& f_unit, const Rational& g_unit) {
    if (f_unit.is_zero() || g_unit.is_zero()) throw std::domain_error("tame symbol needs nonzero units");
    Rational r = pow(f_unit, vg) / pow(g_unit, vf);
    if (((vf * vg) % 2 + 2) % 2 == 1) r = -r;
    return r;
}

}  // namespace bmo
