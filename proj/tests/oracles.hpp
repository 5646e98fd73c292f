#pragma once

// Brute-force oracles shared by the unit tests and the acceptance runner.
// Nothing here calls the closed-form symbol code.

#include <bmo/arith.hpp>

#include <cstdint>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

namespace oracle {

using bmo::BigInt;
using bmo::Rational;

inline std::uint64_t ipow(std::uint64_t p, int k) {
    std::uint64_t r = 1;
    while (k-- > 0) r *= p;
    return r;
}

inline int val_u64(std::uint64_t x, std::uint64_t p, int cap) {
    if (x == 0) return cap;
    int v = 0;
    while (x % p == 0 && v < cap) {
        x /= p;
        ++v;
    }
    return v;
}

/// c = p^e * u with u a p-adic unit, u reduced to a small representative of
/// its square class: odd p gives 1 or the least non-residue, p = 2 gives u mod 8.
inline std::pair<int, std::uint64_t> square_class(const Rational& c, std::uint64_t p) {
    BigInt n = c.num() * c.den();  // same square class as c
    bool neg = n < 0;
    if (neg) n = -n;
    int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    std::uint64_t m = p == 2 ? 8 : p;
    std::uint64_t u = static_cast<std::uint64_t>(n % m);
    if (neg) u = (m - u) % m;
    if (p == 2) return {e % 2, u};
    bool square = false;
    for (std::uint64_t z = 1; z < p; ++z) square = square || (z * z) % p == u;
    if (square) return {e % 2, 1};
    std::uint64_t nr = 2;
    for (;; ++nr) {
        bool sq = false;
        for (std::uint64_t z = 1; z < p; ++z) sq = sq || (z * z) % p == nr;
        if (!sq) break;
    }
    return {e % 2, nr};
}

enum class Verdict { Soluble, Insoluble, Undecided };

/// Primitive solutions of z^2 = A x^2 + B y^2 mod p^k. Soluble if one of them
/// passes the Hensel test in some coordinate (f = 0 mod p^k, v(df) = e, k >= 2e+1),
/// insoluble if there is no primitive solution at all.
inline Verdict lifting_search(std::uint64_t A, std::uint64_t B, std::uint64_t p, int k) {
    const std::uint64_t M = ipow(p, k);
    std::vector<std::vector<std::uint32_t>> roots(M);
    for (std::uint64_t z = 0; z < M; ++z) roots[(z * z) % M].push_back(static_cast<std::uint32_t>(z));
    bool any = false;
    auto lifts = [&](std::uint64_t d) {
        int e = val_u64(d % M, p, k);
        return k >= 2 * e + 1;
    };
    for (std::uint64_t x = 0; x < M; ++x)
        for (std::uint64_t y = 0; y < M; ++y) {
            std::uint64_t t = ((A % M) * ((x * x) % M) + (B % M) * ((y * y) % M)) % M;
            for (std::uint64_t z : roots[t]) {
                if (x % p == 0 && y % p == 0 && z % p == 0) continue;
                any = true;
                if (lifts(2 * z) || lifts(2 * (A % M) * x) || lifts(2 * (B % M) * y)) return Verdict::Soluble;
            }
        }
    return any ? Verdict::Undecided : Verdict::Insoluble;
}

/// +1 / -1, or 0 if the search could not decide. Results are cached per
/// pair of square classes.
inline int hilbert_by_lifting(const Rational& a, const Rational& b, std::uint64_t p) {
    static std::map<std::tuple<std::uint64_t, int, std::uint64_t, int, std::uint64_t>, int> cache;
    auto [ea, ua] = square_class(a, p);
    auto [eb, ub] = square_class(b, p);
    auto key = std::make_tuple(p, ea, ua, eb, ub);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    std::uint64_t A = ipow(p, ea) * ua, B = ipow(p, eb) * ub;
    // odd p with valuations at most one: every partial has valuation <= 1,
    // so precision 3 is enough for the Hensel test
    int k = p == 2 ? 2 * (2 + ea + eb) + 3 : 3;
    Verdict v = lifting_search(A, B, p, k);
    int r = v == Verdict::Soluble ? 1 : v == Verdict::Insoluble ? -1 : 0;
    cache[key] = r;
    return r;
}

inline int hilbert_real(const Rational& a, const Rational& b) { return a.sign() < 0 && b.sign() < 0 ? -1 : 1; }

/// The 28 symbol arguments used by the oracle suite.
inline std::vector<Rational> symbol_pool() {
    std::vector<Rational> v;
    for (long long x : {1, 2, 3, 5, 6, 10, 15, 30, 7, 17, 4, 12}) {
        v.emplace_back(x);
        v.emplace_back(-x);
    }
    for (auto [n, d] : std::vector<std::pair<long long, long long>>{{2, 5}, {1, 5}}) {
        v.emplace_back(BigInt(n), BigInt(d));
        v.emplace_back(BigInt(-n), BigInt(d));
    }
    return v;
}

}  // namespace oracle
