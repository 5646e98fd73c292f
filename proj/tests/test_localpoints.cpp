#include <bmo/catalog.hpp>
#include <bmo/localpoints.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <set>

using namespace bmo;

namespace {

BigInt mod(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    return r < 0 ? r + m : r;
}

/// Affine solutions mod p^k by scanning every tuple, via exact BigInt evaluation.
std::set<std::vector<std::uint64_t>> naive_residues(const Scheme& s, std::uint64_t p, int k) {
    std::uint64_t M = 1;
    for (int i = 0; i < k; ++i) M *= p;
    std::set<std::vector<std::uint64_t>> out;
    std::vector<std::uint64_t> t(4, 0);
    for (std::uint64_t code = 0; code < M * M * M * M; ++code) {
        std::uint64_t r = code;
        for (int i = 3; i >= 0; --i) {
            t[i] = r % M;
            r /= M;
        }
        std::vector<BigInt> x{BigInt(t[0]), BigInt(t[1]), BigInt(t[2]), BigInt(t[3]), BigInt(1)};
        bool ok = true;
        for (auto& f : s.forms) ok = ok && mod(f.evaluate(x), BigInt(M)) == 0;
        if (ok) out.insert(t);
    }
    return out;
}

bool solves_mod(const Scheme& s, const ResiduePoint& rp, std::uint64_t p) {
    BigInt M = 1;
    for (int i = 0; i < rp.precision; ++i) M *= p;
    std::vector<BigInt> x;
    for (auto c : rp.coords) x.emplace_back(c);
    x.insert(x.begin() + static_cast<long>(s.hyperplane_index), BigInt(1));
    for (auto& f : s.forms)
        if (mod(f.evaluate(x), M) != 0) return false;
    return true;
}

}  // namespace

TEST(Residues, MatchExhaustiveScan) {
    for (auto* name : {"dp4_ex1", "dp4_ex3", "obst_example"}) {
        auto f = catalog_fixture(name);
        for (auto [p, k] : std::vector<std::pair<std::uint64_t, int>>{{2, 3}, {3, 2}, {5, 1}}) {
            auto got = enumerate_residue_points(f.scheme, p, k);
            std::set<std::vector<std::uint64_t>> mine;
            for (auto& r : got) {
                EXPECT_EQ(r.precision, k);
                mine.insert(r.coords);
            }
            EXPECT_EQ(mine.size(), got.size()) << "duplicates";
            EXPECT_EQ(mine, naive_residues(f.scheme, p, k)) << name << " p=" << p << " k=" << k;
        }
    }
}

TEST(Residues, BadPrecisionOrPrime) {
    auto f = catalog::dp4_ex1();
    EXPECT_THROW(enumerate_residue_points(f.scheme, 3, 0), std::invalid_argument);
    EXPECT_THROW(enumerate_residue_points(f.scheme, 9, 1), std::invalid_argument);
    LocalOptions tiny;
    tiny.budget = 10;
    EXPECT_THROW(enumerate_residue_points(f.scheme, 5, 1, tiny), std::domain_error);
}

TEST(Solubility, WitnessesAreGenuine) {
    std::vector<std::pair<const char*, std::uint64_t>> cases{{"obst_example", 2}, {"obst_example", 3}, {"obst_example", 5},
                                                             {"obst_example", 7}, {"obst_example", 13}, {"dp4_ex1", 3},
                                                             {"dp4_ex3", 2}, {"dp4_ex3", 3}};
    for (auto [name, p] : cases) {
        auto f = catalog_fixture(name);
        auto s = zp_solubility(f.scheme, p);
        ASSERT_EQ(s.status, Solubility::Soluble) << name << " " << p;
        ASSERT_TRUE(s.witness.has_value());
        EXPECT_TRUE(s.witness->certified());
        EXPECT_TRUE(solves_mod(f.scheme, *s.witness, p)) << name << " " << p;
    }
}

TEST(Solubility, InsolubleToy) {
    // x0^2 = 3 has no 3-adic solution
    Scheme s = catalog::scheme("toy", 4, 4, {catalog::P("X0^2-3*X4^2"), catalog::P("X1*X2-X3^2+X4^2")});
    auto r = zp_solubility(s, 3);
    EXPECT_EQ(r.status, Solubility::Insoluble);
    EXPECT_EQ(status_name(r.status), "INSOLUBLE");
    EXPECT_EQ(zp_solubility(s, 11).status, Solubility::Soluble);
}

namespace {

struct NaiveCensus {
    std::uint64_t count = 0, nonvanishing = 0, square = 0;
};

/// Projective points on X_4 = 0, counted as nonzero affine solutions / (p-1).
NaiveCensus naive_census(const Scheme& s, std::uint64_t p) {
    NaiveCensus c;
    BigInt P(p);
    std::set<std::uint64_t> squares;
    for (std::uint64_t z = 1; z < p; ++z) squares.insert(z * z % p);
    for (std::uint64_t code = 1; code < p * p * p * p; ++code) {
        std::vector<std::uint64_t> t(4);
        std::uint64_t r = code;
        for (int i = 3; i >= 0; --i) {
            t[i] = r % p;
            r /= p;
        }
        std::vector<BigInt> x{BigInt(t[0]), BigInt(t[1]), BigInt(t[2]), BigInt(t[3]), BigInt(0)};
        bool ok = true;
        for (auto& f : s.forms) ok = ok && mod(f.evaluate(x), P) == 0;
        if (!ok) continue;
        ++c.count;
        if (t[1] && t[3]) {
            ++c.nonvanishing;
            if (squares.count(t[1] * t[3] % p)) ++c.square;
        }
    }
    c.count /= p - 1;
    c.nonvanishing /= p - 1;
    c.square /= p - 1;
    return c;
}

}  // namespace

TEST(Census, MatchesBruteForce) {
    auto f = catalog::dp4_ex1();
    for (std::uint64_t p : {5, 7, 11, 13, 17, 19}) {
        auto c = boundary_census(f.scheme, p, 1, 3);
        auto n = naive_census(f.scheme, p);
        EXPECT_EQ(c.count, n.count) << p;
        EXPECT_EQ(c.nonvanishing, n.nonvanishing) << p;
        EXPECT_EQ(c.square_ratio, n.square) << p;
    }
    auto c = boundary_census(f.scheme, 17, 1, 3);
    EXPECT_EQ(c.count, 17u);
    EXPECT_EQ(c.nonvanishing, 14u);
    EXPECT_EQ(c.square_ratio, 14u);
    // D is a genus one curve at 17, so the count sits in the Hasse interval
    EXPECT_LE(std::fabs(double(c.count) - 18.0), 2 * std::sqrt(17.0));
    EXPECT_THROW(boundary_census(f.scheme, 17, 1, 4), std::invalid_argument);
}

TEST(Sweep, TauAtThreeIsZero) {
    auto f = catalog::dp4_ex1();
    LocalOptions opt;
    opt.cap = 4;
    auto s = sweep_evaluation(f.scheme, f.cls("tau"), 3, 2, opt);
    EXPECT_TRUE(s.constant);
    ASSERT_EQ(s.values.size(), 1u);
    EXPECT_EQ(s.values.begin()->first, "0");
    // every catalog point with x1 x3 != 0 agrees
    for (auto& x : f.points("integral"))
        if (x[1] != 0 && x[3] != 0) EXPECT_EQ(evaluate_class(f.cls("tau"), x, Place::prime(3), true), Rational(0));
}

TEST(Sweep, TauAtTwoTakesBothValues) {
    auto f = catalog::dp4_ex1();
    LocalOptions opt;
    opt.cap = 5;
    auto s = sweep_evaluation(f.scheme, f.cls("tau"), 2, 4, opt);
    EXPECT_FALSE(s.constant);
    EXPECT_EQ(s.values.size(), 2u);
    std::set<std::string> seen;
    for (auto& x : f.points("integral"))
        if (x[1] != 0 && x[3] != 0) seen.insert(evaluate_class(f.cls("tau"), x, Place::prime(2), true).str());
    for (auto& v : seen) EXPECT_TRUE(s.values.count(v)) << v;
}
