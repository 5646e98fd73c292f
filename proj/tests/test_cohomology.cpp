#include <bmo/cohomology.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace bmo;

namespace {

const WeylD5& weyl() {
    static const WeylD5 w;
    return w;
}

/// |H^1(H, M)[m]| = |(M/mM)^H| / m^{rank M^H}, from the multiplication-by-m
/// sequence. The fixed vectors are counted by brute force and the rank comes
/// from the character, so nothing here touches lattice reduction.
long long h1_torsion_by_counting(const WeylD5& w, const Subgroup& h, long long m) {
    const auto& mod = w.module;
    std::size_t r = mod.rank;
    std::vector<int> gens = h.gens;
    long long total = 1;
    for (std::size_t i = 0; i < r; ++i) total *= m;
    long long fixed = 0;
    std::vector<long long> x(r);
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (std::size_t i = 0; i < r; ++i) {
            x[i] = c % m;
            c /= m;
        }
        bool ok = true;
        for (int g : gens) {
            for (std::size_t i = 0; i < r && ok; ++i) {
                long long s = 0;
                for (std::size_t j = 0; j < r; ++j) s += mod.action[g][i][j] * x[j];
                ok = ((s - x[i]) % m + m) % m == 0;
            }
            if (!ok) break;
        }
        fixed += ok;
    }
    long long tr = 0;
    for (std::size_t e = 0; e < w.group.order(); ++e)
        if (h.elems.test(e)) tr += small_trace(mod.action[e]);
    long long rk = tr / static_cast<long long>(h.order());
    EXPECT_EQ(rk * static_cast<long long>(h.order()), tr);
    long long den = 1;
    for (long long i = 0; i < rk; ++i) den *= m;
    EXPECT_EQ(fixed % den, 0);
    return fixed / den;
}

long long torsion_of(const std::vector<BigInt>& inv, long long m) {
    long long t = 1;
    for (auto& d : inv) t *= static_cast<long long>(boost::multiprecision::gcd(d, BigInt(m)));
    return t;
}

}  // namespace

TEST(Lines, GraphShape) {
    auto m = build_line_graph();
    ASSERT_EQ(m.size(), 16u);
    for (int i = 0; i < 16; ++i) {
        EXPECT_EQ(m[i][i], -1);
        int deg = 0;
        for (int j = 0; j < 16; ++j) {
            EXPECT_EQ(m[i][j], m[j][i]);
            if (i != j) EXPECT_TRUE(m[i][j] == 0 || m[i][j] == 1);
            deg += i != j && m[i][j] == 1;
        }
        EXPECT_EQ(deg, 5);
    }
}

TEST(Weyl, GroupOrderAndAction) {
    const auto& w = weyl();
    EXPECT_EQ(w.group.order(), 1920u);
    EXPECT_TRUE(w.group.is_transitive());
    for (std::size_t e = 0; e < w.group.order(); e += 37) {
        const Perm& p = w.group.element(static_cast<int>(e));
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) ASSERT_EQ(w.lines[p[i]][p[j]], w.lines[i][j]);
    }
    EXPECT_EQ(w.module.rank, 5u);
}

TEST(Weyl, ModuleIsFaithfulWithMatchingTraces) {
    const auto& w = weyl();
    std::vector<SmallMat> gens;
    for (int g : w.group.generators()) gens.push_back(w.module.action[g]);
    auto elems = matrix_group(gens);
    EXPECT_EQ(elems.size(), 1920u);
    std::map<int, int> direct;
    for (auto& a : w.module.action) ++direct[small_trace(a)];
    EXPECT_EQ(trace_multiset(elems), direct);
    // no invariants: the trace averages to zero
    long long sum = 0;
    for (auto& [t, n] : direct) sum += static_cast<long long>(t) * n;
    EXPECT_EQ(sum, 0);
}

TEST(Weyl, ActionIsAHomomorphism) {
    const auto& w = weyl();
    std::mt19937 rng(3);
    for (int k = 0; k < 200; ++k) {
        int a = static_cast<int>(rng() % 1920), b = static_cast<int>(rng() % 1920);
        EXPECT_EQ(small_mul(w.module.action[a], w.module.action[b]), w.module.action[w.group.mul(a, b)]);
    }
}

TEST(H1, NamedSubgroups) {
    const auto& w = weyl();
    auto inv = [&](const Subgroup& h) { return factor_list_str(h1(w.group, h, w.module)); };
    EXPECT_EQ(inv(w.trivial()), "[]");
    EXPECT_EQ(inv(w.full()), "[]");
    auto i5 = w.index_five();
    EXPECT_EQ(i5.order(), 384u);
    EXPECT_EQ(inv(i5), "[ 2 ]");
    auto o96 = w.order_96();
    EXPECT_EQ(o96.order(), 96u);
    EXPECT_EQ(inv(o96), "[ 2, 2 ]");
    EXPECT_EQ(w.index_two().order(), 960u);
    EXPECT_EQ(w.kernel_s5().order(), 16u);
}

TEST(H1, TorsionMatchesCounting) {
    const auto& w = weyl();
    std::vector<Subgroup> hs{w.index_five(), w.order_96(), w.index_two(), w.kernel_s5(), w.full()};
    std::mt19937 rng(11);
    for (int k = 0; k < 20; ++k) {
        std::vector<int> g{static_cast<int>(rng() % 1920)};
        if (k % 2) g.push_back(static_cast<int>(rng() % 1920));
        hs.push_back(closure(w.group, g));
    }
    for (auto& h : hs) {
        auto inv = h1(w.group, h, w.module);
        for (long long m : {2, 3, 4, 5})
            EXPECT_EQ(torsion_of(inv, m), h1_torsion_by_counting(w, h, m))
                << "order " << h.order() << " m=" << m << " " << factor_list_str(inv);
    }
}

TEST(H1, CyclicFormulaAgrees) {
    const auto& w = weyl();
    std::mt19937 rng(5);
    for (int k = 0; k < 20; ++k) {
        int s = static_cast<int>(rng() % 1920);
        auto h = closure(w.group, {s});
        EXPECT_EQ(h1(w.group, h, w.module), h1_cyclic_oracle(w.group, s, w.module)) << "element " << s;
    }
}

TEST(Linalg, SmithDiagonal) {
    IntMat a = zero_mat(3, 3);
    long long v[3][3] = {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = v[i][j];
    std::vector<BigInt> want{2, 6, 12};
    EXPECT_EQ(smith_diagonal(a), want);
    IntMat z = zero_mat(2, 3);
    EXPECT_TRUE(smith_diagonal(z).empty());
}

TEST(Perms, ParseAndMultiply) {
    auto ps = parse_perm_list("[2,1,3];[1,3,2]");
    ASSERT_EQ(ps.size(), 2u);
    auto g = PermGroup::generated_by(ps, 3);
    EXPECT_EQ(g.order(), 6u);
    EXPECT_THROW(parse_perm_list("[2,2,3]"), std::invalid_argument);
}
