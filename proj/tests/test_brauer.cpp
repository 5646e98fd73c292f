#include <bmo/brauer.hpp>
#include <bmo/catalog.hpp>

#include <gtest/gtest.h>

using namespace bmo;

namespace {

Poly xh(const Scheme& s) { return Poly::variable(s.nvars(), s.hyperplane_index); }

std::vector<Place> some_places() {
    return {Place::real_place(), Place::prime(2), Place::prime(3), Place::prime(5), Place::prime(7), Place::prime(17)};
}

Rational coord(const ProjPoint& x, std::size_t i, std::size_t h) { return x[i] / x[h]; }

}  // namespace

TEST(Patterns, AlgebraicIdentityHolds) {
    for (auto* name : {"dp4_ex2", "dp4_ex3"}) {
        auto f = catalog_fixture(name);
        for (auto& pat : f.algebraic_patterns) {
            Poly lhs = Poly::constant(5, pat.mu) * f.scheme.forms[0] + Poly::constant(5, pat.nu) * f.scheme.forms[1];
            Poly rhs = pat.l1 * pat.l2 - pat.l3 * pat.l3 + Poly::constant(5, pat.d) * pat.l4 * pat.l4;
            EXPECT_EQ(lhs, rhs) << pat.name;
            auto c = verify_algebraic_pattern(f.scheme, pat);
            EXPECT_TRUE(c.ok) << c.report;
            ASSERT_TRUE(c.derived.has_value());
            EXPECT_EQ(c.derived->kind, ClassKind::Algebraic);
        }
    }
}

TEST(Patterns, TranscendentalIdentityHolds) {
    for (auto* name : {"dp4_ex1", "dp4_ex2"}) {
        auto f = catalog_fixture(name);
        auto& t = f.transcendental_patterns.at(0);
        Poly h = xh(f.scheme);
        EXPECT_EQ(f.scheme.forms[0], t.l1 * t.l2 + Poly::constant(5, t.a) * t.u * t.u - h * t.l3);
        EXPECT_EQ(f.scheme.forms[1], t.l3 * t.l4 + Poly::constant(5, t.b) * t.v * t.v - h * t.l1);
        auto c = verify_transcendental_pattern(f.scheme, t);
        EXPECT_TRUE(c.ok) << c.report;
        EXPECT_EQ(c.derived->kind, ClassKind::Transcendental);
    }
}

TEST(Patterns, WrongDataIsRejected) {
    auto f = catalog::dp4_ex2();
    auto pat = f.algebraic_patterns[0];
    pat.d = -2;
    EXPECT_FALSE(verify_algebraic_pattern(f.scheme, pat).ok);
    auto t = f.transcendental_patterns[0];
    t.l4 = catalog::P("X1+2*X3");
    EXPECT_FALSE(verify_transcendental_pattern(f.scheme, t).ok);
}

TEST(Evaluation, TauIsTheSymbolOfX1X3) {
    for (auto* name : {"dp4_ex1", "dp4_ex2"}) {
        auto f = catalog_fixture(name);
        std::size_t checked = 0;
        for (auto& x : f.points("integral")) {
            Rational x1 = coord(x, 1, 4), x3 = coord(x, 3, 4);
            if (x1.is_zero() || x3.is_zero()) continue;
            for (auto& v : some_places()) {
                Rational want = half_if(hilbert_symbol(x1, x3, v) == -1);
                EXPECT_EQ(evaluate_class(f.cls("tau"), x, v, true), want) << name << " " << x.str() << " " << v.str();
            }
            ++checked;
        }
        EXPECT_GT(checked, 10u);
    }
}

TEST(Evaluation, AlgebraicClassesAreSymbolsWithConstants) {
    auto e2 = catalog::dp4_ex2();
    auto e3 = catalog::dp4_ex3();
    for (auto& v : some_places()) {
        for (auto& x : e2.points("integral")) {
            Rational x1 = coord(x, 1, 4);
            if (x1.is_zero()) continue;
            EXPECT_EQ(evaluate_class(e2.cls("alpha"), x, v, true), half_if(hilbert_symbol(x1, -1, v) == -1));
        }
        for (auto& x : e3.points("integral")) {
            Rational x0 = coord(x, 0, 4), s = x0 + coord(x, 2, 4);
            EXPECT_EQ(evaluate_class(e3.cls("alpha1"), x, v, true), half_if(hilbert_symbol(x0, -1, v) == -1));
            if (!s.is_zero())
                EXPECT_EQ(evaluate_class(e3.cls("alpha2"), x, v, true), half_if(hilbert_symbol(s, -6, v) == -1));
        }
    }
}

TEST(Evaluation, ClassSumIsAdditive) {
    auto e3 = catalog::dp4_ex3();
    std::vector<ProjPoint> pts = e3.points("integral");
    for (auto& x : e3.points("table")) pts.push_back(x);
    for (auto& x : pts)
        for (auto& v : some_places()) {
            if (!x.dehomogenized(4)[0].is_integer() && !v.real && valuation(x.dehomogenized(4)[0].den(), v.p) > 0) continue;
            Rational a = evaluate_class(e3.cls("alpha1"), x, v, true);
            Rational b = evaluate_class(e3.cls("alpha2"), x, v, true);
            EXPECT_EQ(evaluate_class(e3.cls("alpha1+alpha2"), x, v, true), add_mod1(a, b)) << x.str() << " " << v.str();
        }
}

TEST(Evaluation, PrimaryRepresentativeFailsOnSupport) {
    auto e3 = catalog::dp4_ex3();
    auto c0 = ProjPoint::parse("(-1:0:1:0:1)");  // x0 + x2 = 0
    EXPECT_THROW(evaluate_class(e3.cls("alpha2"), c0, Place::prime(3)), std::domain_error);
    EXPECT_NO_THROW(evaluate_class(e3.cls("alpha2"), c0, Place::prime(3), true));
}

TEST(Evaluation, AdelicSum) {
    auto e3 = catalog::dp4_ex3();
    auto x = ProjPoint::parse("(17:3:4:13:1)");
    std::map<Place, ProjPoint> a;
    std::vector<Place> pl{Place::real_place(), Place::prime(2)};
    for (auto& v : pl) a.emplace(v, x);
    EXPECT_EQ(adelic_sum(e3.cls("alpha1"), a, pl), Rational(0));
    EXPECT_THROW(adelic_sum(e3.cls("alpha1"), a, {Place::prime(3)}), std::invalid_argument);
}

TEST(Lemmas, CuspsAndConstancyCriteria) {
    auto e3 = catalog::dp4_ex3();
    auto& a1 = e3.algebraic_patterns[0];
    auto& a2 = e3.algebraic_patterns[1];
    auto c1 = pattern_cusp(a1), c2 = pattern_cusp(a2);
    std::vector<BigInt> e3v{0, 0, 0, 1, 0}, e4v{0, 0, 0, 0, 1};
    auto prim = [](std::vector<BigInt> v) {
        for (auto& x : v)
            if (x != 0) {
                if (x < 0)
                    for (auto& y : v) y = -y;
                break;
            }
        return v;
    };
    EXPECT_EQ(prim(c1), e3v);
    EXPECT_EQ(prim(c2), e4v);
    for (std::uint64_t p : {5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        EXPECT_TRUE(lemma_algconst_applies(e3.scheme, a1, p)) << p;
        EXPECT_TRUE(lemma_algconst_applies(e3.scheme, a2, p)) << p;
    }
    EXPECT_FALSE(lemma_algconst_applies(e3.scheme, a1, 2));
    EXPECT_FALSE(lemma_algconst_applies(e3.scheme, a1, 3));  // the cusp reduces onto X_3
    EXPECT_TRUE(cusp_off_integral_model(e3.scheme, a1, 3));
    EXPECT_FALSE(lemma_algconst_applies(e3.scheme, a2, 3));

    auto e1 = catalog::dp4_ex1();
    for (std::uint64_t p : {3, 5, 7, 11, 13}) EXPECT_TRUE(lemma_trconst_applies(e1.scheme, e1.transcendental_patterns[0], p));
    EXPECT_FALSE(lemma_trconst_applies(e1.scheme, e1.transcendental_patterns[0], 2));
}
