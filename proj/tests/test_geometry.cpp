#include <bmo/catalog.hpp>
#include <bmo/geometry.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace bmo;

namespace {

/// det(t*G1 + G2) in doubles, G = Hessians of the two quadrics.
double pencil_det(const Scheme& s, double t) {
    auto g1 = gram2(s.forms[0]), g2 = gram2(s.forms[1]);
    std::size_t n = g1.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = t * g1[i][j].convert_to<double>() + g2[i][j].convert_to<double>();
    double d = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
        if (m[piv][c] == 0) return 0;
        if (piv != c) {
            std::swap(m[piv], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (std::size_t r = c + 1; r < n; ++r) {
            double f = m[r][c] / m[c][c];
            for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
        }
    }
    return d;
}

/// Real roots of det(t*G1+G2) by sign changes on a grid over [-200, 200], plus t = infinity.
/// The catalog pencils have their finite roots in [-10, 10].
int real_members_by_sampling(const Scheme& s) {
    int n = 0;
    double prev = pencil_det(s, -200);
    for (double t = -200 + 0.002; t <= 200; t += 0.002) {
        double cur = pencil_det(s, t);
        if ((prev < 0) != (cur < 0)) ++n;
        prev = cur;
    }
    // degree drop means a root at infinity: growth is 2^4 instead of 2^5
    double growth = pencil_det(s, 2e6) / pencil_det(s, 1e6);
    if (std::fabs(growth) < 24) ++n;
    return n;
}

}  // namespace

TEST(ProjPoint, ParseAndNormalise) {
    auto p = ProjPoint::parse("(2/5:2/5:1/5:1/5:1)");
    EXPECT_EQ(p.size(), 5u);
    std::vector<BigInt> want{2, 2, 1, 1, 5};
    EXPECT_EQ(p.normalized(), want);
    EXPECT_EQ(ProjPoint::parse("(-2:-2:-1:-1:-5)").normal_form(), p.normal_form());
    auto a = ProjPoint::parse("1 2 3 4", 4, true);
    EXPECT_EQ(a, ProjPoint::of_ints({1, 2, 3, 4, 1}));
    EXPECT_THROW(ProjPoint::parse("(0:0:0)"), std::invalid_argument);
    EXPECT_THROW(ProjPoint::parse("(1:2"), std::invalid_argument);
}

TEST(ProjPoint, AffineChart) {
    auto p = ProjPoint::parse("(4:-8:6:4:2)");
    auto a = p.affine(4);
    ASSERT_EQ(a.size(), 4u);
    EXPECT_EQ(a[0], Rational(2));
    EXPECT_EQ(a[1], Rational(-4));
    EXPECT_THROW(ProjPoint::parse("(1:0:0:0:0)").affine(4), std::exception);
}

TEST(Poly, ParseEvaluateCompose) {
    Poly f = Poly::parse("X0*X1+X2^2-X4*X3", 5);
    EXPECT_TRUE(f.is_homogeneous());
    EXPECT_EQ(f.degree(), 2);
    std::vector<BigInt> x{1, 2, 3, 4, 5};
    EXPECT_EQ(f.evaluate(x), BigInt(1 * 2 + 9 - 20));
    Poly g = Poly::parse("(X0+X1)^2", 5);
    EXPECT_EQ(g, Poly::parse("X0^2+2*X0*X1+X1^2", 5));
    auto back = Poly::parse(f.str(), 5);
    EXPECT_EQ(back, f);
}

TEST(Scheme, CatalogPointSetsLieOnTheirSurfaces) {
    for (auto& f : fixture_catalog()) {
        f.scheme.validate();
        for (auto& [name, pts] : f.point_sets)
            for (auto& x : pts) EXPECT_TRUE(on_surface(f.scheme, x)) << f.name() << "/" << name << " " << x.str();
    }
}

TEST(Scheme, IntegralPoints) {
    auto f = catalog::dp4_ex1();
    EXPECT_TRUE(is_integral_point(f.scheme, ProjPoint::parse("(0:-2:1:1:1)")));
    EXPECT_FALSE(is_integral_point(f.scheme, f.points("z2")[0]));
    EXPECT_FALSE(is_integral_point(f.scheme, ProjPoint::parse("(0:1:0:0:0)")));
}

TEST(Pencil, DegenerateMembersMatchSampling) {
    for (auto* name : {"dp4_ex1", "dp4_ex2", "dp4_ex3", "obst_example"}) {
        auto f = catalog_fixture(name);
        auto r = pencil_degenerates(f.scheme);
        EXPECT_TRUE(r.squarefree) << name;
        EXPECT_TRUE(r.all_rank_four) << name;
        EXPECT_EQ(r.real_members, real_members_by_sampling(f.scheme)) << name;
        if (!f.meta_value("real_degenerate_members").empty())
            EXPECT_EQ(std::to_string(r.real_members), f.meta_value("real_degenerate_members")) << name;
    }
}

TEST(Pencil, SingularIntersectionIsDetected) {
    Scheme s = catalog::scheme("cone", 4, 4, {catalog::P("X0^2-X1^2"), catalog::P("X2^2+X3^2-X4^2")});
    EXPECT_FALSE(smoothness_check(s));
    EXPECT_TRUE(smoothness_check(catalog::dp4_ex3().scheme));
}

TEST(Pencil, RejectsNonPencil) {
    EXPECT_THROW(smoothness_check(catalog::cubic_ex1().scheme), std::invalid_argument);
}

TEST(RationalMap, PullbackCommutesWithEvaluation) {
    auto src = catalog::dp4_ex1_shifted();
    auto dst = catalog::dp4_ex1();
    auto& m = src.map("shift");
    for (long long a = -3; a <= 3; ++a)
        for (long long b = -3; b <= 3; ++b) {
            auto x = ProjPoint::of_ints({a, b, a - b, 2 * b + 1, 1});
            auto y = apply_map(m, x);
            for (auto& f : dst.scheme.forms) EXPECT_EQ(evaluate_form(f, y), evaluate_form(pullback(f, m), x));
        }
}

TEST(RationalMap, BlowDownLandsOnTarget) {
    for (auto [src, dst] : std::vector<std::pair<Fixture, Fixture>>{{catalog::cubic_ex1(), catalog::dp4_ex1()},
                                                                    {catalog::cubic_ex2(), catalog::dp4_ex2()}}) {
        for (auto& [n, pts] : src.point_sets)
            for (auto& x : pts) EXPECT_NO_THROW(apply_map(src.map("blow_down"), x, &dst.scheme)) << x.str();
    }
    auto c = catalog::cubic_ex1();
    EXPECT_THROW(apply_map(c.map("blow_down"), ProjPoint::parse("(0:0:1:1)")), std::domain_error);
}
