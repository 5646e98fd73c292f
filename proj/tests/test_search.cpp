#include <bmo/catalog.hpp>
#include <bmo/search.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"

using namespace bmo;

TEST(Search, FastSearchMatchesNaiveScan) {
    for (auto [name, H] : std::vector<std::pair<const char*, long long>>{
             {"dp4_ex1", 20}, {"dp4_ex3", 20}, {"cubic_ex1", 30}, {"cubic_ex2", 30}}) {
        auto f = catalog_fixture(name);
        SearchStrategy st = f.strategy ? *f.strategy : auto_strategy(f.scheme, H);
        st.height = H;
        auto fast = integral_point_search(f.scheme, st);
        auto slow = naive_point_search(f.scheme, H);
        EXPECT_EQ(fast, slow) << name;
        for (auto& x : fast) EXPECT_TRUE(on_surface(f.scheme, x));
    }
}

TEST(Search, WorkersDoNotChangeTheResult) {
    auto f = catalog::dp4_ex2();
    SearchStrategy st = *f.strategy;
    st.height = 60;
    EXPECT_EQ(integral_point_search(f.scheme, st, 1), integral_point_search(f.scheme, st, 3));
}

TEST(Search, AutoStrategyIsValid) {
    auto f = catalog::dp4_ex3();
    auto st = auto_strategy(f.scheme, 15);
    EXPECT_EQ(integral_point_search(f.scheme, st), naive_point_search(f.scheme, 15));
}

TEST(Search, EllipticSectionPoints) {
    auto f = catalog::dp4_ex1();
    auto pts = elliptic_section_points(f.scheme, catalog::P("X0"), 50);
    for (auto& x : pts) {
        EXPECT_TRUE(on_surface(f.scheme, x));
        EXPECT_EQ(x[0], Rational(0));
    }
    // the naive scan restricted to x0 = 0 finds the same points
    std::vector<ProjPoint> want;
    for (auto& x : naive_point_search(f.scheme, 20))
        if (x[0].is_zero()) want.push_back(x);
    for (auto& x : want) EXPECT_NE(std::find(pts.begin(), pts.end(), x), pts.end()) << x.str();
}

TEST(Predicates, GcdAndSkips) {
    auto pr = catalog::gcd_gt_one("g", catalog::P("X0"), catalog::P("X1"));
    auto hold = evaluate_predicate(pr, ProjPoint::parse("(6:4:0:0:1)"), 4);
    EXPECT_EQ(hold.status, PredicateOutcome::Holds);
    EXPECT_EQ(evaluate_predicate(pr, ProjPoint::parse("(3:4:0:0:1)"), 4).status, PredicateOutcome::Fails);
    EXPECT_EQ(evaluate_predicate(pr, ProjPoint::parse("(0:0:1:0:1)"), 4).status, PredicateOutcome::Skipped);
    EXPECT_EQ(evaluate_predicate(pr, ProjPoint::parse("(1/2:4:0:0:1)"), 4).status, PredicateOutcome::Skipped);
}

TEST(Predicates, HilbertAndDisjunction) {
    auto h = catalog::hilbert("h", catalog::P("X0"), catalog::P("X1"), {Place::prime(2)}, 1, {});
    // (3,3)_2 = (3,7)_2 = -1, (-1,2)_2 = 1
    EXPECT_EQ(evaluate_predicate(h, ProjPoint::parse("(3:3:0:0:1)"), 4).status, PredicateOutcome::Fails);
    EXPECT_EQ(evaluate_predicate(h, ProjPoint::parse("(-1:2:0:0:1)"), 4).status, PredicateOutcome::Holds);
    Predicate d;
    d.kind = Predicate::Disjunction;
    d.name = "d";
    d.children = {h, catalog::gcd_gt_one("g", catalog::P("X0"), catalog::P("X1"))};
    EXPECT_EQ(evaluate_predicate(d, ProjPoint::parse("(3:3:0:0:1)"), 4).status, PredicateOutcome::Holds);
    EXPECT_EQ(evaluate_predicate(d, ProjPoint::parse("(3:7:0:0:1)"), 4).status, PredicateOutcome::Fails);
    auto r = audit_predicate({ProjPoint::parse("(3:3:0:0:1)"), ProjPoint::parse("(3:7:0:0:1)")}, d, 4);
    EXPECT_FALSE(r.holds_for_all);
    EXPECT_EQ(r.checked, 2u);
    ASSERT_EQ(r.counterexamples.size(), 1u);
}

TEST(Recurrence, FamilyStaysOnTheCubic) {
    auto f = catalog::cubic_ex1_shifted();
    auto t = recurrence_family({0, -2, 0}, {-48, 170, -24}, -110, -1, {-48, -48, -24}, 6, f.scheme);
    ASSERT_EQ(t.size(), 6u);
    // third term by hand: -110*c2 - c1 + t
    std::vector<BigInt> c3{-110 * -48 - 0 - 48, -110 * 170 + 2 - 48, -110 * -24 - 0 - 24};
    EXPECT_EQ(t[2], c3);
    EXPECT_THROW(recurrence_family({0, -2, 0}, {-48, 171, -24}, -110, -1, {-48, -48, -24}, 4, f.scheme),
                 std::domain_error);
    EXPECT_THROW(recurrence_family({0, -2, 0}, {-48, 170, -24}, -110, -1, {-48, -48, -24}, 1, f.scheme),
                 std::invalid_argument);
}

TEST(Certificate, RepresentativesAgreeWithLiftingOracle) {
    auto src = catalog::cubic_ex2_shifted();
    auto tgt = catalog::cubic_ex2();
    const auto& m = src.map("shift");
    const auto& pr = tgt.predicate("y0_y2_at_2");
    auto c = residue_symbol_certificate(src.scheme, m, pr, 3);
    EXPECT_TRUE(c.holds);
    EXPECT_EQ(c.classes, 512u);
    Poly F = pullback(pr.forms[0], m), G = pullback(pr.forms[1], m);
    std::mt19937_64 rng(7);
    for (long long a = 0; a < 8; ++a)
        for (long long b = 0; b < 8; ++b)
            for (long long d = 0; d < 8; ++d)
                for (int rep = 0; rep < 2; ++rep) {
                    long long s = rep == 0 ? 0 : 8;
                    std::vector<BigInt> x{BigInt(a + s * long(rng() % 5)), BigInt(b + s * long(rng() % 5)),
                                          BigInt(d + s * long(rng() % 5)), BigInt(1)};
                    Rational fa(F.evaluate(x)), ga(G.evaluate(x));
                    ASSERT_FALSE(fa.is_zero() || ga.is_zero());
                    EXPECT_EQ(oracle::hilbert_by_lifting(fa, ga, 2), -1) << a << "," << b << "," << d;
                }
}

TEST(Certificate, RejectsBadInput) {
    auto src = catalog::cubic_ex2_shifted();
    auto tgt = catalog::cubic_ex2();
    auto pr = tgt.predicate("y0_y2_at_2");
    EXPECT_THROW(residue_symbol_certificate(src.scheme, src.map("shift"), pr, 2), std::invalid_argument);
    pr.places = {Place::prime(3)};
    EXPECT_THROW(residue_symbol_certificate(src.scheme, src.map("shift"), pr, 3), std::invalid_argument);
}

TEST(RealPlace, ClassifierLabels) {
    auto f = catalog::dp4_ex3();
    ASSERT_TRUE(f.classifier.has_value());
    int compact = 0;
    for (auto& x : f.points("integral")) {
        auto c = f.classifier->classify(x, 4);
        EXPECT_NE(c.name, "UNCLASSIFIED") << x.str();
        compact += c.compact;
    }
    EXPECT_EQ(compact, 1);
}

TEST(RealPlace, SamplerResidualsAreSmall) {
    auto f = catalog::dp4_ex2();
    auto r = real_witness_sample(f.scheme, f.witness("x1_gap"), 2000, &*f.classifier);
    EXPECT_EQ(r.samples, 2000u);
    EXPECT_EQ(r.violations, 0u);
    EXPECT_LT(r.max_residual, 1e-6);
    auto again = real_witness_sample(f.scheme, f.witness("x1_gap"), 2000, &*f.classifier);
    EXPECT_EQ(r.attempts, again.attempts);
}

TEST(RealPlace, BoundViolationsAreRealPoints) {
    auto f = catalog::obst_example();
    auto r = real_witness_sample(f.scheme, f.witness("bound_x0"), 2000);
    ASSERT_GT(r.violations, 0u);
    for (auto& x : r.examples) {
        std::vector<double> y(x.begin(), x.end());
        if (y.size() == 4) y.push_back(1);
        for (auto& q : f.scheme.forms) EXPECT_NEAR(q.evaluate_double(y), 0, 1e-6);
        EXPECT_GT(std::fabs(y[0]), 3);
    }
    // a point by hand: x1 = x2 = 0 forces x0^2 = x3^2 = 13
    double s = std::sqrt(13.0);
    std::vector<double> p{s, 0, 0, s, 1};
    for (auto& q : f.scheme.forms) EXPECT_NEAR(q.evaluate_double(p), 0, 1e-9);
}
