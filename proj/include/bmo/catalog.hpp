#pragma once

#include "brauer.hpp"
#include "fixture.hpp"
#include "geometry.hpp"
#include "search.hpp"

#include <string>
#include <vector>

namespace bmo {
namespace catalog {

inline Poly P(const std::string& s, std::size_t n = 5) { return Poly::parse(s, n); }

inline std::vector<ProjPoint> pts(std::initializer_list<const char*> v) {
    std::vector<ProjPoint> out;
    for (auto* s : v) out.push_back(ProjPoint::parse(s));
    return out;
}

inline RationalMap poly_map(const std::string& name, const std::string& src, const std::string& dst,
                            std::initializer_list<const char*> comps, std::size_t n) {
    RationalMap m;
    m.name = name;
    m.source = src;
    m.target = dst;
    for (auto* c : comps) {
        m.num.push_back(P(c, n));
        m.den.push_back(Poly::constant(n, 1));
    }
    return m;
}

/// X0 = Y0, X1 = (Y2*Y3 - Y1^2)/Y0, X2 = Y1, X3 = Y2, X4 = Y3.
inline RationalMap blow_down(const std::string& src, const std::string& dst) {
    RationalMap m;
    m.name = "blow_down";
    m.source = src;
    m.target = dst;
    const char* num[] = {"Y0", "Y2*Y3-Y1^2", "Y1", "Y2", "Y3"};
    const char* den[] = {"1", "Y0", "1", "1", "1"};
    for (int i = 0; i < 5; ++i) {
        m.num.push_back(P(num[i], 4));
        m.den.push_back(P(den[i], 4));
    }
    return m;
}

inline Predicate hilbert(const std::string& name, const Poly& f, const Poly& g, std::vector<Place> places, int expected,
                         std::vector<Poly> nonzero) {
    Predicate p;
    p.kind = Predicate::HilbertEq;
    p.name = name;
    p.forms = {f, g};
    p.places = std::move(places);
    p.expected = expected;
    p.require_nonzero = std::move(nonzero);
    return p;
}

inline Predicate gcd_gt_one(const std::string& name, const Poly& f, const Poly& g) {
    Predicate p;
    p.kind = Predicate::GcdGtOne;
    p.name = name;
    p.forms = {f, g};
    return p;
}

inline Condition cond(Condition::Cmp c, const Poly& f, bool absolute, const Rational& b) {
    Condition x;
    x.cmp = c;
    x.form = f;
    x.absolute = absolute;
    x.bound = b;
    return x;
}

inline SymbolClass derived(const PatternCheck& c) {
    if (!c.ok || !c.derived) throw std::logic_error("catalog pattern does not verify: " + c.report);
    return *c.derived;
}

inline Scheme scheme(const std::string& name, std::size_t dim, std::size_t h, std::vector<Poly> forms) {
    Scheme s;
    s.name = name;
    s.ambient_dim = dim;
    s.hyperplane_index = h;
    s.forms = std::move(forms);
    return s;
}

inline SearchStrategy strategy(int e, int le, int q, int qe, std::vector<int> en, long long H) {
    SearchStrategy s;
    s.eliminate_var = e;
    s.linear_eq = le;
    s.quadratic_var = q;
    s.quadratic_eq = qe;
    s.enumerate_vars = std::move(en);
    s.height = H;
    return s;
}

inline std::vector<ProjPoint> sorted(std::vector<ProjPoint> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

// ---------------------------------------------------------------- dP4 with X4 = 0 removed

inline TranscendentalPattern tau_pattern(const std::string& l4) {
    TranscendentalPattern t;
    t.name = "tau_pattern";
    t.class_name = "tau";
    t.l1 = P("X1");
    t.l2 = P("X0");
    t.u = P("X2");
    t.a = 1;
    t.l3 = P("X3");
    t.l4 = P(l4);
    t.v = P("X0");
    t.b = 1;
    return t;
}

inline Fixture dp4_ex1() {
    Fixture f;
    f.scheme = scheme("dp4_ex1", 4, 4, {P("X0*X1+X2^2-X4*X3"), P("X3*(2*X1+X2+X3)+X0^2-X4*X1")});
    f.meta = {{"galois_order", "1920"}, {"census_prime", "17"}, {"census_pair", "1,3"}, {"census_expected", "17,14,14"}};
    f.transcendental_patterns.push_back(tau_pattern("2*X1+X2+X3"));
    f.classes.push_back(derived(verify_transcendental_pattern(f.scheme, f.transcendental_patterns[0])));
    Poly x1 = P("X1"), x3 = P("X3");
    f.predicates.push_back(hilbert("x1_x3_at_2", x1, x3, {Place::prime(2)}, 1, {x1, x3}));
    f.strategy = strategy(1, 1, 2, 0, {0, 3}, 200);

    auto listed = pts({"(0:-2:1:1:1)",
                       "(-1:-1:-1:2:1)",
                       "(-1:-3:1:4:1)",
                       "(4:-8:6:4:1)",
                       "(-6:4:4:-8:1)",
                       "(-8:18:-11:-23:1)",
                       "(14:-28:20:8:1)",
                       "(16:-56:30:4:1)",
                       "(76:-696:-230:4:1)",
                       "(-97:521:-223:-808:1)",
                       "(-105:1413:381:-3204:1)",
                       "(263:-829:467:62:1)",
                       "(-556:912:712:-128:1)",
                       "(-708:1278:-951:-423:1)",
                       "(839:-1595:1157:444:1)",
                       "(1004:-1648:-1288:4352:1)",
                       "(-2073:3573:-2721:-2988:1)",
                       "(2238:-6876:3924:9288:1)",
                       "(-2264:3840:-2948:-3056:1)",
                       "(-2916:5832:4122:-15228:1)",
                       "(3324:-15678:-7219:289:1)",
                       "(3879:-6183:-4899:16344:1)",
                       "(-5450:14688:8947:-791:1)",
                       "(-5809:11231:-8077:-2950:1)",
                       "(8908:-16476:12115:5017:1)",
                       "(-10194:6948:8415:-15687:1)",
                       "(22238:-38044:29087:31097:1)",
                       "(-26396:44152:-34138:-33148:1)"});
    auto section = pts({"(0:0:0:0:1)", "(0:0:-1:1:1)", "(-2:4:-1:-7:1)", "(-2:4:0:-8:1)", "(-14:196:-49:-343:1)",
                        "(-14:196:48:-440:1)"});
    std::vector<ProjPoint> family;
    for (long long n = 1; n * n * n * n < 50000; ++n)
        for (long long s : {1, -1}) family.push_back(ProjPoint::of_ints({-n * n, n * n * n * n, s * n * n * n, 0, 1}));
    std::vector<ProjPoint> all = listed;
    all.insert(all.end(), section.begin(), section.end());
    all.insert(all.end(), family.begin(), family.end());
    f.point_sets = {{"listed", listed},
                    {"section", section},
                    {"family", family},
                    {"integral", sorted(all)},
                    {"z2", pts({"(2/5:2/5:1/5:1/5:1)"})}};
    return f;
}

inline Fixture dp4_ex1_shifted() {
    Fixture f;
    f.scheme = scheme("dp4_ex1_shifted", 4, 4,
                      {P("X0*(8*X1+3*X4)+X2^2-X4*(8*X3+2*X4)"),
                       P("(8*X3+2*X4)*(16*X1+X2+8*X3+8*X4)+X0^2-X4*(8*X1+3*X4)")});
    f.maps.push_back(poly_map("shift", "dp4_ex1_shifted", "dp4_ex1", {"X0", "8*X1+3*X4", "X2", "8*X3+2*X4", "X4"}, 5));
    f.meta = {{"certificate", "x1_x3_at_2"}, {"certificate_bits", "4"}, {"certificate_value", "-1"}};
    f.strategy = strategy(1, 1, 2, 0, {0, 3}, 1000);
    f.point_sets = {{"z2", pts({"(3:-4/3:5:0:1)"})}};
    return f;
}

inline Fixture dp4_ex2() {
    Fixture f;
    f.scheme = scheme("dp4_ex2", 4, 4, {P("X0*X1+X2^2-X4*X3"), P("X3*(X1+X3)+X0^2-X4*X1")});
    f.meta = {{"galois_order", "384"}, {"real_degenerate_members", "3"}, {"negative_members", "2"},
              {"positive_members", "1"}};
    AlgebraicPattern a;
    a.name = "alpha_pattern";
    a.class_name = "alpha";
    a.l1 = P("X1");
    a.l2 = P("X4-X3");
    a.l3 = P("X3");
    a.l4 = P("X0");
    a.d = -1;
    a.mu = 0;
    a.nu = -1;
    f.algebraic_patterns.push_back(a);
    f.transcendental_patterns.push_back(tau_pattern("X1+X3"));
    SymbolClass alpha = derived(verify_algebraic_pattern(f.scheme, a));
    SymbolClass tau = derived(verify_transcendental_pattern(f.scheme, f.transcendental_patterns[0]));
    Symbol lead{RatForm{P("X1"), P("X4")}, RatForm{P("-X3"), P("X4")}};
    SymbolClass sum = class_sum("alpha+tau", alpha, tau, {{lead}});
    f.classes = {alpha, tau, sum};

    Poly x1 = P("X1"), x3 = P("X3"), m1 = Poly::constant(5, -1);
    f.predicates = {
        hilbert("x1_minus1_at_2_real", x1, m1, {Place::prime(2), Place::real_place()}, 1, {x1}),
        hilbert("x1_x3_at_2", x1, x3, {Place::prime(2)}, 1, {x1, x3}),
        hilbert("x1_minus_x3_at_real", x1, -x3, {Place::real_place()}, 1, {x1, x3}),
    };
    ComponentClassifier cl;
    cl.forms.push_back(SignForm{"x1", P("X1"), P("X1+2*X4")});
    cl.components = {{"x1+", "upper", false}, {"x1-", "lower", false}};
    f.classifier = cl;
    InequalityWitness w;
    w.name = "x1_gap";
    w.conclusion = {cond(Condition::GE, x1, false, 0), cond(Condition::LE, x1, false, -4)};
    w.recipe.free_vars = {0, 3};
    w.recipe.box = {{-5, 5}, {-5, 5}};
    w.recipe.steps = {{1, 1, false}, {2, 0, true}};
    f.witnesses.push_back(w);
    f.strategy = strategy(1, 1, 2, 0, {0, 3}, 200);

    auto listed = pts({"(-5:13:8:-1:1)",          "(-5:13:-8:-1:1)",          "(-58:676:198:-4:1)",
                       "(-58:676:-198:-4:1)",     "(-268:4240:1064:-4224:1)", "(-268:4240:-1064:-4224:1)",
                       "(-1297:11437:3850:-11289:1)", "(-1297:11437:-3850:-11289:1)", "(-2416:6736:4034:-1020:1)",
                       "(-2416:6736:-4034:-1020:1)",  "(-4513:9685:6611:-3084:1)",    "(-4513:9685:-6611:-3084:1)",
                       "(-6668:13456:9472:-5824:1)",  "(-6668:13456:-9472:-5824:1)",  "(-11681:27061:17779:-6700:1)",
                       "(-11681:27061:-17779:-6700:1)"});
    std::vector<ProjPoint> family;
    for (long long n = 0; n * n * n * n < 50000; ++n)
        for (long long s : {1, -1}) {
            family.push_back(ProjPoint::of_ints({-n * n, n * n * n * n, s * n * n * n, 0, 1}));
            if (n == 0) break;
        }
    std::vector<ProjPoint> family2;
    for (long long n = 0; (n * n + 1) * (n * n + 1) < 50000; ++n) {
        long long m = n * n + 1;
        for (long long s : {1, -1}) {
            family2.push_back(ProjPoint::of_ints({-m, m * m, s * m * n, -m * m, 1}));
            if (n == 0) break;
        }
    }
    std::vector<ProjPoint> all = listed;
    all.insert(all.end(), family.begin(), family.end());
    all.insert(all.end(), family2.begin(), family2.end());
    f.point_sets = {{"listed", listed},
                    {"family", family},
                    {"family2", family2},
                    {"integral", sorted(all)},
                    {"z2", pts({"(-1/3:1/3:-2/3:1/3:1)"})}};
    return f;
}

inline Fixture dp4_ex2_shifted() {
    Fixture f;
    // 6*X4 in the last factor: with it the shift pulls back exactly
    f.scheme = scheme("dp4_ex2_shifted", 4, 4,
                      {P("X0*(4*X1+3*X4)+X2^2-X4*(4*X3+3*X4)"),
                       P("(4*X3+3*X4)*(4*X1+4*X3+6*X4)+X0^2-X4*(4*X1+3*X4)")});
    f.maps.push_back(poly_map("shift", "dp4_ex2_shifted", "dp4_ex2", {"X0", "4*X1+3*X4", "X2", "4*X3+3*X4", "X4"}, 5));
    f.meta = {{"certificate", "x1_x3_at_2"}, {"certificate_bits", "3"}, {"certificate_value", "-1"}};
    f.strategy = strategy(1, 1, 2, 0, {0, 3}, 1000);
    return f;
}

inline Fixture dp4_ex3() {
    Fixture f;
    f.scheme = scheme("dp4_ex3", 4, 4, {P("X0*(X0+X1)-X2^2-(X0+X4)^2"), P("(X0+X2)*(X0+2*X2)-2*X1^2-3*X3^2")});
    f.meta = {{"galois_order", "96"},
              {"real_degenerate_members", "5"},
              {"negative_members", "4"},
              {"positive_members", "1"},
              {"compact_component", "compact"}};
    AlgebraicPattern a1;
    a1.name = "alpha1_pattern";
    a1.class_name = "alpha1";
    a1.l1 = P("X0");
    a1.l2 = P("X0+X1");
    a1.l3 = P("X2");
    a1.l4 = P("X0+X4");
    a1.d = -1;
    a1.mu = 1;
    a1.nu = 0;
    AlgebraicPattern a2;
    a2.name = "alpha2_pattern";
    a2.class_name = "alpha2";
    a2.l1 = P("X0+X2");
    a2.l2 = P("2*X0+4*X2");
    a2.l3 = P("2*X1");
    a2.l4 = P("X3");
    a2.d = -6;
    a2.mu = 0;
    a2.nu = 2;
    f.algebraic_patterns = {a1, a2};
    SymbolClass c1 = derived(verify_algebraic_pattern(f.scheme, a1));
    SymbolClass c2 = derived(verify_algebraic_pattern(f.scheme, a2));
    f.classes = {c1, c2, class_sum("alpha1+alpha2", c1, c2)};

    Poly x0 = P("X0"), s = P("X0+X2");
    f.predicates = {
        hilbert("x0_minus1_at_2_real", x0, Poly::constant(5, -1), {Place::prime(2), Place::real_place()}, 1, {x0}),
        hilbert("x0x2_minus6_at_2_3_real", s, Poly::constant(5, -6),
                {Place::prime(2), Place::prime(3), Place::real_place()}, 1, {s}),
    };
    ComponentClassifier cl;
    cl.forms.push_back(SignForm{"x0", x0, std::nullopt});
    cl.forms.push_back(SignForm{"x0+x2", s, P("X0+2*X2")});
    cl.components = {{"x0-,x0+x2+", "compact", true},
                     {"x0+,x0+x2+", "plus_positive", false},
                     {"x0-,x0+x2-", "plus_negative", false}};
    f.classifier = cl;
    InequalityWitness w;
    w.name = "compact_x2_bound";
    w.component = "compact";
    w.conclusion = {cond(Condition::LT, P("X2"), false, 3)};
    w.recipe.free_vars = {0, 2};
    w.recipe.box = {{-3, 0}, {0, 4}};
    w.recipe.steps = {{1, 0, false}, {3, 1, true}};
    f.witnesses.push_back(w);
    f.strategy = strategy(1, 0, 3, 1, {0, 2}, 200);

    f.point_sets = {
        {"integral",
         sorted(pts({"(-1:0:1:0:1)", "(17:3:4:13:1)", "(17:3:4:-13:1)", "(1409:147:-452:383:1)",
                     "(1409:147:-452:-383:1)", "(6305:12972:9043:3550:1)", "(6305:12972:9043:-3550:1)",
                     "(17741:12759:15044:20351:1)", "(17741:12759:15044:-20351:1)", "(-23293:-2328:-7367:19622:1)",
                     "(-23293:-2328:-7367:-19622:1)", "(60569:2052:11143:44472:1)", "(60569:2052:11143:-44472:1)"}))},
        {"table", pts({"(5:12/5:-1:2/5:1)", "(-37/13:21/13:4/13:5/13:1)", "(-85/91:-15/91:92/91:9/91:1)"})},
        {"real", pts({"(-41/8:3/2:5/4:-11/8:1)"})},
    };
    return f;
}

// ---------------------------------------------------------------- cubic surfaces in P^3, Y3 = 0 removed

inline Predicate cubic_symbol() {
    return hilbert("y0_y2_at_2", P("Y0*(Y2*Y3-Y1^2)", 4), P("Y2", 4), {Place::prime(2)}, 1, {P("Y0", 4), P("Y2", 4)});
}

inline Fixture cubic_ex1() {
    Fixture f;
    f.scheme = scheme("cubic_ex1", 3, 3,
                      {P("Y0^3+Y0*Y1*Y2+Y0*Y2^2-2*Y1^2*Y2+Y1^2*Y3+2*Y2^2*Y3-Y2*Y3^2", 4)});
    f.maps.push_back(blow_down("cubic_ex1", "dp4_ex1"));
    Predicate d;
    d.kind = Predicate::Disjunction;
    d.name = "symbol_or_gcd";
    d.children = {cubic_symbol(), gcd_gt_one("gcd_y0_2y2_minus_1", P("Y0", 4), P("2*Y2-Y3", 4))};
    d.require_nonzero = {P("Y0", 4), P("Y2", 4)};
    f.predicates.push_back(d);
    f.strategy = strategy(-1, 0, 1, 0, {0, 2}, 200);
    f.point_sets = {{"examples", pts({"(-1:-1:2:1)", "(-17:15:-8:1)", "(3:5:2:1)"})}};
    return f;
}

inline Fixture cubic_ex1_shifted() {
    Fixture f;
    f.scheme = scheme("cubic_ex1_shifted", 3, 3,
                      {P("128*Y0^3+144*Y0^2*Y3+32*Y0*Y1*Y2+8*Y0*Y1*Y3+128*Y0*Y2^2+80*Y0*Y2*Y3+66*Y0*Y3^2-16*Y1^2*Y2"
                         "-3*Y1^2*Y3-4*Y1*Y2*Y3+80*Y2^2*Y3+40*Y2*Y3^2+12*Y3^3",
                         4)});
    f.maps.push_back(poly_map("shift", "cubic_ex1_shifted", "cubic_ex1",
                              {"8*Y0+3*Y3", "2*Y1+Y3", "8*Y2+2*Y3", "Y3"}, 4));
    f.predicates.push_back(gcd_gt_one("gcd_shifted", P("8*Y0+3*Y3", 4), P("16*Y2+3*Y3", 4)));
    f.meta = {{"recurrence_A", "-110"},
              {"recurrence_B", "-1"},
              {"recurrence_t", "-48,-48,-24"},
              {"seed_c", "0,-2,0;-48,170,-24"},
              {"seed_c_prime", "0,2,0;-48,-266,-24"}};
    f.strategy = strategy(-1, 0, 1, 0, {0, 2}, 200);
    f.point_sets = {{"extra", pts({"(-1536:5414:-803:1)", "(20706:-344632:534:1)"})}};
    return f;
}

inline Fixture cubic_ex2() {
    Fixture f;
    f.scheme = scheme("cubic_ex2", 3, 3, {P("Y0^3+Y0*Y2^2-Y1^2*Y2+Y1^2*Y3+Y2^2*Y3-Y2*Y3^2", 4)});
    f.maps.push_back(blow_down("cubic_ex2", "dp4_ex2"));
    f.predicates.push_back(cubic_symbol());
    f.strategy = strategy(-1, 0, 1, 0, {0, 2}, 200);
    f.point_sets = {{"z2", pts({"(-1/3:-2/3:1/3:1)"})}};
    return f;
}

inline Fixture cubic_ex2_shifted() {
    Fixture f;
    f.scheme = scheme("cubic_ex2_shifted", 3, 3,
                      {P("16*Y0^3+12*Y0^2*Y3+16*Y0*Y2^2+24*Y0*Y2*Y3+12*Y0*Y3^2-4*Y1^2*Y2-2*Y1^2*Y3+8*Y2^2*Y3"
                         "+11*Y2*Y3^2+4*Y3^3",
                         4)});
    f.maps.push_back(poly_map("shift", "cubic_ex2_shifted", "cubic_ex2", {"4*Y0+Y3", "2*Y1", "4*Y2+3*Y3", "Y3"}, 4));
    f.meta = {{"certificate", "y0_y2_at_2"}, {"certificate_bits", "3"}, {"certificate_value", "-1"}};
    f.strategy = strategy(-1, 0, 1, 0, {0, 2}, 1000);
    f.point_sets = {{"z2", pts({"(-1/3:-1/3:-2/3:1)"})}};
    return f;
}

// ---------------------------------------------------------------- real-place examples

inline Fixture obst_example() {
    Fixture f;
    f.scheme = scheme("obst_example", 4, 4, {P("2*X0^2+X1^2+X2^2-26*X4^2"), P("3*X1^2+X2^2+X3^2-13*X4^2")});
    for (int i = 0; i < 4; ++i) {
        InequalityWitness w;
        w.name = "bound_x" + std::to_string(i);
        w.conclusion = {cond(Condition::LE, P("X" + std::to_string(i)), true, 3)};
        w.recipe.free_vars = {1, 2};
        w.recipe.box = {{-4, 4}, {-4, 4}};
        w.recipe.steps = {{0, 0, true}, {3, 1, true}};
        f.witnesses.push_back(w);
    }
    f.point_sets = {{"rational", pts({"(18/7:1/7:25/7:3/7:1)", "(54/19:23/19:55/19:9/19:1)"})}};
    return f;
}

inline Fixture harpaz_cubic() {
    Fixture f;
    f.scheme = scheme("harpaz_cubic", 3, 3, {P("((11*X0+5*X3)*X1+3*X3^2)*X2-(3*X0+X3)*X3^2", 4)});
    InequalityWitness w;
    w.name = "x0_bound";
    w.premise = {cond(Condition::GE, P("X1", 4), true, 1), cond(Condition::GE, P("X2", 4), true, 1)};
    w.conclusion = {cond(Condition::LE, P("X0", 4), true, Rational(9, 8))};
    w.recipe.free_vars = {1, 2};
    w.recipe.box = {{-10, 10}, {-10, 10}};
    w.recipe.steps = {{0, 0, false}};
    f.witnesses.push_back(w);
    return f;
}

inline Fixture p6_example() {
    Fixture f;
    f.scheme = scheme("p6_example", 6, 6,
                      {P("(X0^2+X1^2-X2^2)*(X3^2+X4^2-X5^2)-(X0^2+X1^2-X2^2+X3^2+X4^2-X5^2)*X6^2", 7)});
    InequalityWitness w;
    w.name = "quadric_bound";
    w.conclusion = {cond(Condition::LE, P("X0^2+X1^2-X2^2", 7), true, 2),
                    cond(Condition::LE, P("X3^2+X4^2-X5^2", 7), true, 2)};
    w.recipe.free_vars = {0, 1, 2, 3, 4};
    w.recipe.box = {{-3, 3}, {-3, 3}, {-3, 3}, {-3, 3}, {-3, 3}};
    w.recipe.steps = {{5, 0, true}};
    f.witnesses.push_back(w);
    return f;
}

}  // namespace catalog

/// The whole catalog, in a fixed order.
inline std::vector<Fixture> fixture_catalog() {
    using namespace catalog;
    return {dp4_ex1(),      dp4_ex1_shifted(),   dp4_ex2(),   dp4_ex2_shifted(),   dp4_ex3(),      cubic_ex1(),
            cubic_ex1_shifted(), cubic_ex2(), cubic_ex2_shifted(), obst_example(), harpaz_cubic(), p6_example()};
}

inline Fixture catalog_fixture(const std::string& name) {
    for (auto& f : fixture_catalog())
        if (f.name() == name) return f;
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

}  // namespace bmo
