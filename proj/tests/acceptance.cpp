// Acceptance runner: one PASS/FAIL line per criterion. Known deviations print
// FAIL with a note and do not change the exit code.

#include <bmo/bmo.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"

using namespace bmo;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;    // failed parts that are not known
    std::vector<std::string> known;    // failed parts recorded as known deviations
    std::vector<std::string> details;  // summary of passed parts
};

std::map<std::string, BundleReport>& bundle_cache() {
    static std::map<std::string, BundleReport> cache;
    return cache;
}

const BundleReport& bundle(const std::string& name) {
    auto& c = bundle_cache();
    auto it = c.find(name);
    if (it == c.end()) it = c.emplace(name, run_bundle(name, directory_loader(BMO_FIXTURE_DIR))).first;
    return it->second;
}

/// Folds the named checks of a bundle into the outcome.
void take(Outcome& o, const std::string& b, const std::vector<std::string>& names) {
    const auto& r = bundle(b);
    for (auto& n : names) {
        const Check* c = nullptr;
        for (auto& x : r.checks)
            if (x.name == n) c = &x;
        std::string id = b + "/" + n;
        if (!c) {
            o.pass = false;
            o.notes.push_back(id + " missing");
        } else if (c->pass) {
            o.details.push_back(id);
        } else if (c->known) {
            o.known.push_back(id + ": " + c->detail);
        } else {
            o.pass = false;
            o.notes.push_back(id + ": " + c->detail);
        }
    }
}

void expect(Outcome& o, bool ok, const std::string& what) {
    if (ok) o.details.push_back(what);
    else {
        o.pass = false;
        o.notes.push_back(what);
    }
}

Outcome ac1() {
    Outcome o;
    std::vector<Place> places{Place::prime(2), Place::prime(3), Place::prime(5),
                              Place::prime(7), Place::prime(17), Place::real_place()};
    auto pool = oracle::symbol_pool();
    std::size_t n = 0, bad = 0, undecided = 0;
    for (auto& v : places)
        for (auto& a : pool)
            for (auto& b : pool) {
                int want = v.real ? oracle::hilbert_real(a, b) : oracle::hilbert_by_lifting(a, b, v.p);
                ++n;
                if (want == 0) ++undecided;
                else if (hilbert_symbol(a, b, v) != want) ++bad;
            }
    expect(o, pool.size() == 28 && bad == 0 && undecided == 0,
           std::to_string(n) + " pairs vs lifting oracle, " + std::to_string(bad) + " mismatches, " +
               std::to_string(undecided) + " undecided");
    using R = Rational;
    bool fixed = hilbert_symbol(-1, 2, Place::prime(2)) == 1 &&
                 hilbert_symbol(R(BigInt(2), BigInt(5)), R(BigInt(1), BigInt(5)), Place::prime(2)) == -1 &&
                 hilbert_symbol(3, 3, Place::prime(2)) == -1 && hilbert_symbol(3, 2, Place::prime(2)) == -1 &&
                 hilbert_symbol(-4, -2, Place::real_place()) == -1;
    expect(o, fixed, "five reference values");
    return o;
}

Outcome ac2() {
    Outcome o;
    auto c = boundary_census(catalog_fixture("dp4_ex1").scheme, 17, 1, 3);
    expect(o, c.count == 17 && c.nonvanishing == 14 && c.square_ratio == 14,
           "census (" + std::to_string(c.count) + "," + std::to_string(c.nonvanishing) + "," +
               std::to_string(c.square_ratio) + ")");
    return o;
}

Outcome ac3() {
    Outcome o;
    take(o, "ex1",
         {"tau_constant_at_3", "tau_constant_at_5", "tau_constant_at_7", "tau_constant_at_11", "tau_constant_at_13",
          "tau_nonconstant_at_2"});
    take(o, "ex2", {"alpha_plus_tau_constant_at_2", "tau_nonconstant_at_2"});
    return o;
}

Outcome ac4() {
    Outcome o;
    take(o, "ex1", {"listed_points", "section_points", "section_search", "audit_x1_x3_at_2", "search_H200"});
    take(o, "ex2",
         {"listed_points", "audit_x1_minus1_at_2_real", "audit_x1_x3_at_2", "audit_x1_minus_x3_at_real",
          "search_H30_naive", "search_H200"});
    take(o, "ex3", {"integral_points", "search_H200"});
    for (auto* name : {"dp4_ex1", "dp4_ex3"}) {
        auto f = load_fixture_file(std::string(BMO_FIXTURE_DIR) + "/" + name + ".fix");
        SearchStrategy st = *f.strategy;
        st.height = 30;
        auto a = integral_point_search(f.scheme, st);
        expect(o, a == naive_point_search(f.scheme, 30), std::string(name) + " H30 naive: " + std::to_string(a.size()));
    }
    return o;
}

Outcome ac5() {
    Outcome o;
    take(o, "ex1_shifted", {"shift_pullback", "symbol_3_2_at_2", "residue_certificate", "no_integral_point_H1000"});
    take(o, "ex2_shifted", {"shift_pullback", "symbol_3_3_at_2", "residue_certificate", "no_integral_point_H1000"});
    take(o, "cubic_ex2", {"shifted_pullback", "shifted_certificate", "shifted_no_integral_point_H1000"});
    return o;
}

Outcome ac6() {
    Outcome o;
    take(o, "cubic_ex1_shifted", {"recursion_seed_c", "recursion_seed_c_prime", "extra_points", "audit_extra"});
    return o;
}

Outcome ac7() {
    Outcome o;
    WeylD5 w;
    auto s = [&](const Subgroup& h) { return factor_list_str(h1(w.group, h, w.module)); };
    expect(o, s(w.trivial()) == "[]", "trivial " + s(w.trivial()));
    expect(o, s(w.full()) == "[]", "full " + s(w.full()));
    auto i5 = w.index_five();
    expect(o, i5.order() == 384 && s(i5) == "[ 2 ]", "order " + std::to_string(i5.order()) + " " + s(i5));
    auto o96 = w.order_96();
    expect(o, o96.order() == 96 && s(o96) == "[ 2, 2 ]", "order " + std::to_string(o96.order()) + " " + s(o96));
    std::mt19937 rng(1920);
    int agree = 0;
    for (int k = 0; k < 20; ++k) {
        int e = static_cast<int>(rng() % w.group.order());
        agree += h1(w.group, closure(w.group, {e}), w.module) == h1_cyclic_oracle(w.group, e, w.module);
    }
    expect(o, agree == 20, std::to_string(agree) + "/20 cyclic subgroups match the norm oracle");
    return o;
}

Outcome ac8() {
    Outcome o;
    take(o, "figure1", {"group_order", "class_count", "h1_histogram", "printed_rows"});
    return o;
}

Outcome ac9() {
    Outcome o;
    take(o, "obstruction_infinity",
         {"harpaz_x0_bound", "obst_bound_x0", "obst_bound_x1", "obst_bound_x2", "obst_bound_x3"});
    take(o, "ex2", {"witness_x1_gap"});
    take(o, "ex3", {"witness_compact_x2_bound"});
    return o;
}

Outcome ac10() {
    Outcome o;
    take(o, "ex3",
         {"table_x_alpha1", "table_x_alpha2", "table_x_alpha1+alpha2", "table_xp_alpha1", "table_xp_alpha2",
          "table_xpp_alpha1+alpha2"});
    return o;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string s;
    for (auto& x : v) s += (s.empty() ? "" : sep) + x;
    return s;
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"AC1 hilbert symbol oracle suite", ac1},   {"AC2 boundary census at 17", ac2},
        {"AC3 sweep constancy", ac3},               {"AC4 point lists and searches", ac4},
        {"AC5 non-existence on shifted models", ac5}, {"AC6 recursions", ac6},
        {"AC7 cohomology spot checks", ac7},        {"AC8 subgroup classes and h1 table", ac8},
        {"AC9 real witness suites", ac9},           {"AC10 local evaluation table", ac10},
    };
    int hard = 0;
    for (auto& [name, fn] : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.2fs", secs);
        bool clean = o.pass && o.known.empty();
        std::cout << (clean ? "PASS " : "FAIL ") << name << " (" << buf << ")";
        if (!o.pass) {
            ++hard;
            std::cout << " :: " << join(o.notes, "; ");
        }
        if (!o.known.empty()) std::cout << " :: known deviation: " << join(o.known, "; ");
        std::cout << "\n";
        if (clean) std::cout << "     " << join(o.details, ", ") << "\n";
    }
    std::cout << (hard ? "acceptance: failures" : "acceptance: all criteria pass or are known deviations") << "\n";
    return hard ? 1 : 0;
}
