// bmo_cli: command-line front end for the fixture catalog.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.

#include <bmo/bmo.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using json = nlohmann::ordered_json;
using namespace bmo;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fixture_dir = "./fixtures";

Fixture load(const std::string& name) {
    std::string path = fixture_dir + "/" + name + ".fix";
    if (!std::filesystem::exists(path)) throw UsageError("no fixture file " + path);
    return load_fixture_file(path);
}

void emit(const json& j) { std::cout << j.dump() << "\n"; }

json point_list(const std::vector<ProjPoint>& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(x.str());
    return a;
}

// ---------------------------------------------------------------- symbols

struct SymbolsArgs {
    std::string a, b, place;
};

int cmd_symbols(const SymbolsArgs& s) {
    Rational a, b;
    Place v;
    try {
        a = Rational::parse(s.a);
        b = Rational::parse(s.b);
        v = Place::parse(s.place);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    if (a.is_zero() || b.is_zero()) throw UsageError("symbol arguments must be nonzero");
    std::cout << (hilbert_symbol(a, b, v) == 1 ? "+1" : "-1") << "\n";
    return 0;
}

// ---------------------------------------------------------------- surface

int cmd_surface_check(const std::string& name) {
    Fixture f = load(name);
    int rc = 0;
    for (auto& [set, pts] : f.point_sets) {
        std::size_t on = 0;
        for (auto& x : pts) on += on_surface(f.scheme, x);
        if (on != pts.size()) rc = 1;
        emit({{"fixture", name}, {"op", "surface_points"}, {"set", set}, {"points", pts.size()}, {"on_surface", on}});
    }
    if (f.scheme.is_pencil_surface()) {
        auto r = pencil_degenerates(f.scheme);
        int pos = 0, neg = 0;
        for (auto& m : r.members)
            if (m.real) (m.discriminant_sign > 0 ? pos : neg) += 1;
        bool smooth = smoothness_check(f.scheme);
        if (!smooth) rc = 1;
        emit({{"fixture", name},
              {"op", "pencil"},
              {"smooth", smooth},
              {"real_members", r.real_members},
              {"all_rank_four", r.all_rank_four},
              {"positive", pos},
              {"negative", neg}});
    }
    return rc;
}

// ---------------------------------------------------------------- brauer

struct EvalArgs {
    std::string fixture, cls, point, place;
    bool alternates = true;
};

int cmd_brauer_eval(const EvalArgs& a) {
    Fixture f = load(a.fixture);
    ProjPoint x;
    Place v;
    try {
        x = ProjPoint::parse(a.point);
        v = Place::parse(a.place);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    Rational r = evaluate_class(f.cls(a.cls), x, v, a.alternates);
    emit({{"fixture", a.fixture}, {"op", "eval"}, {"class", a.cls}, {"point", x.str()}, {"place", v.str()}, {"value", r.str()}});
    return 0;
}

struct SweepArgs {
    std::string fixture, cls;
    std::uint64_t p = 2;
    int start = 0, cap = 0;
};

int cmd_brauer_sweep(const SweepArgs& a) {
    Fixture f = load(a.fixture);
    if (!is_prime(a.p)) throw UsageError("--p must be prime");
    int start = a.start ? a.start : (a.p == 2 ? 4 : 2);
    LocalOptions o;
    o.cap = a.cap ? a.cap : (a.p == 2 ? 6 : 4);
    auto s = sweep_evaluation(f.scheme, f.cls(a.cls), a.p, start, o);
    json vals = json::object();
    for (auto& [k, n] : s.values) vals[k] = n;
    emit({{"fixture", a.fixture},
          {"op", "sweep"},
          {"class", a.cls},
          {"p", a.p},
          {"constant", s.constant},
          {"values", vals},
          {"undetermined", s.indeterminate},
          {"start", s.start},
          {"cap", s.cap}});
    return 0;
}

// ---------------------------------------------------------------- points

struct SearchArgs {
    std::string fixture, out;
    long long height = 0;
    int workers = 1;
};

int cmd_points_search(const SearchArgs& a) {
    Fixture f = load(a.fixture);
    SearchStrategy st = f.strategy ? *f.strategy : auto_strategy(f.scheme, a.height ? a.height : 100);
    if (a.height) st.height = a.height;
    auto v = integral_point_search(f.scheme, st, a.workers);
    if (!a.out.empty()) {
        std::ofstream os(a.out);
        if (!os) throw UsageError("cannot write " + a.out);
        os << serialize_points(v, f.scheme.hyperplane_index);
    }
    emit({{"fixture", a.fixture}, {"op", "search"}, {"height", st.height}, {"count", v.size()}, {"points", point_list(v)}});
    return 0;
}

struct AuditArgs {
    std::string fixture, predicate, set, file;
};

int cmd_points_audit(const AuditArgs& a) {
    Fixture f = load(a.fixture);
    std::vector<ProjPoint> pts;
    if (!a.file.empty()) {
        std::ifstream in(a.file);
        if (!in) throw UsageError("cannot open " + a.file);
        std::stringstream ss;
        ss << in.rdbuf();
        pts = parse_points(ss.str(), f.scheme.hyperplane_index);
    } else {
        pts = f.points(a.set);
    }
    auto r = audit_predicate(pts, f.predicate(a.predicate), f.scheme.hyperplane_index);
    json bad = json::array();
    for (auto& [x, why] : r.counterexamples) bad.push_back(x.str());
    emit({{"fixture", a.fixture},
          {"op", "audit"},
          {"predicate", a.predicate},
          {"set", a.file.empty() ? a.set : a.file},
          {"checked", r.checked},
          {"skipped", r.skipped.size()},
          {"holds", r.holds_for_all},
          {"counterexamples", bad}});
    return r.holds_for_all ? 0 : 1;
}

struct RecurArgs {
    std::string fixture, seed = "seed_c";
    int count = 4;
};

int cmd_points_recur(const RecurArgs& a) {
    Fixture f = load(a.fixture);
    std::string seeds = f.meta_value(a.seed);
    if (seeds.empty()) throw UsageError(a.fixture + ": no recurrence seed '" + a.seed + "'");
    auto s = bundles::parse_triples(seeds);
    auto t = bundles::parse_triples(f.meta_value("recurrence_t"))[0];
    auto terms = recurrence_family(s[0], s[1], BigInt(f.meta_value("recurrence_A")), BigInt(f.meta_value("recurrence_B")), t,
                                   a.count, f.scheme);
    json arr = json::array();
    for (auto& tr : terms) {
        json row = json::array();
        for (auto& x : tr) row.push_back(x.str());
        arr.push_back(row);
    }
    emit({{"fixture", a.fixture}, {"op", "recur"}, {"seed", a.seed}, {"count", terms.size()}, {"terms", arr}});
    return 0;
}

// ---------------------------------------------------------------- local

struct CensusArgs {
    std::string fixture, pair = "1,3";
    std::uint64_t p = 17;
};

int cmd_local_census(const CensusArgs& a) {
    Fixture f = load(a.fixture);
    if (!is_prime(a.p)) throw UsageError("--p must be prime");
    auto ij = io::read_ints(a.pair);
    if (ij.size() != 2 || ij[0] < 0 || ij[1] < 0) throw UsageError("--pair expects two indices i,j");
    auto c = boundary_census(f.scheme, a.p, ij[0], ij[1]);
    emit({{"fixture", a.fixture},
          {"op", "census"},
          {"p", a.p},
          {"pair", a.pair},
          {"count", c.count},
          {"nonvanishing", c.nonvanishing},
          {"square_ratio", c.square_ratio}});
    return 0;
}

int cmd_local_solubility(const std::string& name, std::uint64_t p) {
    Fixture f = load(name);
    if (!is_prime(p)) throw UsageError("--p must be prime");
    auto s = zp_solubility(f.scheme, p);
    json j = {{"fixture", name}, {"op", "solubility"}, {"p", p}, {"status", status_name(s.status)}, {"level", s.level}};
    if (s.witness) {
        json w = json::array();
        for (auto r : s.witness->coords) w.push_back(r);
        j["witness"] = w;
    }
    emit(j);
    return 0;
}

// ---------------------------------------------------------------- cohomology

json factors(const std::vector<BigInt>& v) {
    json a = json::array();
    for (auto& x : v) a.push_back(x.str());
    return a;
}

int cmd_cohomology_run() {
    WeylD5 w;
    auto ce = subgroup_classes(w);
    std::size_t k = 0;
    for (auto& c : ce.classes)
        emit({{"op", "cohomology_class"},
              {"index", ++k},
              {"order", c.order},
              {"orbit_type", c.orbit_type},
              {"abelianization", c.abelian},
              {"h1", factors(c.h1)}});
    emit({{"op", "cohomology_summary"}, {"classes", ce.classes.size()}, {"complete", ce.complete}});
    return ce.complete ? 0 : 1;
}

int cmd_cohomology_h1(const std::string& spec) {
    WeylD5 w;
    Subgroup s;
    if (spec == "trivial") s = w.trivial();
    else if (spec == "full") s = w.full();
    else if (spec == "index_five") s = w.index_five();
    else if (spec == "order_96") s = w.order_96();
    else if (spec == "index_two") s = w.index_two();
    else if (spec == "kernel_s5") s = w.kernel_s5();
    else {
        std::vector<Perm> gens;
        try {
            gens = parse_perm_list(spec);
        } catch (const std::exception& e) {
            throw UsageError(e.what());
        }
        s = subgroup_from_perms(w.group, gens);
    }
    emit({{"op", "h1"},
          {"subgroup", spec},
          {"order", s.order()},
          {"orbit_type", orbit_type(w.group, s)},
          {"abelianization", abelianization(w.group, s)},
          {"h1", factors(h1(w.group, s, w.module))}});
    return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::string& bundle) {
    if (!has_bundle(bundle)) {
        std::string all;
        for (auto& n : bundle_names()) all += " " + n;
        throw UsageError("unknown bundle '" + bundle + "'; available:" + all);
    }
    auto r = run_bundle(bundle, load);
    for (auto& c : r.checks) {
        std::cout << (c.pass ? "PASS" : "FAIL") << " " << r.bundle << "/" << c.name << " [" << c.basis << "]";
        if (!c.detail.empty()) std::cout << " " << c.detail;
        if (c.known) std::cout << " (known deviation)";
        std::cout << "\n";
    }
    std::size_t hard = r.failures(), soft = r.failures(true) - hard;
    std::cout << r.bundle << ": " << r.checks.size() - hard - soft << "/" << r.checks.size() << " passed";
    if (soft) std::cout << ", " << soft << " known deviation" << (soft > 1 ? "s" : "");
    std::cout << "\n";
    return hard ? 1 : 0;
}

// ---------------------------------------------------------------- fixtures

int cmd_fixtures_dump(const std::string& out) {
    std::filesystem::create_directories(out + "/points");
    for (auto& f : fixture_catalog()) {
        std::ofstream os(out + "/" + f.name() + ".fix");
        if (!os) throw UsageError("cannot write into " + out);
        os << serialize_fixture(f);
        for (auto& [set, pts] : f.point_sets) {
            std::ofstream ps(out + "/points/" + f.name() + "." + set + ".pts");
            ps << serialize_points(pts, f.scheme.hyperplane_index);
        }
        std::cout << f.name() << "\n";
    }
    return 0;
}

int cmd_fixtures_list() {
    for (auto& f : fixture_catalog()) {
        Fixture g = load(f.name());
        std::cout << g.name() << (g == f ? "" : " (differs from built-in catalog)") << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Brauer-Manin computations on the fixture catalog"};
    app.require_subcommand(1);
    app.add_option("--fixtures", fixture_dir, "fixture directory")->capture_default_str();

    std::function<int()> run;

    SymbolsArgs sa;
    auto* sym = app.add_subcommand("symbols", "Hilbert symbol (a,b)_v");
    sym->add_option("--a", sa.a)->required();
    sym->add_option("--b", sa.b)->required();
    sym->add_option("--place", sa.place)->required();
    sym->callback([&] { run = [&] { return cmd_symbols(sa); }; });

    std::string fx;
    auto* surf = app.add_subcommand("surface", "surface checks")->require_subcommand(1);
    auto* surf_check = surf->add_subcommand("check", "point sets on the surface, pencil degenerations");
    surf_check->add_option("--fixture", fx)->required();
    surf_check->callback([&] { run = [&] { return cmd_surface_check(fx); }; });

    EvalArgs ea;
    SweepArgs swa;
    auto* br = app.add_subcommand("brauer", "Brauer class evaluation")->require_subcommand(1);
    auto* br_eval = br->add_subcommand("eval", "local invariant at one point");
    br_eval->add_option("--fixture", ea.fixture)->required();
    br_eval->add_option("--class", ea.cls)->required();
    br_eval->add_option("--point", ea.point)->required();
    br_eval->add_option("--place", ea.place)->required();
    br_eval->add_flag("!--no-alternates", ea.alternates, "fail instead of switching representative");
    br_eval->callback([&] { run = [&] { return cmd_brauer_eval(ea); }; });
    auto* br_sweep = br->add_subcommand("sweep", "evaluation over integral points mod p^k");
    br_sweep->add_option("--fixture", swa.fixture)->required();
    br_sweep->add_option("--class", swa.cls)->required();
    br_sweep->add_option("--p", swa.p)->required();
    br_sweep->add_option("--start", swa.start, "starting precision");
    br_sweep->add_option("--cap", swa.cap, "maximal precision");
    br_sweep->callback([&] { run = [&] { return cmd_brauer_sweep(swa); }; });

    SearchArgs sea;
    AuditArgs aa;
    RecurArgs ra;
    auto* pts = app.add_subcommand("points", "integral points")->require_subcommand(1);
    auto* p_search = pts->add_subcommand("search", "exhaustive search up to a height");
    p_search->add_option("--fixture", sea.fixture)->required();
    p_search->add_option("--height", sea.height);
    p_search->add_option("--workers", sea.workers)->check(CLI::Range(1, 64));
    p_search->add_option("--out", sea.out, "write the points to a file");
    p_search->callback([&] { run = [&] { return cmd_points_search(sea); }; });
    auto* p_audit = pts->add_subcommand("audit", "check a predicate on a point set");
    p_audit->add_option("--fixture", aa.fixture)->required();
    p_audit->add_option("--predicate", aa.predicate)->required();
    auto* set_opt = p_audit->add_option("--set", aa.set, "point set of the fixture");
    p_audit->add_option("--points", aa.file, "point file")->excludes(set_opt);
    p_audit->callback([&] {
        if (aa.set.empty() && aa.file.empty()) throw CLI::ValidationError("--set or --points is required");
        run = [&] { return cmd_points_audit(aa); };
    });
    auto* p_recur = pts->add_subcommand("recur", "terms of a recurrence family");
    p_recur->add_option("--fixture", ra.fixture)->required();
    p_recur->add_option("--seed", ra.seed)->capture_default_str();
    p_recur->add_option("--count", ra.count)->check(CLI::Range(2, 64))->capture_default_str();
    p_recur->callback([&] { run = [&] { return cmd_points_recur(ra); }; });

    CensusArgs ca;
    std::string sol_fx;
    std::uint64_t sol_p = 2;
    auto* loc = app.add_subcommand("local", "local computations")->require_subcommand(1);
    auto* l_census = loc->add_subcommand("census", "F_p-points of the boundary curve");
    l_census->add_option("--fixture", ca.fixture)->required();
    l_census->add_option("--p", ca.p)->capture_default_str();
    l_census->add_option("--pair", ca.pair)->capture_default_str();
    l_census->callback([&] { run = [&] { return cmd_local_census(ca); }; });
    auto* l_sol = loc->add_subcommand("solubility", "Z_p-point by Hensel lifting");
    l_sol->add_option("--fixture", sol_fx)->required();
    l_sol->add_option("--p", sol_p)->required();
    l_sol->callback([&] { run = [&] { return cmd_local_solubility(sol_fx, sol_p); }; });

    std::string subgroup;
    auto* coh = app.add_subcommand("cohomology", "H^1(H, D5*) for subgroups of W(D5)")->require_subcommand(1);
    auto* c_run = coh->add_subcommand("run", "all conjugacy classes of subgroups");
    c_run->callback([&] { run = [&] { return cmd_cohomology_run(); }; });
    auto* c_h1 = coh->add_subcommand("h1", "one subgroup");
    c_h1->add_option("--subgroup", subgroup, "named subgroup or generators \"[..];[..]\"")->required();
    c_h1->callback([&] { run = [&] { return cmd_cohomology_h1(subgroup); }; });

    std::string bundle;
    auto* ver = app.add_subcommand("verify", "run a verification bundle");
    ver->add_option("bundle", bundle)->required();
    ver->callback([&] { run = [&] { return cmd_verify(bundle); }; });

    std::string out;
    auto* fix = app.add_subcommand("fixtures", "fixture files")->require_subcommand(1);
    auto* f_dump = fix->add_subcommand("dump", "write the built-in catalog");
    f_dump->add_option("--out", out)->required();
    f_dump->callback([&] { run = [&] { return cmd_fixtures_dump(out); }; });
    auto* f_list = fix->add_subcommand("list", "load every fixture file");
    f_list->callback([&] { run = [&] { return cmd_fixtures_list(); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    try {
        return run();
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
