#pragma once

#include "brauer.hpp"
#include "geometry.hpp"
#include "search.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace bmo {

/// Everything known about one scheme of the catalog.
struct Fixture {
    Scheme scheme;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<RationalMap> maps;
    std::vector<SymbolClass> classes;
    std::vector<AlgebraicPattern> algebraic_patterns;
    std::vector<TranscendentalPattern> transcendental_patterns;
    std::vector<Predicate> predicates;
    std::optional<ComponentClassifier> classifier;
    std::vector<InequalityWitness> witnesses;
    std::optional<SearchStrategy> strategy;
    std::vector<std::pair<std::string, std::vector<ProjPoint>>> point_sets;

    const std::string& name() const { return scheme.name; }

    std::string meta_value(const std::string& key, const std::string& fallback = "") const {
        for (auto& [k, v] : meta)
            if (k == key) return v;
        return fallback;
    }
    const SymbolClass& cls(const std::string& n) const {
        for (auto& c : classes)
            if (c.name == n) return c;
        throw std::invalid_argument(name() + ": no Brauer class '" + n + "'");
    }
    const RationalMap& map(const std::string& n) const {
        for (auto& m : maps)
            if (m.name == n) return m;
        throw std::invalid_argument(name() + ": no map '" + n + "'");
    }
    const Predicate& predicate(const std::string& n) const {
        for (auto& p : predicates)
            if (p.name == n) return p;
        throw std::invalid_argument(name() + ": no predicate '" + n + "'");
    }
    const InequalityWitness& witness(const std::string& n) const {
        for (auto& w : witnesses)
            if (w.name == n) return w;
        throw std::invalid_argument(name() + ": no witness '" + n + "'");
    }
    const std::vector<ProjPoint>& points(const std::string& n) const {
        for (auto& [k, v] : point_sets)
            if (k == n) return v;
        throw std::invalid_argument(name() + ": no point set '" + n + "'");
    }
    bool has_points(const std::string& n) const {
        for (auto& [k, v] : point_sets)
            if (k == n) return true;
        return false;
    }
    friend bool operator==(const Fixture& a, const Fixture& b) {
        return a.scheme == b.scheme && a.meta == b.meta && a.maps == b.maps && a.classes == b.classes &&
               a.algebraic_patterns == b.algebraic_patterns && a.transcendental_patterns == b.transcendental_patterns &&
               a.predicates == b.predicates && a.classifier == b.classifier && a.witnesses == b.witnesses &&
               a.strategy == b.strategy && a.point_sets == b.point_sets;
    }
};

// ---------------------------------------------------------------- text format
//
//   begin KIND [NAME] [key=value ...]
//     raw lines, or nested nodes
//   end
//
// A polynomial is a node "begin poly LABEL" whose lines read "[e0,...,en] c".
// Lines starting with '#' are comments.

struct Node {
    std::string kind, name;
    std::vector<std::pair<std::string, std::string>> attrs;
    std::vector<std::string> lines;
    std::vector<Node> children;

    std::string attr(const std::string& k) const {
        for (auto& [a, v] : attrs)
            if (a == k) return v;
        throw std::invalid_argument("node " + kind + " " + name + ": missing attribute '" + k + "'");
    }
    std::string attr_or(const std::string& k, const std::string& d) const {
        for (auto& [a, v] : attrs)
            if (a == k) return v;
        return d;
    }
    std::vector<const Node*> all(const std::string& k) const {
        std::vector<const Node*> out;
        for (auto& c : children)
            if (c.kind == k) out.push_back(&c);
        return out;
    }
    const Node& one(const std::string& k, const std::string& n) const {
        for (auto& c : children)
            if (c.kind == k && c.name == n) return c;
        throw std::invalid_argument("node " + kind + " " + name + ": missing " + k + " " + n);
    }
    const Node* find(const std::string& k, const std::string& n) const {
        for (auto& c : children)
            if (c.kind == k && c.name == n) return &c;
        return nullptr;
    }
};

namespace io {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream is(s);
    std::vector<std::string> v;
    std::string t;
    while (is >> t) v.push_back(t);
    return v;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> v;
    if (s.empty()) return v;
    std::size_t b = 0;
    for (;;) {
        auto e = s.find(sep, b);
        v.push_back(s.substr(b, e == std::string::npos ? std::string::npos : e - b));
        if (e == std::string::npos) break;
        b = e + 1;
    }
    return v;
}

inline std::vector<Node> parse_nodes(const std::string& text) {
    std::vector<Node> roots;
    std::vector<Node> stack;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("fixture text line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(is, raw)) {
        ++lineno;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        auto tok = split_ws(line);
        if (tok[0] == "begin") {
            if (tok.size() < 2) fail("begin without kind");
            Node n;
            n.kind = tok[1];
            std::size_t i = 2;
            if (i < tok.size() && tok[i].find('=') == std::string::npos) n.name = tok[i++];
            for (; i < tok.size(); ++i) {
                auto eq = tok[i].find('=');
                if (eq == std::string::npos) fail("expected key=value, got '" + tok[i] + "'");
                n.attrs.push_back({tok[i].substr(0, eq), tok[i].substr(eq + 1)});
            }
            stack.push_back(std::move(n));
        } else if (tok[0] == "end") {
            if (stack.empty()) fail("unmatched end");
            Node n = std::move(stack.back());
            stack.pop_back();
            if (stack.empty()) roots.push_back(std::move(n));
            else stack.back().children.push_back(std::move(n));
        } else {
            if (stack.empty()) fail("content outside a node");
            stack.back().lines.push_back(line);
        }
    }
    if (!stack.empty()) throw std::invalid_argument("fixture text: unterminated node " + stack.back().kind);
    return roots;
}

inline void write_node(std::ostream& os, const Node& n, int depth) {
    std::string ind(2 * depth, ' ');
    os << ind << "begin " << n.kind;
    if (!n.name.empty()) os << " " << n.name;
    for (auto& [k, v] : n.attrs) os << " " << k << "=" << v;
    os << "\n";
    for (auto& l : n.lines) os << ind << "  " << l << "\n";
    for (auto& c : n.children) write_node(os, c, depth + 1);
    os << ind << "end\n";
}

// ---- polynomials

inline Node poly_node(const std::string& label, const Poly& p) {
    Node n;
    n.kind = "poly";
    n.name = label;
    n.attrs.push_back({"nvars", std::to_string(p.nvars())});
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        std::string e = "[";
        for (std::size_t i = 0; i < it->first.size(); ++i) e += (i ? "," : "") + std::to_string(it->first[i]);
        n.lines.push_back(e + "] " + it->second.str());
    }
    return n;
}

inline Poly read_poly(const Node& n) {
    std::size_t nv = std::stoul(n.attr("nvars"));
    Poly p(nv);
    for (auto& l : n.lines) {
        auto close = l.find(']');
        if (l.empty() || l[0] != '[' || close == std::string::npos) throw std::invalid_argument("bad term line '" + l + "'");
        Exponent e;
        for (auto& s : split(l.substr(1, close - 1), ',')) e.push_back(std::stoi(s));
        if (e.size() != nv) throw std::invalid_argument("term arity mismatch in '" + l + "'");
        std::string c = trim(l.substr(close + 1));
        p.add_term(e, BigInt(c));
    }
    return p;
}

inline Poly child_poly(const Node& n, const std::string& label) { return read_poly(n.one("poly", label)); }

inline std::string join_ints(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s.empty() ? "-" : s;
}
inline std::vector<int> read_ints(const std::string& s) {
    std::vector<int> v;
    if (s == "-") return v;
    for (auto& t : split(s, ',')) v.push_back(std::stoi(t));
    return v;
}

inline std::string point_line(const ProjPoint& p, std::size_t h) {
    std::string s;
    auto a = p.affine(h);
    for (std::size_t i = 0; i < a.size(); ++i) s += (i ? " " : "") + a[i].str();
    return s;
}

// ---- typed codecs

inline Node encode_symbol(const Symbol& s) {
    Node n;
    n.kind = "symbol";
    n.children = {poly_node("f_num", s.f.num), poly_node("f_den", s.f.den), poly_node("g_num", s.g.num),
                  poly_node("g_den", s.g.den)};
    return n;
}
inline Symbol decode_symbol(const Node& n) {
    return Symbol{RatForm{child_poly(n, "f_num"), child_poly(n, "f_den")},
                  RatForm{child_poly(n, "g_num"), child_poly(n, "g_den")}};
}

inline std::string cmp_name(Condition::Cmp c) {
    switch (c) {
        case Condition::LE: return "le";
        case Condition::LT: return "lt";
        case Condition::GE: return "ge";
        case Condition::GT: return "gt";
    }
    return "le";
}
inline Condition::Cmp parse_cmp(const std::string& s) {
    if (s == "le") return Condition::LE;
    if (s == "lt") return Condition::LT;
    if (s == "ge") return Condition::GE;
    if (s == "gt") return Condition::GT;
    throw std::invalid_argument("bad comparison '" + s + "'");
}

inline Node encode_predicate(const Predicate& p) {
    Node n;
    n.kind = "predicate";
    n.name = p.name.empty() ? "-" : p.name;
    switch (p.kind) {
        case Predicate::GcdGtOne: n.attrs.push_back({"kind", "gcd_gt_one"}); break;
        case Predicate::HilbertEq: {
            n.attrs.push_back({"kind", "hilbert_eq"});
            std::string pl;
            for (std::size_t i = 0; i < p.places.size(); ++i) pl += (i ? "," : "") + p.places[i].str();
            n.attrs.push_back({"places", pl});
            n.attrs.push_back({"expected", std::to_string(p.expected)});
            break;
        }
        case Predicate::Disjunction: n.attrs.push_back({"kind", "or"}); break;
    }
    for (std::size_t i = 0; i < p.forms.size(); ++i) n.children.push_back(poly_node("arg" + std::to_string(i), p.forms[i]));
    for (std::size_t i = 0; i < p.require_nonzero.size(); ++i)
        n.children.push_back(poly_node("nonzero" + std::to_string(i), p.require_nonzero[i]));
    for (auto& c : p.children) n.children.push_back(encode_predicate(c));
    return n;
}
inline Predicate decode_predicate(const Node& n) {
    Predicate p;
    p.name = n.name == "-" ? "" : n.name;
    std::string k = n.attr("kind");
    if (k == "gcd_gt_one") p.kind = Predicate::GcdGtOne;
    else if (k == "hilbert_eq") {
        p.kind = Predicate::HilbertEq;
        for (auto& s : split(n.attr("places"), ',')) p.places.push_back(Place::parse(s));
        p.expected = std::stoi(n.attr("expected"));
    } else if (k == "or") p.kind = Predicate::Disjunction;
    else throw std::invalid_argument("bad predicate kind '" + k + "'");
    for (auto& c : n.children) {
        if (c.kind == "poly" && c.name.rfind("arg", 0) == 0) p.forms.push_back(read_poly(c));
        else if (c.kind == "poly" && c.name.rfind("nonzero", 0) == 0) p.require_nonzero.push_back(read_poly(c));
        else if (c.kind == "predicate") p.children.push_back(decode_predicate(c));
    }
    return p;
}

inline Node encode_condition(const std::string& kind, const Condition& c) {
    Node n;
    n.kind = kind;
    n.attrs = {{"cmp", cmp_name(c.cmp)}, {"abs", c.absolute ? "1" : "0"}, {"bound", c.bound.str()}};
    n.children.push_back(poly_node("form", c.form));
    return n;
}
inline Condition decode_condition(const Node& n) {
    Condition c;
    c.cmp = parse_cmp(n.attr("cmp"));
    c.absolute = n.attr("abs") == "1";
    c.bound = Rational::parse(n.attr("bound"));
    c.form = child_poly(n, "form");
    return c;
}

}  // namespace io

inline Node encode_fixture(const Fixture& f) {
    using namespace io;
    Node root;
    root.kind = "fixture";
    root.name = f.scheme.name;
    root.attrs = {{"ambient_dim", std::to_string(f.scheme.ambient_dim)},
                  {"hyperplane_index", std::to_string(f.scheme.hyperplane_index)}};
    if (!f.meta.empty()) {
        Node m;
        m.kind = "meta";
        for (auto& [k, v] : f.meta) m.lines.push_back(k + " " + v);
        root.children.push_back(m);
    }
    for (std::size_t i = 0; i < f.scheme.forms.size(); ++i)
        root.children.push_back(poly_node("form" + std::to_string(i), f.scheme.forms[i]));
    for (auto& m : f.maps) {
        Node n;
        n.kind = "map";
        n.name = m.name;
        n.attrs = {{"source", m.source}, {"target", m.target}};
        for (std::size_t i = 0; i < m.num.size(); ++i) {
            n.children.push_back(poly_node("num" + std::to_string(i), m.num[i]));
            n.children.push_back(poly_node("den" + std::to_string(i), m.den[i]));
        }
        root.children.push_back(n);
    }
    for (auto& c : f.classes) {
        Node n;
        n.kind = "class";
        n.name = c.name;
        n.attrs = {{"kind", kind_name(c.kind)}};
        for (auto& rep : c.reps) {
            Node r;
            r.kind = "rep";
            for (auto& s : rep) r.children.push_back(encode_symbol(s));
            n.children.push_back(r);
        }
        root.children.push_back(n);
    }
    for (auto& p : f.algebraic_patterns) {
        Node n;
        n.kind = "algebraic_pattern";
        n.name = p.name;
        n.attrs = {{"class", p.class_name}, {"d", p.d.str()}, {"mu", p.mu.str()}, {"nu", p.nu.str()}};
        n.children = {poly_node("l1", p.l1), poly_node("l2", p.l2), poly_node("l3", p.l3), poly_node("l4", p.l4)};
        root.children.push_back(n);
    }
    for (auto& p : f.transcendental_patterns) {
        Node n;
        n.kind = "transcendental_pattern";
        n.name = p.name;
        n.attrs = {{"class", p.class_name}, {"a", p.a.str()}, {"b", p.b.str()}};
        n.children = {poly_node("l1", p.l1), poly_node("l2", p.l2), poly_node("l3", p.l3),
                      poly_node("l4", p.l4), poly_node("u", p.u),   poly_node("v", p.v)};
        root.children.push_back(n);
    }
    for (auto& p : f.predicates) root.children.push_back(encode_predicate(p));
    if (f.classifier) {
        Node n;
        n.kind = "classifier";
        for (auto& s : f.classifier->forms) {
            Node sn;
            sn.kind = "sign";
            sn.name = s.label;
            sn.children.push_back(poly_node("form", s.form));
            if (s.tiebreak) sn.children.push_back(poly_node("tiebreak", *s.tiebreak));
            n.children.push_back(sn);
        }
        for (auto& c : f.classifier->components)
            n.lines.push_back("component " + c.label + " " + c.name + " " + (c.compact ? "compact" : "noncompact"));
        root.children.push_back(n);
    }
    for (auto& w : f.witnesses) {
        Node n;
        n.kind = "witness";
        n.name = w.name;
        n.attrs = {{"component", w.component.empty() ? "-" : w.component}};
        Node s;
        s.kind = "sampler";
        for (std::size_t i = 0; i < w.recipe.free_vars.size(); ++i)
            s.lines.push_back("free " + std::to_string(w.recipe.free_vars[i]) + " " + w.recipe.box[i].first.str() + " " +
                              w.recipe.box[i].second.str());
        for (auto& st : w.recipe.steps)
            s.lines.push_back("solve " + std::to_string(st.var) + " " + std::to_string(st.eq) + " " +
                              (st.quadratic ? "quadratic" : "linear"));
        n.children.push_back(s);
        for (auto& c : w.premise) n.children.push_back(encode_condition("premise", c));
        for (auto& c : w.conclusion) n.children.push_back(encode_condition("conclusion", c));
        root.children.push_back(n);
    }
    if (f.strategy) {
        const auto& st = *f.strategy;
        Node n;
        n.kind = "strategy";
        n.attrs = {{"eliminate", std::to_string(st.eliminate_var)}, {"linear_eq", std::to_string(st.linear_eq)},
                   {"quadratic", std::to_string(st.quadratic_var)}, {"quadratic_eq", std::to_string(st.quadratic_eq)},
                   {"enumerate", join_ints(st.enumerate_vars)},     {"height", std::to_string(st.height)}};
        root.children.push_back(n);
    }
    for (auto& [name, pts] : f.point_sets) {
        Node n;
        n.kind = "points";
        n.name = name;
        for (auto& p : pts) n.lines.push_back(point_line(p, f.scheme.hyperplane_index));
        root.children.push_back(n);
    }
    return root;
}

inline Fixture decode_fixture(const Node& root) {
    using namespace io;
    if (root.kind != "fixture") throw std::invalid_argument("expected a fixture node, got " + root.kind);
    Fixture f;
    f.scheme.name = root.name;
    f.scheme.ambient_dim = std::stoul(root.attr("ambient_dim"));
    f.scheme.hyperplane_index = std::stoul(root.attr("hyperplane_index"));
    std::size_t h = f.scheme.hyperplane_index;
    for (auto& c : root.children) {
        if (c.kind == "meta") {
            for (auto& l : c.lines) {
                auto sp = l.find(' ');
                f.meta.push_back({l.substr(0, sp), sp == std::string::npos ? "" : trim(l.substr(sp + 1))});
            }
        } else if (c.kind == "poly" && c.name.rfind("form", 0) == 0) {
            f.scheme.forms.push_back(read_poly(c));
        } else if (c.kind == "map") {
            RationalMap m;
            m.name = c.name;
            m.source = c.attr("source");
            m.target = c.attr("target");
            for (auto& pc : c.children) {
                if (pc.name.rfind("num", 0) == 0) m.num.push_back(read_poly(pc));
                else m.den.push_back(read_poly(pc));
            }
            if (m.num.size() != m.den.size()) throw std::invalid_argument("map " + m.name + ": unpaired components");
            f.maps.push_back(m);
        } else if (c.kind == "class") {
            SymbolClass sc;
            sc.name = c.name;
            sc.kind = parse_kind(c.attr("kind"));
            for (auto* r : c.all("rep")) {
                SymbolSum s;
                for (auto* sy : r->all("symbol")) s.push_back(decode_symbol(*sy));
                sc.reps.push_back(s);
            }
            f.classes.push_back(sc);
        } else if (c.kind == "algebraic_pattern") {
            AlgebraicPattern p;
            p.name = c.name;
            p.class_name = c.attr("class");
            p.d = BigInt(c.attr("d"));
            p.mu = BigInt(c.attr("mu"));
            p.nu = BigInt(c.attr("nu"));
            p.l1 = child_poly(c, "l1");
            p.l2 = child_poly(c, "l2");
            p.l3 = child_poly(c, "l3");
            p.l4 = child_poly(c, "l4");
            f.algebraic_patterns.push_back(p);
        } else if (c.kind == "transcendental_pattern") {
            TranscendentalPattern p;
            p.name = c.name;
            p.class_name = c.attr("class");
            p.a = BigInt(c.attr("a"));
            p.b = BigInt(c.attr("b"));
            p.l1 = child_poly(c, "l1");
            p.l2 = child_poly(c, "l2");
            p.l3 = child_poly(c, "l3");
            p.l4 = child_poly(c, "l4");
            p.u = child_poly(c, "u");
            p.v = child_poly(c, "v");
            f.transcendental_patterns.push_back(p);
        } else if (c.kind == "predicate") {
            f.predicates.push_back(decode_predicate(c));
        } else if (c.kind == "classifier") {
            ComponentClassifier cl;
            for (auto* s : c.all("sign")) {
                SignForm sf;
                sf.label = s->name;
                sf.form = child_poly(*s, "form");
                if (auto* t = s->find("poly", "tiebreak")) sf.tiebreak = read_poly(*t);
                cl.forms.push_back(sf);
            }
            for (auto& l : c.lines) {
                auto t = split_ws(l);
                if (t.size() != 4 || t[0] != "component") throw std::invalid_argument("bad classifier line '" + l + "'");
                cl.components.push_back({t[1], t[2], t[3] == "compact"});
            }
            f.classifier = cl;
        } else if (c.kind == "witness") {
            InequalityWitness w;
            w.name = c.name;
            w.component = c.attr("component") == "-" ? "" : c.attr("component");
            for (auto& s : c.children) {
                if (s.kind == "sampler") {
                    for (auto& l : s.lines) {
                        auto t = split_ws(l);
                        if (t.size() == 4 && t[0] == "free") {
                            w.recipe.free_vars.push_back(std::stoi(t[1]));
                            w.recipe.box.push_back({Rational::parse(t[2]), Rational::parse(t[3])});
                        } else if (t.size() == 4 && t[0] == "solve") {
                            w.recipe.steps.push_back({std::stoi(t[1]), std::stoi(t[2]), t[3] == "quadratic"});
                        } else {
                            throw std::invalid_argument("bad sampler line '" + l + "'");
                        }
                    }
                } else if (s.kind == "premise") {
                    w.premise.push_back(decode_condition(s));
                } else if (s.kind == "conclusion") {
                    w.conclusion.push_back(decode_condition(s));
                }
            }
            f.witnesses.push_back(w);
        } else if (c.kind == "strategy") {
            SearchStrategy st;
            st.eliminate_var = std::stoi(c.attr("eliminate"));
            st.linear_eq = std::stoi(c.attr("linear_eq"));
            st.quadratic_var = std::stoi(c.attr("quadratic"));
            st.quadratic_eq = std::stoi(c.attr("quadratic_eq"));
            st.enumerate_vars = read_ints(c.attr("enumerate"));
            st.height = std::stoll(c.attr("height"));
            f.strategy = st;
        } else if (c.kind == "points") {
            std::vector<ProjPoint> pts;
            for (auto& l : c.lines) pts.push_back(ProjPoint::parse(l, h, true));
            f.point_sets.push_back({c.name, pts});
        } else {
            throw std::invalid_argument("unknown fixture entry '" + c.kind + "'");
        }
    }
    f.scheme.validate();
    return f;
}

inline std::string serialize_fixture(const Fixture& f) {
    std::ostringstream os;
    io::write_node(os, encode_fixture(f), 0);
    return os.str();
}

inline Fixture parse_fixture(const std::string& text) {
    auto nodes = io::parse_nodes(text);
    if (nodes.size() != 1) throw std::invalid_argument("expected exactly one fixture per document");
    return decode_fixture(nodes[0]);
}

inline Fixture load_fixture_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixture file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_fixture(ss.str());
}

/// Plain text point list: one point per line, affine coordinates.
inline std::string serialize_points(const std::vector<ProjPoint>& pts, std::size_t h) {
    std::string s;
    for (auto& p : pts) s += io::point_line(p, h) + "\n";
    return s;
}

inline std::vector<ProjPoint> parse_points(const std::string& text, std::size_t h) {
    std::vector<ProjPoint> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        line = io::trim(line);
        if (line.empty() || line[0] == '#') continue;
        out.push_back(ProjPoint::parse(line, h, line[0] != '('));
    }
    return out;
}

}  // namespace bmo
