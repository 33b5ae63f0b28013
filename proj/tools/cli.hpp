#pragma once

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mapstack/cech.hpp"
#include "mapstack/corpus.hpp"
#include "mapstack/equivalence.hpp"
#include "mapstack/fibration.hpp"
#include "mapstack/homology.hpp"
#include "mapstack/io.hpp"
#include "mapstack/loop_inertia.hpp"
#include "mapstack/mapping.hpp"

namespace mapstack::cli {

enum ExitCode { exit_ok = 0, exit_parse = 1, exit_bound = 2, exit_verification = 3 };

struct RunConfig {
    std::string subcommand;
    std::vector<std::string> inputs;
    std::string cover;  // optional cover file for `cech`
    std::size_t bound_functors = EnumerationBounds{}.functors;
    std::size_t bound_nerve = default_nerve_bound;
    std::size_t kmax = 3;
    std::size_t covers_max = CechBounds{}.max_cover_size;
    std::uint64_t seed = 1;
    std::size_t count = 20;
    bool structured = false;
};

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct Check {
    std::string name;
    bool ok = false;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::string statement;
    std::vector<std::pair<std::string, std::string>> results;
    std::vector<Table> tables;
    std::vector<Check> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
    }
    void input(std::string k, std::string v) { inputs.emplace_back(std::move(k), std::move(v)); }
    void result(std::string k, std::string v) { results.emplace_back(std::move(k), std::move(v)); }
    void check(std::string name, bool ok) { checks.push_back({std::move(name), ok}); }
};

namespace detail {

// Terminal columns of a UTF-8 string, counting each code point once.
inline std::size_t display_width(const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

inline void render_table(std::ostream& out, const Table& t) {
    std::vector<std::size_t> w(t.columns.size());
    for (std::size_t c = 0; c < w.size(); ++c) w[c] = display_width(t.columns[c]);
    for (const auto& r : t.rows)
        for (std::size_t c = 0; c < w.size(); ++c) w[c] = std::max(w[c], display_width(r[c]));
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s = "  ";
        for (std::size_t c = 0; c < cells.size(); ++c) {
            s += cells[c];
            if (c + 1 < cells.size()) s += std::string(w[c] - display_width(cells[c]) + 2, ' ');
        }
        out << s << '\n';
    };
    out << t.name << ":\n";
    line(t.columns);
    for (const auto& r : t.rows) line(r);
}

inline std::string yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string join(const std::vector<std::string>& parts, const std::string& sep = ", ") {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

inline std::string file_name(const std::string& path) { return std::filesystem::path(path).filename().string(); }

inline std::string counted(std::size_t n, const std::string& noun) {
    return std::to_string(n) + " " + noun + (n == 1 ? "" : "s");
}

inline std::string describe(const GroupoidDocument& d) {
    const auto& g = *d.groupoid;
    if (d.group) return "B G, G of order " + std::to_string(d.group->order());
    return counted(g.object_count(), "object") + ", " + counted(g.morphism_count(), "morphism") + ", " +
           counted(pi0(g).count(), "component");
}

inline std::string describe_functor(const GroupoidFunctor& f) {
    const auto& Y = *f.domain;
    const auto& X = *f.codomain;
    std::vector<std::string> objs, mors;
    for (ObjectId a = 0; a < Y.object_count(); ++a) objs.push_back(Y.object_label(a) + "↦" + X.object_label(f.on_object(a)));
    for (MorphismId m = 0; m < Y.morphism_count(); ++m)
        if (m != Y.identity(Y.source(m)))
            mors.push_back(Y.morphism_label(m) + "↦" + X.morphism_label(f.on_morphism(m)));
    return join(objs) + (mors.empty() ? "" : "; " + join(mors));
}

inline const FiniteGroup& require_group(const GroupoidDocument& d, const std::string& path) {
    if (!d.group) throw ParseError(file_name(path) + ": expected a group document");
    return *d.group;
}

inline std::string group_labels(const FiniteGroup& g, const std::vector<Element>& elems) {
    std::vector<std::string> s;
    for (Element e : elems) s.push_back(g.label(e));
    return s.empty() ? "-" : join(s);
}

inline void need_inputs(const RunConfig& c, std::size_t n) {
    if (c.inputs.size() != n)
        throw ParseError(c.subcommand + " expects " + std::to_string(n) + " input file" + (n == 1 ? "" : "s"));
}

inline Report run_validate(const RunConfig& c) {
    Report r;
    r.statement = "finite groupoid axioms: composites defined, associative, unital, invertible";
    Table t{"documents", {"file", "kind", "summary"}, {}};
    for (const auto& path : c.inputs) {
        auto j = load_json(path);
        auto dir = std::filesystem::path(path).parent_path();
        r.input("document " + std::to_string(r.inputs.size() + 1), file_name(path));
        if (j.is_object() && j.contains("domain")) {
            auto f = parse_functor(j, dir);
            t.rows.push_back({file_name(path), "functor", describe(f.domain) + " → " + describe(f.codomain)});
            r.check(file_name(path) + " is a functor", validate_functor(f.functor).empty());
        } else if (j.is_object() && j.contains("points")) {
            auto k = parse_space(j);
            t.rows.push_back({file_name(path), "space",
                              std::to_string(k.size()) + " points, " + std::to_string(k.opens().size()) + " nonempty opens"});
        } else if ((j.is_object() && j.contains("cover")) || j.is_array()) {
            if (!j.is_object() || !j.contains("space")) throw ParseError(file_name(path) + ": a cover needs a 'space' to validate");
            std::filesystem::path sdir;
            auto k = parse_space(mapstack::detail::resolve(j.at("space"), dir, &sdir));
            auto cover = parse_cover(j, k);
            t.rows.push_back({file_name(path), "cover", std::to_string(cover.sets.size()) + " open sets"});
        } else {
            auto g = parse_groupoid(j, dir);
            t.rows.push_back({file_name(path), g.group ? "group" : "groupoid", describe(g)});
            r.check(file_name(path) + " satisfies the groupoid axioms", validate(*g.groupoid).empty());
        }
    }
    r.tables.push_back(std::move(t));
    return r;
}

inline Report run_equiv(const RunConfig& c) {
    need_inputs(c, 2);
    auto a = load_groupoid(c.inputs[0]), b = load_groupoid(c.inputs[1]);
    Report r;
    r.input("A", file_name(c.inputs[0]) + " (" + describe(a) + ")");
    r.input("B", file_name(c.inputs[1]) + " (" + describe(b) + ")");
    r.statement = "A ≃ B iff some functor A → B is essentially surjective and fully faithful";
    auto e = are_equivalent(a.groupoid, b.groupoid);
    r.result("equivalent", yes_no(bool(e)));
    if (e) {
        r.result("witness", describe_functor(e.witness->functor));
        r.check("equivalence witness verifies", verify(*e.witness));
    } else {
        r.result("refutation", e.refutation);
    }
    return r;
}

inline Report run_map(const RunConfig& c) {
    need_inputs(c, 2);
    auto y = load_groupoid(c.inputs[0]), x = load_groupoid(c.inputs[1]);
    Report r;
    r.input("Y", file_name(c.inputs[0]) + " (" + describe(y) + ")");
    r.input("X", file_name(c.inputs[1]) + " (" + describe(x) + ")");
    r.statement = "Map(Y, X) is the groupoid of functors Y → X and natural transformations";
    EnumerationBounds bounds;
    bounds.functors = c.bound_functors;
    auto fun = functor_groupoid(y.groupoid, x.groupoid, bounds);
    const auto& G = *fun.groupoid;
    auto comps = pi0(G);
    r.result("functors", std::to_string(G.object_count()));
    r.result("natural transformations", std::to_string(G.morphism_count()));
    r.result("components", std::to_string(comps.count()));
    Table t{"components", {"component", "representative functor", "automorphisms"}, {}};
    for (std::size_t i = 0; i < comps.count(); ++i) {
        ObjectId rep = comps.representative(i);
        t.rows.push_back({std::to_string(i), describe_functor(fun.functors[rep]), std::to_string(G.hom(rep, rep).size())});
    }
    r.tables.push_back(std::move(t));
    bool functors_ok = std::all_of(fun.functors.begin(), fun.functors.end(),
                                   [](const GroupoidFunctor& f) { return validate_functor(f).empty(); });
    bool naturals_ok = true;
    for (MorphismId m = 0; m < G.morphism_count() && naturals_ok; ++m) naturals_ok = validate_natural(fun.transformation(m)).empty();
    r.check("every object is a functor", functors_ok);
    r.check("every morphism is a natural transformation", naturals_ok);
    r.check("functor count equals the closed-form count",
            estimate_functor_groupoid(*y.groupoid, *x.groupoid).functors == G.object_count());
    return r;
}

inline Report run_inertia(const RunConfig& c) {
    need_inputs(c, 1);
    auto x = load_groupoid(c.inputs[0]);
    Report r;
    r.input("X", file_name(c.inputs[0]) + " (" + describe(x) + ")");
    r.statement = "inertia(X) ≃ Map(B Z, X): loops (x, g ∈ Aut x) with conjugations between them";
    auto in = inertia_groupoid(x.groupoid);
    const auto& I = *in.groupoid;
    const auto& X = *x.groupoid;
    auto comps = pi0(I);
    r.result("loop points", std::to_string(I.object_count()));
    r.result("components", std::to_string(comps.count()));
    Table t{"components", {"base", "loop", "automorphisms"}, {}};
    for (std::size_t i = 0; i < comps.count(); ++i) {
        ObjectId rep = comps.representative(i);
        const auto& pt = in.points[rep];
        t.rows.push_back({X.object_label(pt.base), X.morphism_label(pt.loop), std::to_string(I.hom(rep, rep).size())});
    }
    r.tables.push_back(std::move(t));
    auto base = pi0(X);
    std::vector<std::size_t> over(base.count(), 0);
    for (std::size_t i = 0; i < comps.count(); ++i) ++over[base.component_of[in.points[comps.representative(i)].base]];
    bool ok = true;
    for (std::size_t b = 0; b < base.count(); ++b)
        ok = ok && over[b] == conjugacy(aut(X, base.representative(b)).group).count();
    r.check("components over each component of X count conjugacy classes of its automorphism group", ok);
    return r;
}

inline Report run_decompose(const RunConfig& c) {
    need_inputs(c, 1);
    auto doc = load_groupoid(c.inputs[0]);
    const auto& g = require_group(doc, c.inputs[0]);
    Report r;
    r.input("G", file_name(c.inputs[0]) + " (order " + std::to_string(g.order()) + ")");
    r.statement = "L(B G) ≃ inertia(B G) ≃ G//G ≃ ⊔ B Z(α), one summand per conjugacy class α";
    auto d = loop_decomposition(g);
    r.result("conjugacy classes", std::to_string(d.classes.count()));
    Table t{"classes", {"representative", "class size", "centralizer order", "centralizer generators"}, {}};
    for (std::size_t i = 0; i < d.classes.count(); ++i) {
        const auto& z = d.centralizers[i];
        std::vector<Element> gens;
        for (Element e : z.group.generators()) gens.push_back(z.embedding[e]);
        t.rows.push_back({g.label(d.classes.representatives[i]), std::to_string(d.classes.classes[i].size()),
                          std::to_string(z.group.order()), group_labels(g, gens)});
    }
    r.tables.push_back(std::move(t));
    bool w = verify(d.witness), wb = verify(d.borel_witness);
    r.result("witness", w && wb ? "OK" : "FAILED");
    r.check("⊔ B Z(α) → inertia(B G) is an equivalence", w);
    r.check("⊔ B Z(α) → G//G is an equivalence", wb);
    return r;
}

inline Report run_omega(const RunConfig& c) {
    need_inputs(c, 1);
    auto doc = load_groupoid(c.inputs[0]);
    const auto& g = require_group(doc, c.inputs[0]);
    Report r;
    r.input("G", file_name(c.inputs[0]) + " (order " + std::to_string(g.order()) + ")");
    r.statement = "Ω(B G), the homotopy fiber of inertia(B G) → B G at the base point, against a discrete groupoid on C_G";
    EnumerationBounds bounds;
    bounds.functors = c.bound_functors;
    auto b = omega(doc.groupoid, 0, bounds);
    std::size_t classes = conjugacy(g).count();
    r.result("components", std::to_string(b.components));
    r.result("classes", b.discrete ? "discrete" : "not discrete");
    r.result("conjugacy classes |C_G|", std::to_string(classes));
    r.result("group order |G|", std::to_string(g.order()));
    r.result("components = |C_G|", yes_no(b.components == classes));
    r.result("components = |G|", yes_no(b.components == g.order()));
    r.check("fiber via the replacement ≃ direct iso-comma", bool(b.fiber.agreement));
    r.check("Ω(B G) is essentially discrete", b.discrete);
    return r;
}

inline bool is_cyclic(const FiniteGroup& g) {
    for (Element a = 0; a < g.order(); ++a)
        if (g.element_order(a) == g.order()) return true;
    return false;
}

inline Report run_homology(const RunConfig& c) {
    need_inputs(c, 1);
    auto x = load_groupoid(c.inputs[0]);
    Report r;
    r.input("X", file_name(c.inputs[0]) + " (" + describe(x) + ")");
    r.input("kmax", std::to_string(c.kmax));
    r.statement = "H_k(X; Z) of the normalized nerve; for X = B G this is the homology of G";
    auto chain = nerve(*x.groupoid, c.kmax + 1, c.bound_nerve);
    auto h = homology(chain, c.kmax);
    Table t{"homology", {"degree", "group", "simplices"}, {}};
    for (const auto& group : h)
        t.rows.push_back({std::to_string(group.degree), format_group(group), std::to_string(chain.ranks[group.degree])});
    r.tables.push_back(std::move(t));
    if (x.group && is_cyclic(*x.group))
        r.check("matches the periodic resolution of Z/" + std::to_string(x.group->order()),
                h == cyclic_group_homology_oracle(x.group->order(), c.kmax));
    return r;
}

inline std::string describe_cocycle(const CechGroupoid& cg, const FiniteGroupoid& x, const CechCocycle& z) {
    const auto& k = cg.space;
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < cg.object_components.size(); ++i)
        for (std::size_t q = 0; q < cg.object_components[i].size(); ++q)
            parts.push_back("U" + std::to_string(i) + k.format(cg.object_components[i][q]) + "↦" +
                            x.object_label(z.objects[cg.object_base[i] + q]));
    for (const auto& piece : cg.pairs)
        for (std::size_t q = 0; q < piece.components.size(); ++q)
            parts.push_back("U" + std::to_string(piece.i) + "U" + std::to_string(piece.j) + k.format(piece.components[q]) +
                            "↦" + x.morphism_label(z.morphisms[piece.base + q]));
    return join(parts, "; ");
}

inline std::string describe_cover(const FiniteSpace& k, const OpenCover& c) {
    std::vector<std::string> s;
    for (PointSet u : c.sets) s.push_back(k.format(u));
    return join(s, " ");
}

inline Report run_cech(const RunConfig& c) {
    need_inputs(c, 2);
    auto k = parse_space(load_json(c.inputs[0]));
    auto x = load_groupoid(c.inputs[1]);
    const auto& X = *x.groupoid;
    Report r;
    r.input("K", file_name(c.inputs[0]) + " (" + std::to_string(k.size()) + " points)");
    r.input("X", file_name(c.inputs[1]) + " (" + describe(x) + ")");
    r.input("covers-max", std::to_string(c.covers_max));
    r.statement = "Hilsum-Skandalis maps K → X are Čech cocycles modulo gauge and refinement, over an atlas of open covers";
    CechBounds bounds;
    bounds.max_cover_size = c.covers_max;
    auto cls = classify_hs(k, X, bounds);
    r.result("covers enumerated", std::to_string(cls.covers.size()));
    r.result("minimal cover", describe_cover(k, cls.covers[cls.minimal]));
    r.result("classes", std::to_string(cls.classes.size()));
    Table covers{"covers", {"cover", "opens", "cocycles"}, {}};
    for (std::size_t i = 0; i < cls.covers.size(); ++i)
        covers.rows.push_back({describe_cover(k, cls.covers[i]), std::to_string(cls.covers[i].sets.size()),
                               std::to_string(cls.cocycle_counts[i])});
    Table classes{"classes", {"class", "representative on the minimal cover", "covers realizing"}, {}};
    for (std::size_t i = 0; i < cls.classes.size(); ++i)
        classes.rows.push_back({std::to_string(i), describe_cocycle(cls.refined, X, cls.classes[i].representative),
                                std::to_string(cls.classes[i].covers.size())});
    r.tables.push_back(std::move(covers));
    r.tables.push_back(std::move(classes));

    if (!c.cover.empty()) {
        auto cover = parse_cover(load_json(c.cover), k);
        r.input("cover", file_name(c.cover));
        auto cg = cech_groupoid(k, cover);
        auto tau = refinement(minimal_cover(k), cover);
        if (!tau) throw VerificationFailure("minimal cover does not refine the given cover");
        auto zs = hom_space(cg, X, bounds.cocycles);
        std::set<std::size_t> realized;
        for (const auto& z : zs) {
            auto key = gauge_minimum(cls.refined, X, pull_back(cls.refined, cg, *tau, X, z), bounds.gauge);
            for (std::size_t i = 0; i < cls.classes.size(); ++i)
                if (cls.classes[i].representative == key) realized.insert(i);
        }
        r.result("given cover", describe_cover(k, cover));
        r.result("cocycles on the given cover", std::to_string(zs.size()));
        r.result("classes realized on the given cover", std::to_string(realized.size()));
    }

    auto e = atlas_epimorphism_check(k, X, bounds);
    r.check("every class is realized on an enumerated cover", e.every_class_hit);
    r.check("the minimal cover realizes every class", e.minimal_cover_hits_all);
    if (cls.whole != SIZE_MAX) r.check("{K} realizes |π₀ X|^(components of K) classes", e.whole_space_hits == e.whole_space_expected);
    return r;
}

inline Report run_replace(const RunConfig& c) {
    need_inputs(c, 1);
    auto doc = load_functor(c.inputs[0]);
    const auto& f = doc.functor;
    Report r;
    r.input("f", file_name(c.inputs[0]) + " (" + describe(doc.domain) + " → " + describe(doc.codomain) + ")");
    r.statement = "f = p_f ∘ i_f with p_f an isofibration and i_f an equivalence with strict retraction r_f";
    EnumerationBounds bounds;
    bounds.functors = c.bound_functors;
    auto rep = replace(f, bounds);
    const auto& T = *rep.total.groupoid;
    r.result("total space objects", std::to_string(T.object_count()));
    r.result("total space morphisms", std::to_string(T.morphism_count()));
    const auto& Y = *f.codomain;
    auto base = pi0(Y);
    Table t{"homotopy fibers", {"over", "objects", "components", "discrete"}, {}};
    bool agree = true;
    for (std::size_t i = 0; i < base.count(); ++i) {
        ObjectId y = base.representative(i);
        auto h = homotopy_fiber(f, y, bounds);
        agree = agree && bool(h.agreement);
        const auto& F = *h.fiber.groupoid;
        t.rows.push_back({Y.object_label(y), std::to_string(F.object_count()), std::to_string(pi0(F).count()),
                          yes_no(is_essentially_discrete(F))});
    }
    r.tables.push_back(std::move(t));
    r.check("p_f is an isofibration", bool(is_isofibration(rep.projection)));
    r.check("p_f ∘ i_f = f", compose(rep.projection, rep.embedding) == f);
    r.check("r_f ∘ i_f = id", compose(rep.retraction, rep.embedding) == identity_functor(f.domain));
    r.check("i_f equivalence witness verifies", verify(rep.embedding_witness));
    r.check("fibers via p_f ≃ direct iso-comma fibers", agree);
    return r;
}

inline Report run_exp_law(const RunConfig& c) {
    if (!c.inputs.empty()) throw ParseError("exp-law takes no input files");
    Report r;
    r.input("seed", std::to_string(c.seed));
    r.input("count", std::to_string(c.count));
    r.statement = "Map(Z × Y, X) ≅ Map(Z, Map(Y, X))";
    auto bounds = default_corpus_bounds();
    bounds.functors = std::min(bounds.functors, c.bound_functors);
    auto corpus = exponential_corpus(c.seed, c.count, 3, bounds);
    r.result("draws", std::to_string(corpus.draws));
    r.result("redrawn after bound", std::to_string(corpus.resampled));
    Table t{"triples", {"draw", "Z", "Y", "X", "Map(Z × Y, X)", "Map(Z, Map(Y, X))", "witness"}, {}};
    auto size = [](const GroupoidRef& g) {
        return std::to_string(g->object_count()) + "/" + std::to_string(g->morphism_count());
    };
    bool all = true;
    for (const auto& tr : corpus.trials) {
        t.rows.push_back({std::to_string(tr.draw), size(tr.z), size(tr.y), size(tr.x),
                          std::to_string(tr.uncurried_objects) + "/" + std::to_string(tr.uncurried_morphisms),
                          std::to_string(tr.curried_objects) + "/" + std::to_string(tr.curried_morphisms),
                          tr.verified ? "OK" : "FAILED"});
        all = all && tr.verified;
    }
    r.tables.push_back(std::move(t));
    r.check("every transpose functor is a verified equivalence", all);
    return r;
}

} // namespace detail

inline void render_text(std::ostream& out, const Report& r) {
    out << "command: " << r.command << '\n';
    out << "inputs:\n";
    for (const auto& [k, v] : r.inputs) out << "  " << k << ": " << v << '\n';
    out << "statement: " << r.statement << '\n';
    if (!r.results.empty()) {
        out << "results:\n";
        for (const auto& [k, v] : r.results) out << "  " << k << ": " << v << '\n';
    }
    for (const auto& t : r.tables) detail::render_table(out, t);
    if (!r.checks.empty()) {
        out << "checks:\n";
        for (const auto& c : r.checks) out << "  " << c.name << ": " << (c.ok ? "OK" : "FAILED") << '\n';
    }
    out << "status: " << (r.ok() ? "OK" : "FAILED") << '\n';
}

inline void render_structured(std::ostream& out, const Report& r) {
    using J = nlohmann::ordered_json;
    J j;
    j["command"] = r.command;
    j["inputs"] = J::object();
    for (const auto& [k, v] : r.inputs) j["inputs"][k] = v;
    j["statement"] = r.statement;
    j["results"] = J::object();
    for (const auto& [k, v] : r.results) j["results"][k] = v;
    j["tables"] = J::object();
    for (const auto& t : r.tables) j["tables"][t.name] = {{"columns", t.columns}, {"rows", t.rows}};
    j["checks"] = J::array();
    for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"status", c.ok ? "OK" : "FAILED"}});
    j["status"] = r.ok() ? "OK" : "FAILED";
    out << j.dump(2) << '\n';
}

// Runs one subcommand and prints its report. Throws on parse, bound and
// verification errors.
inline int run(const RunConfig& c, std::ostream& out) {
    Report r;
    const auto& s = c.subcommand;
    if (s == "validate") r = detail::run_validate(c);
    else if (s == "equiv") r = detail::run_equiv(c);
    else if (s == "map") r = detail::run_map(c);
    else if (s == "inertia") r = detail::run_inertia(c);
    else if (s == "decompose") r = detail::run_decompose(c);
    else if (s == "omega") r = detail::run_omega(c);
    else if (s == "homology") r = detail::run_homology(c);
    else if (s == "cech") r = detail::run_cech(c);
    else if (s == "replace") r = detail::run_replace(c);
    else if (s == "exp-law") r = detail::run_exp_law(c);
    else throw ParseError("unknown subcommand " + s);
    r.command = s;
    if (c.structured) render_structured(out, r);
    else render_text(out, r);
    return r.ok() ? exit_ok : exit_verification;
}

// Parses argv, runs, and maps failures to exit codes.
inline int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite mapping groupoids, loop groupoids, homology and Čech atlases"};
    app.fallthrough();
    app.require_subcommand(1);
    RunConfig c;
    std::string format = "table";
    app.add_option("--bound-functors", c.bound_functors, "Candidate functor bound for functor enumeration")
        ->check(CLI::PositiveNumber);
    app.add_option("--bound-nerve", c.bound_nerve, "Simplex bound per nerve degree")->check(CLI::PositiveNumber);
    app.add_option("--kmax", c.kmax, "Top homology degree");
    app.add_option("--covers-max", c.covers_max, "Largest cover size enumerated")->check(CLI::PositiveNumber);
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "structured"}));
    app.add_option("--seed", c.seed, "Seed for random corpora");

    struct Sub {
        const char* name;
        const char* help;
        std::vector<const char*> args;
    };
    const std::vector<Sub> subs{
        {"validate", "Parse and validate input documents", {"files"}},
        {"equiv", "Decide equivalence of two groupoids", {"A", "B"}},
        {"map", "Functor groupoid Map(Y, X)", {"Y", "X"}},
        {"inertia", "Inertia groupoid of X", {"X"}},
        {"decompose", "Loop groupoid of B G split over conjugacy classes", {"G"}},
        {"omega", "Based loops of B G", {"G"}},
        {"homology", "Integral homology of the nerve", {"X"}},
        {"cech", "Hilsum-Skandalis classes K → X via Čech covers", {"K", "X"}},
        {"replace", "Fibration replacement and homotopy fibers of a functor", {"f"}},
        {"exp-law", "Exponential law on a seeded random corpus", {}},
    };
    std::vector<std::string> files;
    for (const auto& s : subs) {
        auto* sub = app.add_subcommand(s.name, s.help);
        if (!s.args.empty()) {
            auto* opt = sub->add_option(s.args.size() == 1 ? s.args[0] : "inputs", files, "Input files")->required();
            if (std::string(s.name) != "validate") opt->expected(static_cast<int>(s.args.size()));
        }
        if (std::string(s.name) == "cech") sub->add_option("--cover", c.cover, "Also report a given cover");
        if (std::string(s.name) == "exp-law") sub->add_option("--count", c.count, "Triples to check")->check(CLI::PositiveNumber);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_parse;
    }
    c.subcommand = app.get_subcommands().front()->get_name();
    c.inputs = files;
    c.structured = format == "structured";
    try {
        std::ostringstream buffer;
        int code = run(c, buffer);
        out << buffer.str();
        return code;
    } catch (const BoundExceeded& e) {
        err << "bound exceeded: " << e.what() << '\n';
        return exit_bound;
    } catch (const VerificationFailure& e) {
        err << "verification failure: " << e.what() << '\n';
        return exit_verification;
    } catch (const InvalidInput& e) {
        err << "parse error: " << e.what() << '\n';
        return exit_parse;
    }
}

} // namespace mapstack::cli
