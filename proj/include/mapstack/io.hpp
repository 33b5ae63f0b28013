#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cech.hpp"
#include "functor.hpp"
#include "group.hpp"
#include "groupoid.hpp"

// JSON documents for groups, groupoids, functors, finite spaces and covers.
//
//   group:     {"table": [[..]], "labels": [..]?} or
//              {"perm_generators": ["(1 2)", "(1 2 3)"], "degree": n?}
//   groupoid:  {"objects": [..], "morphisms": [{"id", "src", "tgt"}],
//               "compose": [[m2, m1, m2∘m1]], "identities": {obj: mor}?,
//               "inverses": {mor: mor}?}
//              or {"group": <group or path>} for B G; a bare group
//              document is also read as B G
//   functor:   {"domain": <groupoid or path>, "codomain": <groupoid or path>,
//               "objects": {label: label}?, "morphisms": {label: label}}
//              with omitted images filled in by functoriality
//   space:     {"points": [..], "covering": [[x, y]]} with x ≤ y; opens are
//              down-sets
//   cover:     {"cover": [[points]]} or a bare list of point lists

namespace mapstack {

using Json = nlohmann::json;

namespace detail {

template <class Fn>
auto wrap_json(const std::string& what, Fn&& fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Json::exception& e) {
        throw ParseError(what + ": " + e.what());
    }
}

inline std::string string_field(const Json& j, const char* key, const std::string& what) {
    if (!j.contains(key) || !j.at(key).is_string()) throw ParseError(what + ": missing string field '" + key + "'");
    return j.at(key).get<std::string>();
}

inline std::map<std::string, std::uint32_t> label_index(const std::vector<std::string>& labels, const std::string& what) {
    std::map<std::string, std::uint32_t> index;
    for (std::uint32_t i = 0; i < labels.size(); ++i)
        if (!index.emplace(labels[i], i).second) throw ParseError(what + ": duplicate label '" + labels[i] + "'");
    return index;
}

inline std::uint32_t lookup(const std::map<std::string, std::uint32_t>& index, const std::string& label,
                            const std::string& what) {
    auto it = index.find(label);
    if (it == index.end()) throw ParseError(what + ": unknown label '" + label + "'");
    return it->second;
}

inline std::vector<std::string> string_list(const Json& j, const std::string& what) {
    if (!j.is_array()) throw ParseError(what + ": expected a list");
    std::vector<std::string> out;
    for (const auto& v : j) {
        if (!v.is_string()) throw ParseError(what + ": expected strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

} // namespace detail

inline Json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

inline bool is_group_document(const Json& j) {
    return j.is_object() && (j.contains("table") || j.contains("perm_generators"));
}

inline FiniteGroup parse_group(const Json& j) {
    return detail::wrap_json("group", [&] {
        if (!j.is_object()) throw ParseError("group: expected an object");
        if (j.contains("table")) {
            GroupTable t = j.at("table").get<GroupTable>();
            std::vector<std::string> labels;
            if (j.contains("labels")) labels = detail::string_list(j.at("labels"), "group labels");
            if (!labels.empty() && labels.size() != t.size()) throw ParseError("group: one label per element required");
            if (!labels.empty()) detail::label_index(labels, "group labels");
            try {
                return FiniteGroup::from_table(t, std::move(labels));
            } catch (const InvalidInput& e) {
                throw ParseError(e.what());
            }
        }
        if (j.contains("perm_generators")) {
            auto gens = detail::string_list(j.at("perm_generators"), "perm_generators");
            std::size_t degree = j.value("degree", std::size_t{0});
            return FiniteGroup::from_cycle_strings(gens, degree);
        }
        throw ParseError("group: expected 'table' or 'perm_generators'");
    });
}

struct GroupoidDocument {
    GroupoidRef groupoid;
    std::optional<FiniteGroup> group;  // set for B G inputs
};

inline GroupoidDocument parse_groupoid(const Json& j, const std::filesystem::path& base_dir = {});

namespace detail {

inline Json resolve(const Json& j, const std::filesystem::path& base_dir, std::filesystem::path* dir) {
    if (j.is_string()) {
        auto path = base_dir / j.get<std::string>();
        *dir = path.parent_path();
        return load_json(path);
    }
    *dir = base_dir;
    return j;
}

inline FiniteGroupoid parse_explicit_groupoid(const Json& j) {
    const std::string what = "groupoid";
    auto objects = string_list(j.at("objects"), "groupoid objects");
    auto obj_index = label_index(objects, "groupoid objects");
    const Json& ms = j.at("morphisms");
    if (!ms.is_array()) throw ParseError("groupoid morphisms: expected a list");
    std::vector<std::string> labels;
    std::vector<MorphismRecord> records;
    for (const auto& m : ms) {
        labels.push_back(string_field(m, "id", "groupoid morphism"));
        records.push_back({lookup(obj_index, string_field(m, "src", "groupoid morphism"), what),
                           lookup(obj_index, string_field(m, "tgt", "groupoid morphism"), what)});
    }
    auto mor_index = label_index(labels, "groupoid morphisms");

    FiniteGroupoid::Builder b(objects.size(), records);
    std::map<std::pair<MorphismId, MorphismId>, MorphismId> seen;
    const Json& cs = j.at("compose");
    if (!cs.is_array()) throw ParseError("groupoid compose: expected a list");
    for (const auto& c : cs) {
        auto t = string_list(c, "compose entry");
        if (t.size() != 3) throw ParseError("compose entry: expected [m2, m1, result]");
        MorphismId after = lookup(mor_index, t[0], what), before = lookup(mor_index, t[1], what),
                   result = lookup(mor_index, t[2], what);
        if (records[before].target != records[after].source)
            throw ParseError("compose entry [" + t[0] + ", " + t[1] + "]: not composable");
        if (records[result].source != records[before].source || records[result].target != records[after].target)
            throw ParseError("compose entry [" + t[0] + ", " + t[1] + "]: result has the wrong endpoints");
        auto [it, fresh] = seen.try_emplace({after, before}, result);
        if (!fresh && it->second != result) throw ParseError("compose entry [" + t[0] + ", " + t[1] + "]: given twice");
        b.set_composite(after, before, result);
    }
    for (MorphismId before = 0; before < records.size(); ++before)
        for (MorphismId after = 0; after < records.size(); ++after)
            if (records[before].target == records[after].source && !seen.count({after, before}))
                throw ParseError("compose table has no entry for [" + labels[after] + ", " + labels[before] + "]");

    if (j.contains("identities"))
        for (const auto& [o, m] : j.at("identities").items()) {
            MorphismId id = lookup(mor_index, m.get<std::string>(), what);
            ObjectId x = lookup(obj_index, o, what);
            if (records[id].source != x || records[id].target != x)
                throw ParseError("identity of " + o + " is not an endomorphism of it");
            b.set_identity(x, id);
        }
    if (j.contains("inverses"))
        for (const auto& [a, inv] : j.at("inverses").items()) {
            MorphismId m = lookup(mor_index, a, what), n = lookup(mor_index, inv.get<std::string>(), what);
            if (records[n].source != records[m].target || records[n].target != records[m].source)
                throw ParseError("inverse of " + a + " has the wrong endpoints");
            b.set_inverse(m, n);
        }
    b.derive_identities_and_inverses();
    b.set_labels(objects, labels);
    auto g = std::move(b).build();
    for (ObjectId x = 0; x < g.object_count(); ++x)
        if (g.identity(x) == no_morphism) throw ParseError("object " + objects[x] + " has no identity");
    for (MorphismId m = 0; m < g.morphism_count(); ++m)
        if (g.inverse(m) == no_morphism) throw ParseError("morphism " + labels[m] + " has no inverse");
    auto problems = validate(g);
    if (!problems.empty())
        throw ParseError(std::string("groupoid axiom fails (") + to_string(problems.front().kind) +
                         "): " + problems.front().message);
    return g;
}

} // namespace detail

inline GroupoidDocument parse_groupoid(const Json& j, const std::filesystem::path& base_dir) {
    return detail::wrap_json("groupoid", [&]() -> GroupoidDocument {
        if (!j.is_object()) throw ParseError("groupoid: expected an object");
        if (is_group_document(j) || j.contains("group")) {
            std::filesystem::path dir;
            auto g = parse_group(j.contains("group") ? detail::resolve(j.at("group"), base_dir, &dir) : j);
            return {share(b_group(g)), std::move(g)};
        }
        return {share(detail::parse_explicit_groupoid(j)), std::nullopt};
    });
}

inline GroupoidDocument load_groupoid(const std::filesystem::path& path) {
    return parse_groupoid(load_json(path), path.parent_path());
}

struct FunctorDocument {
    GroupoidDocument domain, codomain;
    GroupoidFunctor functor;
};

namespace detail {

inline MorphismId find_morphism(const GroupoidDocument& d, const std::string& label) {
    const auto& g = *d.groupoid;
    for (MorphismId m = 0; m < g.morphism_count(); ++m)
        if (g.morphism_label(m) == label) return m;
    if (d.group)
        if (auto e = d.group->find(label)) return *e;  // B G morphism ids are elements
    throw ParseError("functor: unknown morphism '" + label + "'");
}

inline ObjectId find_object(const FiniteGroupoid& g, const std::string& label) {
    for (ObjectId x = 0; x < g.object_count(); ++x)
        if (g.object_label(x) == label) return x;
    throw ParseError("functor: unknown object '" + label + "'");
}

// Fills unset images from composites, identities and inverses until stable.
inline void close_functor(GroupoidFunctor& f) {
    const auto& Y = *f.domain;
    const auto& X = *f.codomain;
    auto set_obj = [&](ObjectId a, ObjectId b, bool& changed) {
        if (f.object_map[a] == no_morphism) f.object_map[a] = b, changed = true;
    };
    auto set_mor = [&](MorphismId a, MorphismId b, bool& changed) {
        if (f.morphism_map[a] == no_morphism) f.morphism_map[a] = b, changed = true;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (ObjectId a = 0; a < Y.object_count(); ++a)
            if (f.object_map[a] != no_morphism) set_mor(Y.identity(a), X.identity(f.object_map[a]), changed);
        for (MorphismId m = 0; m < Y.morphism_count(); ++m) {
            MorphismId fm = f.morphism_map[m];
            if (fm == no_morphism) {
                // forced when the target hom-set is a singleton
                ObjectId a = f.object_map[Y.source(m)], b = f.object_map[Y.target(m)];
                if (a != no_morphism && b != no_morphism) {
                    auto h = X.hom(a, b);
                    if (h.size() == 1) set_mor(m, h.front(), changed);
                }
                continue;
            }
            set_obj(Y.source(m), X.source(fm), changed);
            set_obj(Y.target(m), X.target(fm), changed);
            set_mor(Y.inverse(m), X.inverse(fm), changed);
            for (MorphismId n : Y.out(Y.target(m)))
                if (f.morphism_map[n] != no_morphism && X.target(fm) == X.source(f.morphism_map[n]))
                    set_mor(Y.compose(n, m), X.compose(f.morphism_map[n], fm), changed);
        }
    }
}

} // namespace detail

inline FunctorDocument parse_functor(const Json& j, const std::filesystem::path& base_dir = {}) {
    return detail::wrap_json("functor", [&] {
        if (!j.is_object() || !j.contains("domain") || !j.contains("codomain"))
            throw ParseError("functor: expected 'domain' and 'codomain'");
        FunctorDocument d;
        std::filesystem::path dir;
        auto dom = detail::resolve(j.at("domain"), base_dir, &dir);
        d.domain = parse_groupoid(dom, dir);
        auto cod = detail::resolve(j.at("codomain"), base_dir, &dir);
        d.codomain = parse_groupoid(cod, dir);
        auto& f = d.functor;
        f.domain = d.domain.groupoid;
        f.codomain = d.codomain.groupoid;
        const auto& Y = *f.domain;
        const auto& X = *f.codomain;
        f.object_map.assign(Y.object_count(), no_morphism);
        f.morphism_map.assign(Y.morphism_count(), no_morphism);
        if (Y.object_count() > 0 && X.object_count() == 1) std::fill(f.object_map.begin(), f.object_map.end(), 0);
        if (j.contains("objects"))
            for (const auto& [a, b] : j.at("objects").items())
                f.object_map[detail::find_object(Y, a)] = detail::find_object(X, b.get<std::string>());
        if (j.contains("morphisms"))
            for (const auto& [a, b] : j.at("morphisms").items()) {
                MorphismId m = detail::find_morphism(d.domain, a), n = detail::find_morphism(d.codomain, b.get<std::string>());
                if (f.morphism_map[m] != no_morphism && f.morphism_map[m] != n)
                    throw ParseError("functor: morphism '" + a + "' given two images");
                f.morphism_map[m] = n;
            }
        detail::close_functor(f);
        for (ObjectId a = 0; a < Y.object_count(); ++a)
            if (f.object_map[a] == no_morphism) throw ParseError("functor: no image for object '" + Y.object_label(a) + "'");
        for (MorphismId m = 0; m < Y.morphism_count(); ++m)
            if (f.morphism_map[m] == no_morphism)
                throw ParseError("functor: no image for morphism '" + Y.morphism_label(m) + "'");
        auto problems = validate_functor(f);
        if (!problems.empty()) throw ParseError("functor: " + problems.front());
        return d;
    });
}

inline FunctorDocument load_functor(const std::filesystem::path& path) {
    return parse_functor(load_json(path), path.parent_path());
}

inline FiniteSpace parse_space(const Json& j) {
    return detail::wrap_json("space", [&] {
        if (!j.is_object() || !j.contains("points")) throw ParseError("space: expected 'points'");
        auto points = detail::string_list(j.at("points"), "space points");
        auto index = detail::label_index(points, "space points");
        std::vector<std::pair<std::size_t, std::size_t>> below;
        if (j.contains("covering"))
            for (const auto& c : j.at("covering")) {
                auto p = detail::string_list(c, "covering pair");
                if (p.size() != 2) throw ParseError("covering pair: expected [x, y]");
                below.emplace_back(detail::lookup(index, p[0], "space"), detail::lookup(index, p[1], "space"));
            }
        try {
            return FiniteSpace(points, below);
        } catch (const InvalidInput& e) {
            throw ParseError(e.what());
        }
    });
}

inline OpenCover parse_cover(const Json& j, const FiniteSpace& k) {
    return detail::wrap_json("cover", [&] {
        const Json& sets = j.is_object() ? j.at("cover") : j;
        if (!sets.is_array()) throw ParseError("cover: expected a list of point lists");
        auto index = detail::label_index(k.labels(), "space points");
        std::vector<PointSet> opens;
        for (const auto& s : sets) {
            PointSet u = 0;
            for (const auto& p : detail::string_list(s, "cover member")) u |= FiniteSpace::bit(detail::lookup(index, p, "cover"));
            opens.push_back(u);
        }
        try {
            return make_cover(k, std::move(opens));
        } catch (const InvalidInput& e) {
            throw ParseError(e.what());
        }
    });
}

// Serialization. Labels are written as ids when they are unique; otherwise
// objects become "o<i>" and morphisms "m<i>".

struct SerialLabels {
    std::vector<std::string> objects, morphisms;
};

inline SerialLabels serial_labels(const FiniteGroupoid& g) {
    auto pick = [](std::vector<std::string> labels, const char* prefix) {
        std::set<std::string> seen(labels.begin(), labels.end());
        if (seen.size() != labels.size())
            for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = prefix + std::to_string(i);
        return labels;
    };
    SerialLabels l;
    for (ObjectId x = 0; x < g.object_count(); ++x) l.objects.push_back(g.object_label(x));
    for (MorphismId m = 0; m < g.morphism_count(); ++m) l.morphisms.push_back(g.morphism_label(m));
    l.objects = pick(std::move(l.objects), "o");
    l.morphisms = pick(std::move(l.morphisms), "m");
    return l;
}

inline Json groupoid_to_json(const FiniteGroupoid& g) {
    auto l = serial_labels(g);
    Json morphisms = Json::array(), compose = Json::array();
    Json identities = Json::object(), inverses = Json::object();
    for (ObjectId x = 0; x < g.object_count(); ++x) identities[l.objects[x]] = l.morphisms[g.identity(x)];
    for (MorphismId m = 0; m < g.morphism_count(); ++m) {
        morphisms.push_back({{"id", l.morphisms[m]}, {"src", l.objects[g.source(m)]}, {"tgt", l.objects[g.target(m)]}});
        inverses[l.morphisms[m]] = l.morphisms[g.inverse(m)];
        for (MorphismId n : g.out(g.target(m))) compose.push_back({l.morphisms[n], l.morphisms[m], l.morphisms[g.compose(n, m)]});
    }
    return {{"objects", l.objects}, {"morphisms", morphisms}, {"compose", compose},
            {"identities", identities}, {"inverses", inverses}};
}

inline Json group_to_json(const FiniteGroup& g) { return {{"table", g.table()}, {"labels", g.labels()}}; }

inline Json functor_to_json(const GroupoidFunctor& f) {
    const auto& Y = *f.domain;
    auto ly = serial_labels(Y), lx = serial_labels(*f.codomain);
    Json objects = Json::object(), morphisms = Json::object();
    for (ObjectId a = 0; a < Y.object_count(); ++a) objects[ly.objects[a]] = lx.objects[f.on_object(a)];
    for (MorphismId m = 0; m < Y.morphism_count(); ++m) morphisms[ly.morphisms[m]] = lx.morphisms[f.on_morphism(m)];
    return {{"domain", groupoid_to_json(Y)}, {"codomain", groupoid_to_json(*f.codomain)}, {"objects", objects},
            {"morphisms", morphisms}};
}

inline Json space_to_json(const FiniteSpace& k) {
    Json covering = Json::array();
    for (std::size_t x = 0; x < k.size(); ++x)
        for (std::size_t y = 0; y < k.size(); ++y)
            if (x != y && k.leq(x, y)) covering.push_back({k.label(x), k.label(y)});
    return {{"points", k.labels()}, {"covering", covering}};
}

inline Json cover_to_json(const FiniteSpace& k, const OpenCover& c) {
    Json sets = Json::array();
    for (PointSet u : c.sets) {
        Json s = Json::array();
        for (std::size_t x = 0; x < k.size(); ++x)
            if ((u >> x) & 1) s.push_back(k.label(x));
        sets.push_back(s);
    }
    return {{"cover", sets}};
}

} // namespace mapstack
