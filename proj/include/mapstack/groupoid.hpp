#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "group.hpp"

namespace mapstack {

using ObjectId = std::uint32_t;
using MorphismId = std::uint32_t;

inline constexpr MorphismId no_morphism = static_cast<MorphismId>(-1);

struct MorphismRecord {
    ObjectId source;
    ObjectId target;
};

// Upper limit on dense composition-table entries held by a single groupoid.
inline constexpr std::size_t default_table_bound = std::size_t{1} << 25;

// A finite groupoid with explicitly stored morphisms and a dense composition
// table. Objects and morphisms are integers in input order. Instances are
// immutable once built; an instance may still violate the groupoid axioms
// (see validate()).
class FiniteGroupoid {
public:
    class Builder;

    FiniteGroupoid() = default;

    std::size_t object_count() const noexcept { return object_count_; }
    std::size_t morphism_count() const noexcept { return morphisms_.size(); }
    bool empty() const noexcept { return object_count_ == 0; }

    ObjectId source(MorphismId m) const { return morphisms_[m].source; }
    ObjectId target(MorphismId m) const { return morphisms_[m].target; }
    const MorphismRecord& record(MorphismId m) const { return morphisms_[m]; }

    // after ∘ before; requires target(before) == source(after).
    MorphismId compose(MorphismId after, MorphismId before) const {
        ObjectId mid = morphisms_[before].target;
        return table_[table_offset_[mid] + in_pos_[before] * out_[mid].size() + out_pos_[after]];
    }
    MorphismId identity(ObjectId x) const { return identity_[x]; }
    MorphismId inverse(MorphismId m) const { return inverse_[m]; }

    std::span<const MorphismId> out(ObjectId x) const { return out_[x]; }
    // Index of m within out(source(m)).
    std::size_t out_position(MorphismId m) const { return out_pos_[m]; }
    std::span<const MorphismId> in(ObjectId x) const { return in_[x]; }

    std::vector<MorphismId> hom(ObjectId a, ObjectId b) const {
        std::vector<MorphismId> r;
        for (MorphismId m : out_[a])
            if (morphisms_[m].target == b) r.push_back(m);
        return r;
    }

    std::string object_label(ObjectId x) const {
        return x < object_labels_.size() ? object_labels_[x] : std::to_string(x);
    }
    std::string morphism_label(MorphismId m) const {
        return m < morphism_labels_.size() ? morphism_labels_[m] : "m" + std::to_string(m);
    }
    bool has_labels() const noexcept { return !object_labels_.empty(); }

    std::size_t table_size() const noexcept { return table_.size(); }

private:
    std::size_t object_count_ = 0;
    std::vector<MorphismRecord> morphisms_;
    std::vector<std::vector<MorphismId>> out_, in_;
    std::vector<std::size_t> out_pos_, in_pos_, table_offset_;
    std::vector<MorphismId> table_;
    std::vector<MorphismId> identity_, inverse_;
    std::vector<std::string> object_labels_, morphism_labels_;
};

class FiniteGroupoid::Builder {
public:
    // All morphism endpoints must be < object_count.
    Builder(std::size_t object_count, std::vector<MorphismRecord> morphisms,
            std::size_t table_bound = default_table_bound) {
        g_.object_count_ = object_count;
        g_.morphisms_ = std::move(morphisms);
        g_.out_.resize(object_count);
        g_.in_.resize(object_count);
        g_.out_pos_.resize(g_.morphisms_.size());
        g_.in_pos_.resize(g_.morphisms_.size());
        for (MorphismId m = 0; m < g_.morphisms_.size(); ++m) {
            const auto& r = g_.morphisms_[m];
            if (r.source >= object_count || r.target >= object_count)
                throw InvalidInput("morphism " + std::to_string(m) + " has an undeclared endpoint");
            g_.out_pos_[m] = g_.out_[r.source].size();
            g_.out_[r.source].push_back(m);
            g_.in_pos_[m] = g_.in_[r.target].size();
            g_.in_[r.target].push_back(m);
        }
        g_.table_offset_.resize(object_count);
        std::size_t total = 0;
        for (ObjectId x = 0; x < object_count; ++x) {
            g_.table_offset_[x] = total;
            total = detail::sat_add(total, detail::sat_mul(g_.in_[x].size(), g_.out_[x].size()));
        }
        if (total > table_bound) throw BoundExceeded("groupoid composition table", table_bound, total);
        g_.table_.assign(total, no_morphism);
        g_.identity_.assign(object_count, no_morphism);
        g_.inverse_.assign(g_.morphisms_.size(), no_morphism);
    }

    Builder& set_composite(MorphismId after, MorphismId before, MorphismId result) {
        ObjectId mid = g_.morphisms_[before].target;
        if (g_.morphisms_[after].source != mid)
            throw InvalidInput("compose entry for non-composable pair (" + std::to_string(after) + ", " +
                               std::to_string(before) + ")");
        g_.table_[g_.table_offset_[mid] + g_.in_pos_[before] * g_.out_[mid].size() + g_.out_pos_[after]] = result;
        return *this;
    }

    // Fills every composable pair from fn(after, before).
    template <class ComposeFn>
    Builder& compose_with(ComposeFn&& fn) {
        for (ObjectId mid = 0; mid < g_.object_count_; ++mid)
            for (MorphismId before : g_.in_[mid])
                for (MorphismId after : g_.out_[mid]) set_composite(after, before, fn(after, before));
        return *this;
    }

    Builder& set_identity(ObjectId x, MorphismId m) {
        g_.identity_[x] = m;
        return *this;
    }
    Builder& set_inverse(MorphismId m, MorphismId inv) {
        g_.inverse_[m] = inv;
        return *this;
    }
    Builder& set_labels(std::vector<std::string> objects, std::vector<std::string> morphisms) {
        g_.object_labels_ = std::move(objects);
        g_.morphism_labels_ = std::move(morphisms);
        return *this;
    }

    // Fills unset identities (the idempotent endomorphism) and inverses
    // (the left inverse with respect to the identity) from the table.
    Builder& derive_identities_and_inverses() {
        for (ObjectId x = 0; x < g_.object_count_; ++x) {
            if (g_.identity_[x] != no_morphism) continue;
            for (MorphismId m : g_.out_[x])
                if (g_.morphisms_[m].target == x && g_.compose(m, m) == m) {
                    g_.identity_[x] = m;
                    break;
                }
        }
        for (MorphismId m = 0; m < g_.morphisms_.size(); ++m) {
            if (g_.inverse_[m] != no_morphism) continue;
            const auto& r = g_.morphisms_[m];
            MorphismId id = g_.identity_[r.source];
            if (id == no_morphism) continue;
            for (MorphismId c : g_.out_[r.target])
                if (g_.morphisms_[c].target == r.source && g_.compose(c, m) == id) {
                    g_.inverse_[m] = c;
                    break;
                }
        }
        return *this;
    }

    FiniteGroupoid build() && { return std::move(g_); }

private:
    FiniteGroupoid g_;
};

using GroupoidRef = std::shared_ptr<const FiniteGroupoid>;

inline GroupoidRef share(FiniteGroupoid g) { return std::make_shared<const FiniteGroupoid>(std::move(g)); }

struct Violation {
    enum class Kind { composition, associativity, identity, inverse };
    Kind kind;
    std::vector<std::uint32_t> witness;  // morphism (or object) ids
    std::string message;
};

inline const char* to_string(Violation::Kind k) {
    switch (k) {
        case Violation::Kind::composition: return "composition";
        case Violation::Kind::associativity: return "associativity";
        case Violation::Kind::identity: return "identity";
        case Violation::Kind::inverse: return "inverse";
    }
    return "?";
}

// Every violated axiom with a concrete counterexample. Empty iff `g` is a
// groupoid.
inline std::vector<Violation> validate(const FiniteGroupoid& g) {
    using K = Violation::Kind;
    std::vector<Violation> report;
    auto str = [](auto... ids) {
        std::string s;
        ((s += (s.empty() ? "" : ", ") + std::to_string(ids)), ...);
        return s;
    };
    bool table_ok = true;
    for (ObjectId mid = 0; mid < g.object_count(); ++mid)
        for (MorphismId before : g.in(mid))
            for (MorphismId after : g.out(mid)) {
                MorphismId c = g.compose(after, before);
                if (c == no_morphism) {
                    report.push_back({K::composition, {after, before}, "composite of (" + str(after, before) + ") undefined"});
                    table_ok = false;
                } else if (c >= g.morphism_count() || g.source(c) != g.source(before) || g.target(c) != g.target(after)) {
                    report.push_back({K::composition, {after, before, c},
                                      "composite of (" + str(after, before) + ") = " + std::to_string(c) + " has wrong endpoints"});
                    table_ok = false;
                }
            }
    if (!table_ok) return report;

    for (MorphismId m1 = 0; m1 < g.morphism_count(); ++m1)
        for (MorphismId m2 : g.out(g.target(m1)))
            for (MorphismId m3 : g.out(g.target(m2))) {
                MorphismId left = g.compose(g.compose(m3, m2), m1);
                MorphismId right = g.compose(m3, g.compose(m2, m1));
                if (left != right)
                    report.push_back({K::associativity, {m3, m2, m1},
                                      "(" + str(m3) + "∘" + str(m2) + ")∘" + str(m1) + " = " + std::to_string(left) +
                                          " but " + str(m3) + "∘(" + str(m2) + "∘" + str(m1) + ") = " + std::to_string(right)});
            }

    bool ids_ok = true;
    for (ObjectId x = 0; x < g.object_count(); ++x) {
        MorphismId e = g.identity(x);
        if (e == no_morphism || e >= g.morphism_count() || g.source(e) != x || g.target(e) != x) {
            report.push_back({K::identity, {x}, "object " + std::to_string(x) + " has no identity"});
            ids_ok = false;
            continue;
        }
        for (MorphismId m : g.out(x))
            if (g.compose(m, e) != m)
                report.push_back({K::identity, {m, e}, str(m) + "∘id(" + std::to_string(x) + ") != " + str(m)});
        for (MorphismId m : g.in(x))
            if (g.compose(e, m) != m)
                report.push_back({K::identity, {e, m}, "id(" + std::to_string(x) + ")∘" + str(m) + " != " + str(m)});
    }
    if (!ids_ok) return report;

    for (MorphismId m = 0; m < g.morphism_count(); ++m) {
        MorphismId v = g.inverse(m);
        if (v == no_morphism || v >= g.morphism_count() || g.source(v) != g.target(m) || g.target(v) != g.source(m)) {
            report.push_back({K::inverse, {m}, "morphism " + std::to_string(m) + " has no inverse"});
            continue;
        }
        if (g.compose(v, m) != g.identity(g.source(m)) || g.compose(m, v) != g.identity(g.target(m)))
            report.push_back({K::inverse, {m, v}, std::to_string(v) + " is not a two-sided inverse of " + std::to_string(m)});
    }
    return report;
}

inline bool is_valid(const FiniteGroupoid& g) { return validate(g).empty(); }

// ---------------------------------------------------------------------------
// Basic constructions

inline FiniteGroupoid empty_groupoid() { return FiniteGroupoid::Builder(0, {}).build(); }

// Objects 0..n-1 and identities only.
inline FiniteGroupoid discrete_groupoid(std::size_t n) {
    std::vector<MorphismRecord> mors;
    for (ObjectId x = 0; x < n; ++x) mors.push_back({x, x});
    FiniteGroupoid::Builder b(n, mors);
    for (ObjectId x = 0; x < n; ++x) b.set_identity(x, x).set_inverse(x, x);
    b.compose_with([](MorphismId after, MorphismId) { return after; });
    return std::move(b).build();
}

inline FiniteGroupoid terminal_groupoid() { return discrete_groupoid(1); }

// Exactly one morphism between every ordered pair; morphism a→b has id a*n+b.
inline FiniteGroupoid indiscrete_groupoid(std::size_t n) {
    std::vector<MorphismRecord> mors;
    for (ObjectId a = 0; a < n; ++a)
        for (ObjectId b = 0; b < n; ++b) mors.push_back({a, b});
    FiniteGroupoid::Builder builder(n, mors);
    for (ObjectId a = 0; a < n; ++a) {
        builder.set_identity(a, static_cast<MorphismId>(a * n + a));
        for (ObjectId b = 0; b < n; ++b)
            builder.set_inverse(static_cast<MorphismId>(a * n + b), static_cast<MorphismId>(b * n + a));
    }
    builder.compose_with([&](MorphismId after, MorphismId before) {
        return static_cast<MorphismId>(mors[before].source * n + mors[after].target);
    });
    return std::move(builder).build();
}

// One object; morphism ids are group elements.
inline FiniteGroupoid b_group(const FiniteGroup& g) {
    std::vector<MorphismRecord> mors(g.order(), MorphismRecord{0, 0});
    FiniteGroupoid::Builder b(1, mors);
    b.set_identity(0, g.identity());
    for (Element a = 0; a < g.order(); ++a) b.set_inverse(a, g.inverse(a));
    b.compose_with([&](MorphismId after, MorphismId before) { return g.multiply(after, before); });
    b.set_labels({"*"}, g.labels());
    return std::move(b).build();
}

// A left action of a finite group on {0..size-1}: act[g][s] = g·s.
struct GSet {
    std::size_t size = 0;
    std::vector<std::vector<std::uint32_t>> act;
    std::vector<std::string> labels;
};

inline std::vector<std::string> validate_action(const FiniteGroup& g, const GSet& s) {
    std::vector<std::string> problems;
    if (s.act.size() != g.order()) {
        problems.emplace_back("action table must have one row per group element");
        return problems;
    }
    for (Element a = 0; a < g.order(); ++a) {
        if (s.act[a].size() != s.size) {
            problems.push_back("action row " + std::to_string(a) + " has wrong length");
            return problems;
        }
        for (auto y : s.act[a])
            if (y >= s.size) {
                problems.push_back("action row " + std::to_string(a) + " leaves the set");
                return problems;
            }
    }
    for (std::uint32_t x = 0; x < s.size; ++x) {
        if (s.act[g.identity()][x] != x) problems.push_back("identity moves point " + std::to_string(x));
        for (Element a = 0; a < g.order(); ++a)
            for (Element b = 0; b < g.order(); ++b)
                if (s.act[g.multiply(a, b)][x] != s.act[a][s.act[b][x]])
                    problems.push_back("(ab)·x != a·(b·x) for a=" + std::to_string(a) + ", b=" + std::to_string(b) +
                                       ", x=" + std::to_string(x));
    }
    return problems;
}

inline GSet conjugation_action(const FiniteGroup& g) {
    GSet s;
    s.size = g.order();
    s.act.assign(g.order(), std::vector<std::uint32_t>(g.order()));
    for (Element a = 0; a < g.order(); ++a)
        for (Element x = 0; x < g.order(); ++x) s.act[a][x] = g.conjugate(a, x);
    s.labels = g.labels();
    return s;
}

// Objects = points of s; morphism (s, g): s → g·s has id s*|G| + g.
inline FiniteGroupoid action_groupoid(const FiniteGroup& g, const GSet& s) {
    auto problems = validate_action(g, s);
    if (!problems.empty()) throw InvalidInput("invalid group action: " + problems.front());
    const std::size_t n = g.order();
    std::vector<MorphismRecord> mors;
    for (std::uint32_t x = 0; x < s.size; ++x)
        for (Element a = 0; a < n; ++a) mors.push_back({x, s.act[a][x]});
    FiniteGroupoid::Builder b(s.size, mors);
    for (std::uint32_t x = 0; x < s.size; ++x) {
        b.set_identity(x, static_cast<MorphismId>(x * n + g.identity()));
        for (Element a = 0; a < n; ++a)
            b.set_inverse(static_cast<MorphismId>(x * n + a), static_cast<MorphismId>(s.act[a][x] * n + g.inverse(a)));
    }
    b.compose_with([&](MorphismId after, MorphismId before) {
        return static_cast<MorphismId>((before / n) * n + g.multiply(after % n, before % n));
    });
    std::vector<std::string> olabels, mlabels;
    for (std::uint32_t x = 0; x < s.size; ++x) {
        olabels.push_back(x < s.labels.size() ? s.labels[x] : std::to_string(x));
        for (Element a = 0; a < n; ++a) mlabels.push_back("(" + olabels.back() + "," + g.label(a) + ")");
    }
    b.set_labels(std::move(olabels), std::move(mlabels));
    return std::move(b).build();
}

// Object (x, y) has id x*|Obj(h)|+y; morphism (m, n) has id m*|Mor(h)|+n.
inline FiniteGroupoid product(const FiniteGroupoid& g, const FiniteGroupoid& h) {
    const std::size_t ho = h.object_count(), hm = h.morphism_count();
    std::vector<MorphismRecord> mors;
    mors.reserve(g.morphism_count() * hm);
    for (MorphismId a = 0; a < g.morphism_count(); ++a)
        for (MorphismId b = 0; b < hm; ++b)
            mors.push_back({static_cast<ObjectId>(g.source(a) * ho + h.source(b)),
                            static_cast<ObjectId>(g.target(a) * ho + h.target(b))});
    FiniteGroupoid::Builder builder(g.object_count() * ho, std::move(mors));
    for (ObjectId x = 0; x < g.object_count(); ++x)
        for (ObjectId y = 0; y < ho; ++y)
            builder.set_identity(static_cast<ObjectId>(x * ho + y),
                                 static_cast<MorphismId>(g.identity(x) * hm + h.identity(y)));
    for (MorphismId a = 0; a < g.morphism_count(); ++a)
        for (MorphismId b = 0; b < hm; ++b)
            builder.set_inverse(static_cast<MorphismId>(a * hm + b), static_cast<MorphismId>(g.inverse(a) * hm + h.inverse(b)));
    builder.compose_with([&](MorphismId after, MorphismId before) {
        return static_cast<MorphismId>(g.compose(after / hm, before / hm) * hm + h.compose(after % hm, before % hm));
    });
    std::vector<std::string> ol, ml;
    for (ObjectId x = 0; x < g.object_count(); ++x)
        for (ObjectId y = 0; y < ho; ++y) ol.push_back("(" + g.object_label(x) + "," + h.object_label(y) + ")");
    for (MorphismId a = 0; a < g.morphism_count(); ++a)
        for (MorphismId b = 0; b < hm; ++b) ml.push_back("(" + g.morphism_label(a) + "," + h.morphism_label(b) + ")");
    builder.set_labels(std::move(ol), std::move(ml));
    return std::move(builder).build();
}

// Summands laid out consecutively in argument order.
inline FiniteGroupoid disjoint_union(std::span<const FiniteGroupoid* const> parts) {
    std::size_t objects = 0;
    std::vector<MorphismRecord> mors;
    std::vector<std::size_t> obj_off, mor_off;
    for (const auto* p : parts) {
        obj_off.push_back(objects);
        mor_off.push_back(mors.size());
        for (MorphismId m = 0; m < p->morphism_count(); ++m)
            mors.push_back({static_cast<ObjectId>(p->source(m) + objects), static_cast<ObjectId>(p->target(m) + objects)});
        objects += p->object_count();
    }
    FiniteGroupoid::Builder b(objects, mors);
    std::vector<std::string> ol, ml;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& p = *parts[i];
        auto oo = static_cast<std::uint32_t>(obj_off[i]), mo = static_cast<std::uint32_t>(mor_off[i]);
        for (ObjectId x = 0; x < p.object_count(); ++x) {
            b.set_identity(x + oo, p.identity(x) == no_morphism ? no_morphism : p.identity(x) + mo);
            ol.push_back(parts.size() > 1 ? std::to_string(i) + ":" + p.object_label(x) : p.object_label(x));
        }
        for (MorphismId m = 0; m < p.morphism_count(); ++m) {
            b.set_inverse(m + mo, p.inverse(m) == no_morphism ? no_morphism : p.inverse(m) + mo);
            ml.push_back(parts.size() > 1 ? std::to_string(i) + ":" + p.morphism_label(m) : p.morphism_label(m));
            for (MorphismId after : p.out(p.target(m))) {
                MorphismId c = p.compose(after, m);
                b.set_composite(after + mo, m + mo, c == no_morphism ? no_morphism : c + mo);
            }
        }
    }
    b.set_labels(std::move(ol), std::move(ml));
    return std::move(b).build();
}

inline FiniteGroupoid disjoint_union(std::initializer_list<const FiniteGroupoid*> parts) {
    return disjoint_union(std::span<const FiniteGroupoid* const>(parts.begin(), parts.size()));
}

inline FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) { return disjoint_union({&a, &b}); }

// ---------------------------------------------------------------------------
// Connected components and automorphism groups

struct Components {
    std::vector<std::uint32_t> component_of;    // per object
    std::vector<std::vector<ObjectId>> members;  // sorted; members[c][0] is the representative

    std::size_t count() const noexcept { return members.size(); }
    ObjectId representative(std::size_t c) const { return members[c].front(); }
};

inline Components pi0(const FiniteGroupoid& g) {
    Components c;
    constexpr auto unset = static_cast<std::uint32_t>(-1);
    c.component_of.assign(g.object_count(), unset);
    for (ObjectId start = 0; start < g.object_count(); ++start) {
        if (c.component_of[start] != unset) continue;
        auto id = static_cast<std::uint32_t>(c.members.size());
        std::vector<ObjectId> stack{start}, members;
        c.component_of[start] = id;
        while (!stack.empty()) {
            ObjectId x = stack.back();
            stack.pop_back();
            members.push_back(x);
            for (MorphismId m : g.out(x))
                if (c.component_of[g.target(m)] == unset) {
                    c.component_of[g.target(m)] = id;
                    stack.push_back(g.target(m));
                }
            for (MorphismId m : g.in(x))
                if (c.component_of[g.source(m)] == unset) {
                    c.component_of[g.source(m)] = id;
                    stack.push_back(g.source(m));
                }
        }
        std::sort(members.begin(), members.end());
        c.members.push_back(std::move(members));
    }
    return c;
}

// Automorphism group of an object, with the morphism realizing each element.
struct AutomorphismGroup {
    FiniteGroup group;
    std::vector<MorphismId> morphisms;  // element -> endomorphism
};

inline AutomorphismGroup aut(const FiniteGroupoid& g, ObjectId x) {
    std::vector<MorphismId> endo = g.hom(x, x);
    // place the identity first so element 0 is the identity
    auto it = std::find(endo.begin(), endo.end(), g.identity(x));
    if (it == endo.end()) throw InvalidInput("aut: object " + std::to_string(x) + " has no identity");
    std::rotate(endo.begin(), it, it + 1);
    std::vector<Element> index(g.morphism_count(), 0);
    for (std::size_t i = 0; i < endo.size(); ++i) index[endo[i]] = static_cast<Element>(i);
    GroupTable t(endo.size(), std::vector<Element>(endo.size()));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < endo.size(); ++a) {
        labels.push_back(g.morphism_label(endo[a]));
        for (std::size_t b = 0; b < endo.size(); ++b) t[a][b] = index[g.compose(endo[a], endo[b])];
    }
    return {FiniteGroup::from_table(t, std::move(labels)), std::move(endo)};
}

// For each object of a component, a morphism from the representative to it
// (breadth-first spanning tree in canonical order).
inline std::vector<MorphismId> spanning_paths(const FiniteGroupoid& g, const Components& comps) {
    std::vector<MorphismId> path(g.object_count(), no_morphism);
    for (const auto& members : comps.members) {
        ObjectId root = members.front();
        path[root] = g.identity(root);
        std::vector<ObjectId> queue{root};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            ObjectId x = queue[q];
            for (MorphismId m : g.out(x)) {
                ObjectId y = g.target(m);
                if (path[y] == no_morphism) {
                    path[y] = g.compose(m, path[x]);
                    queue.push_back(y);
                }
            }
        }
    }
    return path;
}

} // namespace mapstack
