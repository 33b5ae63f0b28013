#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "functor.hpp"

namespace mapstack {

// A functor together with the data showing it is an equivalence.
struct EquivalenceWitness {
    struct Essential {
        ObjectId preimage;  // x with F(x) ≅ y
        MorphismId iso;     // F(x) → y in the codomain
    };
    struct HomBijection {
        ObjectId a, b;
        std::size_t size;  // |hom(a,b)| = |hom(F a, F b)|
    };

    GroupoidFunctor functor;
    std::vector<Essential> essential;        // one per codomain object
    std::vector<HomBijection> hom_bijections;  // one per nonempty domain hom-set
};

namespace detail {

inline std::uint64_t pair_key(ObjectId a, ObjectId b) { return (std::uint64_t{a} << 32) | b; }

// |hom(a,b)| for every nonempty hom-set.
inline std::unordered_map<std::uint64_t, std::size_t> hom_sizes(const FiniteGroupoid& g) {
    std::unordered_map<std::uint64_t, std::size_t> sizes;
    for (MorphismId m = 0; m < g.morphism_count(); ++m) ++sizes[pair_key(g.source(m), g.target(m))];
    return sizes;
}

// Checks full faithfulness of a valid functor from raw data. On success
// fills `certs` (sorted by (a,b)).
inline bool check_fully_faithful(const GroupoidFunctor& f, std::vector<EquivalenceWitness::HomBijection>* certs,
                                 std::string* why) {
    const auto& x = *f.domain;
    const auto& y = *f.codomain;
    auto y_sizes = hom_sizes(y);
    std::map<std::pair<ObjectId, ObjectId>, std::vector<MorphismId>> images;
    for (MorphismId m = 0; m < x.morphism_count(); ++m) images[{x.source(m), x.target(m)}].push_back(f.on_morphism(m));
    for (auto& [ab, imgs] : images) {
        std::sort(imgs.begin(), imgs.end());
        if (std::adjacent_find(imgs.begin(), imgs.end()) != imgs.end()) {
            if (why) *why = "not faithful on hom(" + std::to_string(ab.first) + "," + std::to_string(ab.second) + ")";
            return false;
        }
        auto it = y_sizes.find(pair_key(f.on_object(ab.first), f.on_object(ab.second)));
        std::size_t target_size = it == y_sizes.end() ? 0 : it->second;
        if (target_size != imgs.size()) {
            if (why) *why = "not full on hom(" + std::to_string(ab.first) + "," + std::to_string(ab.second) + ")";
            return false;
        }
        if (certs) certs->push_back({ab.first, ab.second, imgs.size()});
    }
    // empty hom-sets must stay empty: F is injective on components
    auto cx = pi0(x);
    auto cy = pi0(y);
    std::vector<std::uint32_t> hit(cy.count(), static_cast<std::uint32_t>(-1));
    for (ObjectId o = 0; o < x.object_count(); ++o) {
        auto c = cy.component_of[f.on_object(o)];
        if (hit[c] == static_cast<std::uint32_t>(-1)) {
            hit[c] = cx.component_of[o];
        } else if (hit[c] != cx.component_of[o]) {
            if (why) *why = "not full: two domain components map into one codomain component";
            return false;
        }
    }
    return true;
}

} // namespace detail

// Re-verifies a witness from raw data.
inline bool verify(const EquivalenceWitness& w, std::string* why = nullptr) {
    const auto& f = w.functor;
    auto problems = validate_functor(f);
    if (!problems.empty()) {
        if (why) *why = "not a functor: " + problems.front();
        return false;
    }
    const auto& y = *f.codomain;
    if (w.essential.size() != y.object_count()) {
        if (why) *why = "essential-surjectivity data has the wrong length";
        return false;
    }
    for (ObjectId o = 0; o < y.object_count(); ++o) {
        const auto& e = w.essential[o];
        if (e.preimage >= f.domain->object_count() || e.iso >= y.morphism_count() ||
            y.source(e.iso) != f.on_object(e.preimage) || y.target(e.iso) != o) {
            if (why) *why = "essential-surjectivity data wrong at object " + std::to_string(o);
            return false;
        }
    }
    std::vector<EquivalenceWitness::HomBijection> recomputed;
    if (!detail::check_fully_faithful(f, &recomputed, why)) return false;
    if (recomputed.size() != w.hom_bijections.size()) {
        if (why) *why = "hom-set certificate has the wrong length";
        return false;
    }
    for (std::size_t i = 0; i < recomputed.size(); ++i) {
        const auto& a = recomputed[i];
        const auto& b = w.hom_bijections[i];
        if (a.a != b.a || a.b != b.b || a.size != b.size) {
            if (why) *why = "hom-set certificate mismatch";
            return false;
        }
    }
    return true;
}

// Builds a witness if `f` is an equivalence.
inline std::optional<EquivalenceWitness> certify_equivalence(const GroupoidFunctor& f, std::string* why = nullptr) {
    auto problems = validate_functor(f);
    if (!problems.empty()) {
        if (why) *why = "not a functor: " + problems.front();
        return std::nullopt;
    }
    EquivalenceWitness w{f, {}, {}};
    const auto& y = *f.codomain;
    auto cy = pi0(y);
    auto paths = spanning_paths(y, cy);
    // for each codomain component, some domain object landing in it
    std::vector<ObjectId> preimage(cy.count(), static_cast<ObjectId>(-1));
    for (ObjectId o = 0; o < f.domain->object_count(); ++o) {
        auto c = cy.component_of[f.on_object(o)];
        if (preimage[c] == static_cast<ObjectId>(-1)) preimage[c] = o;
    }
    for (ObjectId o = 0; o < y.object_count(); ++o) {
        auto c = cy.component_of[o];
        ObjectId x = preimage[c];
        if (x == static_cast<ObjectId>(-1)) {
            if (why) *why = "not essentially surjective: object " + y.object_label(o) + " is not hit";
            return std::nullopt;
        }
        // F(x) → rep → o
        MorphismId to_rep = y.inverse(paths[f.on_object(x)]);
        w.essential.push_back({x, y.compose(paths[o], to_rep)});
    }
    if (!detail::check_fully_faithful(f, &w.hom_bijections, why)) return std::nullopt;
    return w;
}

struct EquivalenceResult {
    std::optional<EquivalenceWitness> witness;
    std::string refutation;

    explicit operator bool() const noexcept { return witness.has_value(); }
};

namespace detail {

inline bool identical(const FiniteGroupoid& a, const FiniteGroupoid& b) {
    if (a.object_count() != b.object_count() || a.morphism_count() != b.morphism_count()) return false;
    for (MorphismId m = 0; m < a.morphism_count(); ++m)
        if (a.source(m) != b.source(m) || a.target(m) != b.target(m) || a.inverse(m) != b.inverse(m)) return false;
    for (ObjectId o = 0; o < a.object_count(); ++o)
        if (a.identity(o) != b.identity(o)) return false;
    for (MorphismId m = 0; m < a.morphism_count(); ++m)
        for (MorphismId n : a.out(a.target(m)))
            if (a.compose(n, m) != b.compose(n, m)) return false;
    return true;
}

// Kuhn's augmenting-path matching; match_right[j] = left index or -1.
inline bool perfect_matching(const std::vector<std::vector<std::size_t>>& adj, std::size_t right_count,
                             std::vector<long>& match_right) {
    match_right.assign(right_count, -1);
    for (std::size_t i = 0; i < adj.size(); ++i) {
        std::vector<bool> seen(right_count, false);
        auto augment = [&](auto&& self, std::size_t u) -> bool {
            for (std::size_t v : adj[u]) {
                if (seen[v]) continue;
                seen[v] = true;
                if (match_right[v] < 0 || self(self, static_cast<std::size_t>(match_right[v]))) {
                    match_right[v] = static_cast<long>(u);
                    return true;
                }
            }
            return false;
        };
        if (!augment(augment, i)) return false;
    }
    return true;
}

} // namespace detail

// Decides x ≃ y. Refutes on a π₀ mismatch first, then matches components by
// isomorphism type of their automorphism groups. Throws BoundExceeded when an
// automorphism group is larger than `group_order_bound`.
inline EquivalenceResult are_equivalent(const GroupoidRef& x, const GroupoidRef& y, std::size_t group_order_bound = 200) {
    if (x == y || detail::identical(*x, *y)) {
        auto id = identity_functor(x);
        id.codomain = y;
        auto w = certify_equivalence(id);
        if (!w) throw VerificationFailure("identity functor failed to certify");
        return {std::move(w), {}};
    }
    auto cx = pi0(*x);
    auto cy = pi0(*y);
    if (cx.count() != cy.count())
        return {std::nullopt, "pi0 mismatch: " + std::to_string(cx.count()) + " vs " + std::to_string(cy.count()) + " components"};

    std::vector<AutomorphismGroup> ax, ay;
    for (std::size_t c = 0; c < cx.count(); ++c) ax.push_back(aut(*x, cx.representative(c)));
    for (std::size_t c = 0; c < cy.count(); ++c) ay.push_back(aut(*y, cy.representative(c)));
    for (const auto& a : ax)
        if (a.group.order() > group_order_bound)
            throw BoundExceeded("automorphism group order", group_order_bound, a.group.order());
    for (const auto& a : ay)
        if (a.group.order() > group_order_bound)
            throw BoundExceeded("automorphism group order", group_order_bound, a.group.order());

    // isomorphism is an equivalence relation, so compare against one
    // representative per type
    std::vector<std::vector<std::size_t>> adj(cx.count());
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Element>> isos;
    for (std::size_t i = 0; i < cx.count(); ++i)
        for (std::size_t j = 0; j < cy.count(); ++j) {
            if (ax[i].group.order() != ay[j].group.order()) continue;
            if (auto phi = find_isomorphism(ax[i].group, ay[j].group, group_order_bound)) {
                adj[i].push_back(j);
                isos.emplace(std::make_pair(i, j), std::move(*phi));
            }
        }
    std::vector<long> match_right;
    if (!detail::perfect_matching(adj, cy.count(), match_right)) {
        for (std::size_t i = 0; i < cx.count(); ++i)
            if (adj[i].empty())
                return {std::nullopt, "automorphism mismatch: component " + std::to_string(i) + " (|aut| = " +
                                          std::to_string(ax[i].group.order()) + ") has no isomorphic partner"};
        return {std::nullopt, "automorphism mismatch: no perfect matching of components by automorphism group"};
    }
    std::vector<std::size_t> match_left(cx.count());
    for (std::size_t j = 0; j < cy.count(); ++j) match_left[static_cast<std::size_t>(match_right[j])] = j;

    auto paths = spanning_paths(*x, cx);
    GroupoidFunctor f{x, y, std::vector<ObjectId>(x->object_count()), std::vector<MorphismId>(x->morphism_count())};
    // element index of each endomorphism of a representative
    std::vector<Element> element_of(x->morphism_count(), 0);
    for (const auto& a : ax)
        for (std::size_t e = 0; e < a.morphisms.size(); ++e) element_of[a.morphisms[e]] = static_cast<Element>(e);
    for (ObjectId o = 0; o < x->object_count(); ++o) {
        auto c = cx.component_of[o];
        f.object_map[o] = cy.representative(match_left[c]);
    }
    for (MorphismId m = 0; m < x->morphism_count(); ++m) {
        auto c = cx.component_of[x->source(m)];
        auto j = match_left[c];
        // transport m to an automorphism of the representative
        MorphismId loop = x->compose(x->inverse(paths[x->target(m)]), x->compose(m, paths[x->source(m)]));
        const auto& phi = isos.at({c, j});
        f.morphism_map[m] = ay[j].morphisms[phi[element_of[loop]]];
    }
    std::string why;
    auto w = certify_equivalence(f, &why);
    if (!w) throw VerificationFailure("constructed equivalence failed to certify: " + why);
    return {std::move(w), {}};
}

// One object per component, with the automorphisms of its representative.
struct Skeleton {
    GroupoidRef groupoid;
    EquivalenceWitness inclusion;  // skeleton → original
};

inline Skeleton skeleton(const GroupoidRef& g) {
    auto comps = pi0(*g);
    std::vector<MorphismRecord> mors;
    std::vector<MorphismId> original;
    std::vector<std::string> ol, ml;
    for (std::size_t c = 0; c < comps.count(); ++c) {
        ObjectId rep = comps.representative(c);
        ol.push_back(g->object_label(rep));
        for (MorphismId m : g->hom(rep, rep)) {
            mors.push_back({static_cast<ObjectId>(c), static_cast<ObjectId>(c)});
            original.push_back(m);
            ml.push_back(g->morphism_label(m));
        }
    }
    std::vector<MorphismId> local(g->morphism_count(), no_morphism);
    for (std::size_t i = 0; i < original.size(); ++i) local[original[i]] = static_cast<MorphismId>(i);
    FiniteGroupoid::Builder b(comps.count(), mors);
    for (std::size_t c = 0; c < comps.count(); ++c)
        b.set_identity(static_cast<ObjectId>(c), local[g->identity(comps.representative(c))]);
    for (std::size_t i = 0; i < original.size(); ++i) b.set_inverse(static_cast<MorphismId>(i), local[g->inverse(original[i])]);
    b.compose_with([&](MorphismId after, MorphismId before) { return local[g->compose(original[after], original[before])]; });
    b.set_labels(std::move(ol), std::move(ml));
    auto s = share(std::move(b).build());
    GroupoidFunctor inc{s, g, {}, original};
    for (std::size_t c = 0; c < comps.count(); ++c) inc.object_map.push_back(comps.representative(c));
    auto w = certify_equivalence(inc);
    if (!w) throw VerificationFailure("skeleton inclusion is not an equivalence");
    return {s, std::move(*w)};
}

// True when every automorphism group is trivial, i.e. g is equivalent to the
// discrete groupoid on its components.
inline bool is_essentially_discrete(const FiniteGroupoid& g) {
    auto comps = pi0(g);
    for (std::size_t c = 0; c < comps.count(); ++c)
        if (g.hom(comps.representative(c), comps.representative(c)).size() != 1) return false;
    return true;
}

} // namespace mapstack
