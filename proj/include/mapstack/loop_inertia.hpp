#pragma once

#include <optional>
#include <string>
#include <vector>

#include "equivalence.hpp"

namespace mapstack {

// A functor from the circle B Z is fixed by the image of its generating loop:
// an object and one of its automorphisms.
struct LoopPoint {
    ObjectId base;
    MorphismId loop;
};

// Objects are loop points; morphisms (x,g) -> (x',g') are h: x -> x' with
// h∘g = g'∘h. Morphism ids run over points, then out(x) in order.
struct InertiaGroupoid {
    GroupoidRef groupoid;
    GroupoidRef base;
    std::vector<LoopPoint> points;
    std::vector<MorphismId> conjugator;  // per morphism, the underlying h
    GroupoidFunctor ev;                  // (x, g) |-> x

    std::optional<ObjectId> find(ObjectId x, MorphismId g) const {
        for (ObjectId p = 0; p < points.size(); ++p)
            if (points[p].base == x && points[p].loop == g) return p;
        return std::nullopt;
    }
};

inline InertiaGroupoid inertia_groupoid(const GroupoidRef& x) {
    const auto& X = *x;
    InertiaGroupoid r;
    r.base = x;
    for (ObjectId o = 0; o < X.object_count(); ++o) {
        for (MorphismId g : X.hom(o, o)) r.points.push_back({o, g});
    }
    std::vector<ObjectId> point_at(X.morphism_count(), UINT32_MAX);  // loop -> point
    for (ObjectId p = 0; p < r.points.size(); ++p) point_at[r.points[p].loop] = p;

    std::vector<MorphismRecord> mors;
    std::vector<std::size_t> base;
    for (ObjectId p = 0; p < r.points.size(); ++p) {
        base.push_back(mors.size());
        auto [o, g] = r.points[p];
        for (MorphismId h : X.out(o)) {
            MorphismId g2 = X.compose(h, X.compose(g, X.inverse(h)));
            mors.push_back({p, point_at[g2]});
            r.conjugator.push_back(h);
        }
    }
    auto id_of = [&](ObjectId p, MorphismId h) { return static_cast<MorphismId>(base[p] + X.out_position(h)); };
    FiniteGroupoid::Builder b(r.points.size(), mors);
    for (ObjectId p = 0; p < r.points.size(); ++p) b.set_identity(p, id_of(p, X.identity(r.points[p].base)));
    for (MorphismId m = 0; m < mors.size(); ++m) b.set_inverse(m, id_of(mors[m].target, X.inverse(r.conjugator[m])));
    b.compose_with([&](MorphismId after, MorphismId before) {
        return id_of(mors[before].source, X.compose(r.conjugator[after], r.conjugator[before]));
    });
    std::vector<std::string> ol, ml;
    for (const auto& [o, g] : r.points) ol.push_back("(" + X.object_label(o) + "," + X.morphism_label(g) + ")");
    for (MorphismId h : r.conjugator) ml.push_back(X.morphism_label(h));
    b.set_labels(std::move(ol), std::move(ml));
    r.groupoid = share(std::move(b).build());
    r.ev = {r.groupoid, x, {}, {}};
    for (const auto& pt : r.points) r.ev.object_map.push_back(pt.base);
    r.ev.morphism_map = r.conjugator;
    return r;
}

// Conjugacy classes listed by representative, the least element of each
// class in the group's element order.
struct ConjugacyTable {
    std::vector<Element> representatives;
    std::vector<std::size_t> class_of;  // per element
    std::vector<std::vector<Element>> classes;
    std::vector<std::vector<Element>> centralizers;

    std::size_t count() const { return representatives.size(); }
};

inline ConjugacyTable conjugacy(const FiniteGroup& g) {
    ConjugacyTable t;
    t.class_of.assign(g.order(), SIZE_MAX);
    for (Element a = 0; a < g.order(); ++a) {
        if (t.class_of[a] != SIZE_MAX) continue;
        std::size_t c = t.representatives.size();
        t.representatives.push_back(a);
        std::vector<Element> cls;
        for (Element h = 0; h < g.order(); ++h) {
            Element b = g.conjugate(h, a);
            if (t.class_of[b] == SIZE_MAX) {
                t.class_of[b] = c;
                cls.push_back(b);
            }
        }
        std::sort(cls.begin(), cls.end());
        t.classes.push_back(std::move(cls));
        t.centralizers.push_back(centralizer(g, a));
    }
    return t;
}

// Loops γ with γ(θ+1) = αγ(θ)α⁻¹ in a discrete group: constant loops at
// elements commuting with α.
inline Subgroup twisted_loop_group(const FiniteGroup& g, Element alpha) { return make_subgroup(g, centralizer(g, alpha)); }

// Based twisted loops of a discrete group are trivial.
inline Subgroup based_twisted_loop_group(const FiniteGroup& g, Element) { return make_subgroup(g, {g.identity()}); }

// The G-torsor over the circle glued by α.
struct ClutchingDatum {
    const FiniteGroup* group;
    Element alpha;
};

struct TorsorIso {
    std::optional<Element> delta;  // least δ with δαδ⁻¹ = β
    std::string refutation;
    explicit operator bool() const { return delta.has_value(); }
};

inline TorsorIso torsor_iso(const FiniteGroup& g, Element alpha, Element beta) {
    for (Element d = 0; d < g.order(); ++d)
        if (g.conjugate(d, alpha) == beta) return {d, {}};
    return {std::nullopt, "no element conjugates " + g.label(alpha) + " to " + g.label(beta)};
}

inline TorsorIso torsor_iso(const ClutchingDatum& a, const ClutchingDatum& b) {
    if (a.group != b.group) throw InvalidInput("torsor_iso: clutching data over different groups");
    return torsor_iso(*a.group, a.alpha, b.alpha);
}

// G acting on itself by conjugation, with its isomorphism to inertia(B G).
struct BorelConstruction {
    GroupoidRef groupoid;
    InertiaGroupoid inertia;
    GroupoidFunctor from_inertia;
    EquivalenceWitness witness;
};

inline BorelConstruction borel_groupoid(const FiniteGroup& g) {
    BorelConstruction r;
    r.groupoid = share(action_groupoid(g, conjugation_action(g)));
    r.inertia = inertia_groupoid(share(b_group(g)));
    const std::size_t n = g.order();
    // inertia point (•, a) is point a; conjugator h at point a is (a, h)
    GroupoidFunctor f{r.inertia.groupoid, r.groupoid, {}, {}};
    for (const auto& pt : r.inertia.points) f.object_map.push_back(pt.loop);
    for (MorphismId m = 0; m < r.inertia.groupoid->morphism_count(); ++m)
        f.morphism_map.push_back(static_cast<MorphismId>(r.inertia.points[r.inertia.groupoid->source(m)].loop * n + r.inertia.conjugator[m]));
    std::string why;
    auto w = certify_equivalence(f, &why);
    if (!w) throw VerificationFailure("Borel comparison is not an equivalence: " + why);
    r.from_inertia = std::move(f);
    r.witness = std::move(*w);
    return r;
}

// inertia(B G) split into one B Z(α) per conjugacy class.
struct LoopDecomposition {
    ConjugacyTable classes;
    std::vector<Subgroup> centralizers;
    GroupoidRef summands;  // ⊔ B Z(α_i)
    InertiaGroupoid inertia;
    GroupoidFunctor inclusion;  // summand i |-> (•, α_i)
    EquivalenceWitness witness;
    BorelConstruction borel;
    EquivalenceWitness borel_witness;  // summands -> Borel groupoid
};

inline LoopDecomposition loop_decomposition(const FiniteGroup& g) {
    LoopDecomposition r;
    r.classes = conjugacy(g);
    std::vector<FiniteGroupoid> parts;
    for (Element a : r.classes.representatives) {
        r.centralizers.push_back(twisted_loop_group(g, a));
        parts.push_back(b_group(r.centralizers.back().group));
    }
    std::vector<const FiniteGroupoid*> ptrs;
    for (const auto& p : parts) ptrs.push_back(&p);
    r.summands = share(disjoint_union(std::span<const FiniteGroupoid* const>(ptrs)));
    r.borel = borel_groupoid(g);
    r.inertia = r.borel.inertia;
    const std::size_t n = g.order();
    // inertia of B G: point a has id a, conjugator h at point a has id a*n + h
    GroupoidFunctor f{r.summands, r.inertia.groupoid, {}, {}};
    for (Element a : r.classes.representatives) f.object_map.push_back(a);
    for (std::size_t i = 0; i < r.centralizers.size(); ++i)
        for (Element z : r.centralizers[i].embedding)
            f.morphism_map.push_back(static_cast<MorphismId>(r.classes.representatives[i] * n + z));
    std::string why;
    auto w = certify_equivalence(f, &why);
    if (!w) throw VerificationFailure("loop decomposition is not an equivalence: " + why);
    r.inclusion = f;
    r.witness = std::move(*w);
    auto to_borel = compose(r.borel.from_inertia, f);
    auto wb = certify_equivalence(to_borel, &why);
    if (!wb) throw VerificationFailure("loop decomposition into the Borel groupoid is not an equivalence: " + why);
    r.borel_witness = std::move(*wb);
    return r;
}

} // namespace mapstack
