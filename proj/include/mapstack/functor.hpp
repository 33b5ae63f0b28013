#pragma once

#include <optional>
#include <string>
#include <vector>

#include "groupoid.hpp"

namespace mapstack {

// A functor between finite groupoids, stored as explicit object and
// morphism maps. Equality is strict: same endpoints, same maps.
struct GroupoidFunctor {
    GroupoidRef domain;
    GroupoidRef codomain;
    std::vector<ObjectId> object_map;
    std::vector<MorphismId> morphism_map;

    ObjectId on_object(ObjectId x) const { return object_map[x]; }
    MorphismId on_morphism(MorphismId m) const { return morphism_map[m]; }

    friend bool operator==(const GroupoidFunctor& a, const GroupoidFunctor& b) {
        return a.domain == b.domain && a.codomain == b.codomain && a.object_map == b.object_map &&
               a.morphism_map == b.morphism_map;
    }
};

// Violations of functoriality; empty for a functor.
inline std::vector<std::string> validate_functor(const GroupoidFunctor& f) {
    std::vector<std::string> problems;
    const auto& x = *f.domain;
    const auto& y = *f.codomain;
    if (f.object_map.size() != x.object_count() || f.morphism_map.size() != x.morphism_count()) {
        problems.emplace_back("map sizes do not match the domain");
        return problems;
    }
    for (ObjectId o : f.object_map)
        if (o >= y.object_count()) {
            problems.emplace_back("object image outside the codomain");
            return problems;
        }
    for (MorphismId m = 0; m < x.morphism_count(); ++m) {
        MorphismId fm = f.morphism_map[m];
        if (fm >= y.morphism_count()) {
            problems.push_back("image of morphism " + std::to_string(m) + " outside the codomain");
            return problems;
        }
        if (y.source(fm) != f.object_map[x.source(m)] || y.target(fm) != f.object_map[x.target(m)])
            problems.push_back("morphism " + std::to_string(m) + " does not preserve source/target");
    }
    if (!problems.empty()) return problems;
    for (ObjectId o = 0; o < x.object_count(); ++o)
        if (f.morphism_map[x.identity(o)] != y.identity(f.object_map[o]))
            problems.push_back("identity of object " + std::to_string(o) + " not preserved");
    for (MorphismId m = 0; m < x.morphism_count(); ++m)
        for (MorphismId n : x.out(x.target(m)))
            if (f.morphism_map[x.compose(n, m)] != y.compose(f.morphism_map[n], f.morphism_map[m]))
                problems.push_back("composite " + std::to_string(n) + "∘" + std::to_string(m) + " not preserved");
    return problems;
}

inline GroupoidFunctor identity_functor(const GroupoidRef& g) {
    GroupoidFunctor f{g, g, {}, {}};
    f.object_map.resize(g->object_count());
    f.morphism_map.resize(g->morphism_count());
    std::iota(f.object_map.begin(), f.object_map.end(), 0u);
    std::iota(f.morphism_map.begin(), f.morphism_map.end(), 0u);
    return f;
}

// after ∘ before
inline GroupoidFunctor compose(const GroupoidFunctor& after, const GroupoidFunctor& before) {
    if (before.codomain != after.domain) throw InvalidInput("compose: functors are not composable");
    GroupoidFunctor f{before.domain, after.codomain, {}, {}};
    for (ObjectId o : before.object_map) f.object_map.push_back(after.object_map[o]);
    for (MorphismId m : before.morphism_map) f.morphism_map.push_back(after.morphism_map[m]);
    return f;
}

// Constant functor at object x.
inline GroupoidFunctor constant_functor(const GroupoidRef& domain, const GroupoidRef& codomain, ObjectId x) {
    return {domain, codomain, std::vector<ObjectId>(domain->object_count(), x),
            std::vector<MorphismId>(domain->morphism_count(), codomain->identity(x))};
}

// Shared terminal groupoid used as the domain of point functors, so that
// point functors into the same groupoid have the same domain.
inline const GroupoidRef& point_groupoid() {
    static const GroupoidRef point = share(terminal_groupoid());
    return point;
}

// The functor from the terminal groupoid picking out x.
inline GroupoidFunctor point_functor(const GroupoidRef& codomain, ObjectId x) {
    return constant_functor(point_groupoid(), codomain, x);
}

// An isomorphism f(a) -> y in the codomain with no preimage out of a.
struct LiftFailure {
    ObjectId object;
    MorphismId morphism;
};

// Nothing iff every isomorphism starting at an image object lifts.
inline std::optional<LiftFailure> find_unliftable(const GroupoidFunctor& f) {
    const auto& x = *f.domain;
    const auto& y = *f.codomain;
    std::vector<std::uint32_t> stamp(y.morphism_count(), UINT32_MAX);
    for (ObjectId a = 0; a < x.object_count(); ++a) {
        for (MorphismId n : x.out(a)) stamp[f.on_morphism(n)] = a;
        for (MorphismId m : y.out(f.on_object(a)))
            if (stamp[m] != a) return LiftFailure{a, m};
    }
    return std::nullopt;
}

// B(phi): BG → BH for a group homomorphism phi (morphism ids are elements).
inline GroupoidFunctor b_functor(const GroupoidRef& bg, const GroupoidRef& bh, const std::vector<Element>& phi) {
    return {bg, bh, {0}, std::vector<MorphismId>(phi.begin(), phi.end())};
}

// η: F ⇒ G with components η_x: F(x) → G(x).
struct NaturalTransformation {
    GroupoidFunctor source;
    GroupoidFunctor target;
    std::vector<MorphismId> components;
};

inline std::vector<std::string> validate_natural(const NaturalTransformation& eta) {
    std::vector<std::string> problems;
    const auto& x = *eta.source.domain;
    const auto& y = *eta.source.codomain;
    if (eta.target.domain != eta.source.domain || eta.target.codomain != eta.source.codomain) {
        problems.emplace_back("source and target functors have different endpoints");
        return problems;
    }
    if (eta.components.size() != x.object_count()) {
        problems.emplace_back("wrong number of components");
        return problems;
    }
    for (ObjectId o = 0; o < x.object_count(); ++o) {
        MorphismId c = eta.components[o];
        if (c >= y.morphism_count() || y.source(c) != eta.source.on_object(o) || y.target(c) != eta.target.on_object(o))
            problems.push_back("component at " + std::to_string(o) + " has wrong endpoints");
    }
    if (!problems.empty()) return problems;
    for (MorphismId m = 0; m < x.morphism_count(); ++m) {
        ObjectId a = x.source(m), b = x.target(m);
        if (y.compose(eta.target.on_morphism(m), eta.components[a]) != y.compose(eta.components[b], eta.source.on_morphism(m)))
            problems.push_back("naturality square fails at morphism " + std::to_string(m));
    }
    return problems;
}

// Vertical composite second ∘ first.
inline NaturalTransformation vertical(const NaturalTransformation& second, const NaturalTransformation& first) {
    NaturalTransformation r{first.source, second.target, {}};
    const auto& y = *first.source.codomain;
    for (std::size_t o = 0; o < first.components.size(); ++o)
        r.components.push_back(y.compose(second.components[o], first.components[o]));
    return r;
}

inline NaturalTransformation identity_transformation(const GroupoidFunctor& f) {
    NaturalTransformation r{f, f, {}};
    for (ObjectId o : f.object_map) r.components.push_back(f.codomain->identity(o));
    return r;
}

// η ∘ u for u: W → domain.
inline NaturalTransformation whisker_right(const NaturalTransformation& eta, const GroupoidFunctor& u) {
    NaturalTransformation r{compose(eta.source, u), compose(eta.target, u), {}};
    for (ObjectId o : u.object_map) r.components.push_back(eta.components[o]);
    return r;
}

// v ∘ η for v: codomain → W.
inline NaturalTransformation whisker_left(const GroupoidFunctor& v, const NaturalTransformation& eta) {
    NaturalTransformation r{compose(v, eta.source), compose(v, eta.target), {}};
    for (MorphismId c : eta.components) r.components.push_back(v.morphism_map[c]);
    return r;
}

} // namespace mapstack
