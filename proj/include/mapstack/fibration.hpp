#pragma once

#include <map>
#include <optional>
#include <string>

#include "loop_inertia.hpp"
#include "mapping.hpp"

namespace mapstack {

// Indiscrete groupoid on {0, 1}: the interval up to homotopy.
inline GroupoidRef interval_groupoid() { return share(indiscrete_groupoid(2)); }

// Fun(I, x) with evaluations at both ends and the constant-path functor.
// ev_t ∘ constant = id holds on the nose, so both 2-cells are identities.
struct PathGroupoid {
    GroupoidRef interval;
    FunctorGroupoid paths;
    GroupoidFunctor ev0, ev1, constant;
    NaturalTransformation alpha0, alpha1;  // ev_t ∘ constant ⇒ id
};

inline PathGroupoid path_groupoid(const GroupoidRef& x, const EnumerationBounds& bounds = {}) {
    PathGroupoid p;
    p.interval = interval_groupoid();
    p.paths = functor_groupoid(p.interval, x, bounds);
    p.ev0 = evaluation(p.paths, 0);
    p.ev1 = evaluation(p.paths, 1);
    const auto& I = *p.interval;
    p.constant = {x, p.paths.groupoid, {}, {}};
    for (ObjectId o = 0; o < x->object_count(); ++o) {
        GroupoidFunctor c = constant_functor(p.interval, x, o);
        auto id = p.paths.find(c);
        if (!id) throw VerificationFailure("constant path missing from the path groupoid");
        p.constant.object_map.push_back(*id);
    }
    for (MorphismId h = 0; h < x->morphism_count(); ++h) {
        std::vector<MorphismId> comps(I.object_count(), h);
        auto id = p.paths.find_transformation(p.constant.on_object(x->source(h)), comps);
        if (!id) throw VerificationFailure("constant homotopy missing from the path groupoid");
        p.constant.morphism_map.push_back(*id);
    }
    auto id_x = identity_functor(x);
    p.alpha0 = identity_transformation(compose(p.ev0, p.constant));
    p.alpha1 = identity_transformation(compose(p.ev1, p.constant));
    if (p.alpha0.target != id_x || p.alpha1.target != id_x)
        throw VerificationFailure("evaluation of constant paths is not the identity");
    return p;
}

struct IsofibrationCheck {
    std::optional<LiftFailure> counterexample;
    explicit operator bool() const { return !counterexample; }
};

inline IsofibrationCheck is_isofibration(const GroupoidFunctor& f) { return {find_unliftable(f)}; }

// f = p_f ∘ i_f through x̃ = x ×_{f, y, ev1} P y: objects (a, γ) with
// f(a) = γ(1). i_f(a) = (a, constant f(a)), p_f(a, γ) = γ(0), r_f(a, γ) = a.
struct FibrationReplacement {
    GroupoidFunctor f;
    PathGroupoid paths;
    StrictPullback total;  // x̃
    GroupoidFunctor embedding;   // i_f
    GroupoidFunctor projection;  // p_f
    GroupoidFunctor retraction;  // r_f
    NaturalTransformation factorization;  // p_f ∘ i_f ⇒ f, identity components
    NaturalTransformation homotopy;       // id ⇒ i_f ∘ r_f
    EquivalenceWitness embedding_witness;
};

inline FibrationReplacement replace(const GroupoidFunctor& f, const EnumerationBounds& bounds = {}) {
    FibrationReplacement r;
    r.f = f;
    const auto& X = *f.domain;
    const auto& Y = *f.codomain;
    r.paths = path_groupoid(f.codomain, bounds);
    r.total = strict_pullback(f, r.paths.ev1);
    const auto& T = *r.total.groupoid;
    std::map<std::pair<ObjectId, ObjectId>, ObjectId> obj;
    for (ObjectId o = 0; o < r.total.objects.size(); ++o) obj[r.total.objects[o]] = o;
    std::map<std::pair<MorphismId, MorphismId>, MorphismId> mor;
    for (MorphismId m = 0; m < r.total.morphisms.size(); ++m) mor[r.total.morphisms[m]] = m;

    r.embedding = {f.domain, r.total.groupoid, {}, {}};
    for (ObjectId a = 0; a < X.object_count(); ++a)
        r.embedding.object_map.push_back(obj.at({a, r.paths.constant.on_object(f.on_object(a))}));
    for (MorphismId m = 0; m < X.morphism_count(); ++m)
        r.embedding.morphism_map.push_back(mor.at({m, r.paths.constant.on_morphism(f.on_morphism(m))}));
    r.projection = compose(r.paths.ev0, r.total.second);
    r.retraction = r.total.first;

    if (compose(r.retraction, r.embedding) != identity_functor(f.domain))
        throw VerificationFailure("replacement retraction is not strict");
    auto pi = compose(r.projection, r.embedding);
    if (pi != f) throw VerificationFailure("replacement does not factor f");
    r.factorization = identity_transformation(f);
    r.factorization.source = pi;

    // contract γ to the constant path at its endpoint: component γ(0 -> 1) at 0
    const auto& P = r.paths.paths;
    r.homotopy = {identity_functor(r.total.groupoid), compose(r.embedding, r.retraction), {}};
    for (ObjectId o = 0; o < T.object_count(); ++o) {
        auto [a, gamma] = r.total.objects[o];
        const auto& path = P.functors[gamma];
        MorphismId along = path.on_morphism(1);  // 0 -> 1 in the interval
        std::vector<MorphismId> comps{along, Y.identity(path.on_object(1))};
        auto eta = P.find_transformation(gamma, comps);
        if (!eta) throw VerificationFailure("contraction of a path is missing");
        r.homotopy.components.push_back(mor.at({X.identity(a), *eta}));
    }
    auto problems = validate_natural(r.homotopy);
    if (!problems.empty()) throw VerificationFailure("replacement homotopy is not natural: " + problems.front());

    if (auto c = find_unliftable(r.projection))
        throw VerificationFailure("replacement projection is not an isofibration");
    std::string why;
    auto w = certify_equivalence(r.embedding, &why);
    if (!w) throw VerificationFailure("replacement embedding is not an equivalence: " + why);
    r.embedding_witness = std::move(*w);
    return r;
}

// hFib_y(f) = * ×_{y, Y, p_f} x̃, cross-checked against * ×_{y, Y, f} x.
struct HomotopyFiber {
    FibrationReplacement replacement;
    IsoComma fiber;   // via the replacement
    IsoComma direct;  // against f itself
    EquivalenceResult agreement;
};

inline HomotopyFiber homotopy_fiber(const GroupoidFunctor& f, ObjectId y, const EnumerationBounds& bounds = {}) {
    if (y >= f.codomain->object_count()) throw InvalidInput("homotopy_fiber: base object not declared");
    HomotopyFiber h;
    h.replacement = replace(f, bounds);
    auto point = point_functor(f.codomain, y);
    h.fiber = iso_comma(point, h.replacement.projection, bounds.table);
    h.direct = iso_comma(point, f, bounds.table);
    h.agreement = are_equivalent(h.fiber.groupoid, h.direct.groupoid);
    if (!h.agreement) throw VerificationFailure("homotopy fiber disagrees with the direct iso-comma: " + h.agreement.refutation);
    return h;
}

// Based loops at x: the homotopy fiber of ev: inertia(x) -> x over x.
struct BasedLoops {
    InertiaGroupoid inertia;
    HomotopyFiber fiber;
    GroupoidRef groupoid;
    std::size_t components = 0;
    bool discrete = false;  // every automorphism group trivial
};

inline BasedLoops omega(const GroupoidRef& x, ObjectId basepoint, const EnumerationBounds& bounds = {}) {
    BasedLoops b;
    b.inertia = inertia_groupoid(x);
    b.fiber = homotopy_fiber(b.inertia.ev, basepoint, bounds);
    b.groupoid = b.fiber.fiber.groupoid;
    b.components = pi0(*b.groupoid).count();
    b.discrete = is_essentially_discrete(*b.groupoid);
    return b;
}

} // namespace mapstack
