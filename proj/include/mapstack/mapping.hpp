#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "equivalence.hpp"

namespace mapstack {

namespace detail {

struct VectorHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
        std::uint64_t h = 1469598103934665603ull;
        for (auto x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h ^ (h >> 29));
    }
};

using VectorIndex = std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VectorHash>;

inline std::vector<std::uint32_t> functor_key(const GroupoidFunctor& f) {
    std::vector<std::uint32_t> key(f.object_map);
    key.insert(key.end(), f.morphism_map.begin(), f.morphism_map.end());
    return key;
}

} // namespace detail

struct EnumerationBounds {
    std::size_t functors = 1'000'000;
    std::size_t table = default_table_bound;
};

// Fun(domain, codomain): every functor as an object, every natural
// transformation as a morphism, vertical composition.
struct FunctorGroupoid {
    GroupoidRef groupoid;
    GroupoidRef domain;    // 𝕐
    GroupoidRef codomain;  // 𝕏
    std::vector<GroupoidFunctor> functors;              // per object
    std::vector<std::vector<MorphismId>> components;    // per morphism
    detail::VectorIndex functor_index;
    detail::VectorIndex transformation_index;  // key: source functor id, then components

    std::optional<ObjectId> find(const GroupoidFunctor& f) const {
        auto it = functor_index.find(detail::functor_key(f));
        if (it == functor_index.end()) return std::nullopt;
        return it->second;
    }

    std::optional<MorphismId> find_transformation(ObjectId source, const std::vector<MorphismId>& comps) const {
        std::vector<std::uint32_t> key{source};
        key.insert(key.end(), comps.begin(), comps.end());
        auto it = transformation_index.find(key);
        if (it == transformation_index.end()) return std::nullopt;
        return it->second;
    }

    NaturalTransformation transformation(MorphismId m) const {
        return {functors[groupoid->source(m)], functors[groupoid->target(m)], components[m]};
    }
};

namespace detail {

// Per-component data used to enumerate functors out of `y` by their values
// on a spanning tree and on automorphism-group generators.
struct ComponentFrame {
    ObjectId root;
    std::vector<ObjectId> members;
    AutomorphismGroup automorphisms;
};

struct DomainFrame {
    Components comps;
    std::vector<MorphismId> paths;
    std::vector<ComponentFrame> frames;
};

inline DomainFrame frame_of(const FiniteGroupoid& y) {
    DomainFrame d{pi0(y), {}, {}};
    d.paths = spanning_paths(y, d.comps);
    for (std::size_t c = 0; c < d.comps.count(); ++c)
        d.frames.push_back({d.comps.representative(c), d.comps.members[c], aut(y, d.comps.representative(c))});
    return d;
}

// Local functor data on one component: object images and morphism images
// for the component's members / morphisms.
struct LocalFunctor {
    std::vector<ObjectId> objects;     // indexed like frame.members
    std::vector<MorphismId> morphisms;  // indexed by position in `component_morphisms`
};

} // namespace detail

// Number of functors and size of the resulting groupoid, computed from the
// component structure without enumerating.
struct FunctorGroupoidEstimate {
    std::size_t functors = 0;
    std::size_t morphisms = 0;
    std::size_t table = 0;
};

inline FunctorGroupoidEstimate estimate_functor_groupoid(const FiniteGroupoid& y, const FiniteGroupoid& x) {
    auto frame = detail::frame_of(y);
    FunctorGroupoidEstimate e{1, 1, 1};
    std::vector<AutomorphismGroup> target_auts;
    for (ObjectId o = 0; o < x.object_count(); ++o) target_auts.push_back(aut(x, o));
    for (const auto& f : frame.frames) {
        std::size_t n = 0, m = 0, t = 0;
        for (ObjectId o = 0; o < x.object_count(); ++o) {
            std::size_t homs = count_homomorphisms(f.automorphisms.group, target_auts[o].group);
            std::size_t out = x.out(o).size();
            std::size_t k = f.members.size();
            n = detail::sat_add(n, detail::sat_mul(homs, detail::sat_pow(out, k - 1)));
            m = detail::sat_add(m, detail::sat_mul(homs, detail::sat_pow(out, 2 * k - 1)));
            t = detail::sat_add(t, detail::sat_mul(homs, detail::sat_pow(out, 3 * k - 1)));
        }
        e.functors = detail::sat_mul(e.functors, n);
        e.morphisms = detail::sat_mul(e.morphisms, m);
        e.table = detail::sat_mul(e.table, t);
    }
    return e;
}

// Enumerates Fun(y, x). Functors are listed component by component of y
// (first component most significant); within a component by target root
// object, then homomorphism on the root's automorphism group, then images of
// spanning-tree morphisms. Transformations are listed by source functor, then
// lexicographically by components.
inline FunctorGroupoid functor_groupoid(const GroupoidRef& y, const GroupoidRef& x, const EnumerationBounds& bounds = {}) {
    auto est = estimate_functor_groupoid(*y, *x);
    if (est.functors > bounds.functors) throw BoundExceeded("functor enumeration", bounds.functors, est.functors);
    if (est.table > bounds.table) throw BoundExceeded("functor groupoid composition table", bounds.table, est.table);

    auto frame = detail::frame_of(*y);
    std::vector<AutomorphismGroup> target_auts;
    for (ObjectId o = 0; o < x->object_count(); ++o) target_auts.push_back(aut(*x, o));
    std::vector<Element> element_of(x->morphism_count(), 0);
    for (const auto& a : target_auts)
        for (std::size_t e = 0; e < a.morphisms.size(); ++e) element_of[a.morphisms[e]] = static_cast<Element>(e);

    // morphisms of y grouped by component
    std::vector<std::vector<MorphismId>> comp_morphisms(frame.comps.count());
    for (MorphismId m = 0; m < y->morphism_count(); ++m)
        comp_morphisms[frame.comps.component_of[y->source(m)]].push_back(m);
    std::vector<std::size_t> member_pos(y->object_count());
    for (const auto& members : frame.comps.members)
        for (std::size_t i = 0; i < members.size(); ++i) member_pos[members[i]] = i;

    std::vector<std::vector<detail::LocalFunctor>> local(frame.comps.count());
    for (std::size_t c = 0; c < frame.frames.size(); ++c) {
        const auto& f = frame.frames[c];
        std::vector<Element> y_element(y->morphism_count(), 0);
        for (std::size_t e = 0; e < f.automorphisms.morphisms.size(); ++e)
            y_element[f.automorphisms.morphisms[e]] = static_cast<Element>(e);
        for (ObjectId root_image = 0; root_image < x->object_count(); ++root_image) {
            const auto& ta = target_auts[root_image];
            auto homs = enumerate_homomorphisms(f.automorphisms.group, ta.group);
            auto outs = x->out(root_image);
            const std::size_t k = f.members.size();
            for (const auto& phi : homs) {
                // odometer over images of spanning-tree paths for non-root members
                std::vector<std::size_t> pos(k, 0);
                for (;;) {
                    std::vector<MorphismId> path_image(k);
                    detail::LocalFunctor lf;
                    for (std::size_t i = 0; i < k; ++i) {
                        path_image[i] = i == 0 ? x->identity(root_image) : outs[pos[i]];
                        lf.objects.push_back(x->target(path_image[i]));
                    }
                    for (MorphismId m : comp_morphisms[c]) {
                        ObjectId a = y->source(m), b = y->target(m);
                        MorphismId loop = y->compose(y->inverse(frame.paths[b]), y->compose(m, frame.paths[a]));
                        MorphismId core = ta.morphisms[phi[y_element[loop]]];
                        MorphismId pa = path_image[member_pos[a]], pb = path_image[member_pos[b]];
                        lf.morphisms.push_back(x->compose(pb, x->compose(core, x->inverse(pa))));
                    }
                    local[c].push_back(std::move(lf));
                    std::size_t i = 1;
                    while (i < k && ++pos[i] == outs.size()) pos[i++] = 0;
                    if (i >= k) break;
                }
            }
        }
    }

    FunctorGroupoid result;
    result.domain = y;
    result.codomain = x;
    // product over components, first component most significant
    const std::size_t nc = frame.comps.count();
    const bool some_empty = std::any_of(local.begin(), local.end(), [](const auto& l) { return l.empty(); });
    if (nc == 0) {
        // the empty groupoid has exactly one functor out of it
        GroupoidFunctor F{y, x, {}, {}};
        result.functor_index.emplace(detail::functor_key(F), 0);
        result.functors.push_back(std::move(F));
    } else if (!some_empty) {
        std::vector<std::size_t> pick(nc, 0);
        for (bool more = true; more;) {
            GroupoidFunctor F{y, x, std::vector<ObjectId>(y->object_count()), std::vector<MorphismId>(y->morphism_count())};
            for (std::size_t c = 0; c < nc; ++c) {
                const auto& lf = local[c][pick[c]];
                for (std::size_t i = 0; i < frame.comps.members[c].size(); ++i) F.object_map[frame.comps.members[c][i]] = lf.objects[i];
                for (std::size_t j = 0; j < comp_morphisms[c].size(); ++j) F.morphism_map[comp_morphisms[c][j]] = lf.morphisms[j];
            }
            result.functor_index.emplace(detail::functor_key(F), static_cast<ObjectId>(result.functors.size()));
            result.functors.push_back(std::move(F));
            more = false;
            for (std::size_t c = nc; c-- > 0;) {
                if (++pick[c] < local[c].size()) {
                    more = true;
                    break;
                }
                pick[c] = 0;
            }
        }
    }

    // transformations: all component choices out of each source functor
    std::vector<MorphismRecord> mors;
    const std::size_t yo = y->object_count();
    for (ObjectId s = 0; s < result.functors.size(); ++s) {
        const auto& F = result.functors[s];
        std::vector<std::size_t> pos(yo, 0);
        for (;;) {
            std::vector<MorphismId> comps(yo);
            for (ObjectId o = 0; o < yo; ++o) comps[o] = x->out(F.object_map[o])[pos[o]];
            GroupoidFunctor G{y, x, std::vector<ObjectId>(yo), std::vector<MorphismId>(y->morphism_count())};
            for (ObjectId o = 0; o < yo; ++o) G.object_map[o] = x->target(comps[o]);
            for (MorphismId m = 0; m < y->morphism_count(); ++m)
                G.morphism_map[m] = x->compose(comps[y->target(m)], x->compose(F.morphism_map[m], x->inverse(comps[y->source(m)])));
            auto t = result.find(G);
            if (!t) throw VerificationFailure("transformation target is not an enumerated functor");
            std::vector<std::uint32_t> key{s};
            key.insert(key.end(), comps.begin(), comps.end());
            result.transformation_index.emplace(std::move(key), static_cast<MorphismId>(mors.size()));
            mors.push_back({s, *t});
            result.components.push_back(std::move(comps));
            std::size_t i = 0;
            while (i < yo && ++pos[i] == x->out(F.object_map[i]).size()) pos[i++] = 0;
            if (i >= yo) break;
        }
    }

    FiniteGroupoid::Builder b(result.functors.size(), mors, bounds.table);
    for (ObjectId s = 0; s < result.functors.size(); ++s) {
        std::vector<MorphismId> ids;
        for (ObjectId o : result.functors[s].object_map) ids.push_back(x->identity(o));
        b.set_identity(s, *result.find_transformation(s, ids));
    }
    for (MorphismId m = 0; m < mors.size(); ++m) {
        std::vector<MorphismId> inv;
        for (MorphismId c : result.components[m]) inv.push_back(x->inverse(c));
        b.set_inverse(m, *result.find_transformation(mors[m].target, inv));
    }
    b.compose_with([&](MorphismId after, MorphismId before) {
        std::vector<MorphismId> comps(yo);
        for (ObjectId o = 0; o < yo; ++o) comps[o] = x->compose(result.components[after][o], result.components[before][o]);
        return *result.find_transformation(mors[before].source, comps);
    });
    std::vector<std::string> ol, ml;
    for (ObjectId s = 0; s < result.functors.size(); ++s) ol.push_back("F" + std::to_string(s));
    for (MorphismId m = 0; m < mors.size(); ++m) ml.push_back("t" + std::to_string(m));
    b.set_labels(std::move(ol), std::move(ml));
    result.groupoid = share(std::move(b).build());
    return result;
}

// Restriction along u: 𝕐′ → 𝕐, i.e. F ↦ F∘u and η ↦ ηu.
inline GroupoidFunctor restriction(const GroupoidFunctor& u, const FunctorGroupoid& from, const FunctorGroupoid& to) {
    if (u.codomain != from.domain || u.domain != to.domain || from.codomain != to.codomain)
        throw InvalidInput("restriction: functor groupoids do not match u");
    GroupoidFunctor r{from.groupoid, to.groupoid, {}, {}};
    for (const auto& F : from.functors) {
        auto t = to.find(compose(F, u));
        if (!t) throw VerificationFailure("restriction: F∘u missing from the target functor groupoid");
        r.object_map.push_back(*t);
    }
    for (MorphismId m = 0; m < from.groupoid->morphism_count(); ++m) {
        std::vector<MorphismId> comps;
        for (ObjectId o : u.object_map) comps.push_back(from.components[m][o]);
        auto t = to.find_transformation(r.object_map[from.groupoid->source(m)], comps);
        if (!t) throw VerificationFailure("restriction: whiskered transformation missing");
        r.morphism_map.push_back(*t);
    }
    return r;
}

// Postcomposition with v: 𝕏 → 𝕏′.
inline GroupoidFunctor postcomposition(const GroupoidFunctor& v, const FunctorGroupoid& from, const FunctorGroupoid& to) {
    if (v.domain != from.codomain || v.codomain != to.codomain || from.domain != to.domain)
        throw InvalidInput("postcomposition: functor groupoids do not match v");
    GroupoidFunctor r{from.groupoid, to.groupoid, {}, {}};
    for (const auto& F : from.functors) {
        auto t = to.find(compose(v, F));
        if (!t) throw VerificationFailure("postcomposition: v∘F missing from the target functor groupoid");
        r.object_map.push_back(*t);
    }
    for (MorphismId m = 0; m < from.groupoid->morphism_count(); ++m) {
        std::vector<MorphismId> comps;
        for (MorphismId c : from.components[m]) comps.push_back(v.on_morphism(c));
        auto t = to.find_transformation(r.object_map[from.groupoid->source(m)], comps);
        if (!t) throw VerificationFailure("postcomposition: whiskered transformation missing");
        r.morphism_map.push_back(*t);
    }
    return r;
}

// Evaluation at an object of the domain: F ↦ F(o), η ↦ η_o.
inline GroupoidFunctor evaluation(const FunctorGroupoid& fun, ObjectId o) {
    GroupoidFunctor ev{fun.groupoid, fun.codomain, {}, {}};
    for (const auto& F : fun.functors) ev.object_map.push_back(F.object_map[o]);
    for (const auto& c : fun.components) ev.morphism_map.push_back(c[o]);
    return ev;
}

// Fun(z×y, x) → Fun(z, Fun(y, x)) together with its equivalence witness.
struct ExponentialCheck {
    FunctorGroupoid uncurried;   // Fun(z×y, x)
    FunctorGroupoid inner;       // Fun(y, x)
    FunctorGroupoid curried;     // Fun(z, Fun(y, x))
    GroupoidFunctor transpose;   // uncurried → curried
    EquivalenceWitness witness;
};

inline ExponentialCheck exponential_check(const GroupoidRef& z, const GroupoidRef& y, const GroupoidRef& x,
                                          const EnumerationBounds& bounds = {}) {
    auto zy = share(product(*z, *y));
    auto inner = functor_groupoid(y, x, bounds);
    auto curried = functor_groupoid(z, inner.groupoid, bounds);
    auto uncurried = functor_groupoid(zy, x, bounds);
    const std::size_t yo = y->object_count(), ym = y->morphism_count();

    auto slice = [&](const GroupoidFunctor& F, ObjectId c) {
        GroupoidFunctor s{y, x, {}, {}};
        for (ObjectId o = 0; o < yo; ++o) s.object_map.push_back(F.object_map[c * yo + o]);
        for (MorphismId n = 0; n < ym; ++n) s.morphism_map.push_back(F.morphism_map[z->identity(c) * ym + n]);
        auto id = inner.find(s);
        if (!id) throw VerificationFailure("exponential: slice functor missing");
        return *id;
    };

    GroupoidFunctor phi{uncurried.groupoid, curried.groupoid, {}, {}};
    for (const auto& F : uncurried.functors) {
        GroupoidFunctor t{z, inner.groupoid, {}, {}};
        for (ObjectId c = 0; c < z->object_count(); ++c) t.object_map.push_back(slice(F, c));
        for (MorphismId m = 0; m < z->morphism_count(); ++m) {
            std::vector<MorphismId> comps;
            for (ObjectId o = 0; o < yo; ++o) comps.push_back(F.morphism_map[m * ym + y->identity(o)]);
            auto id = inner.find_transformation(t.object_map[z->source(m)], comps);
            if (!id) throw VerificationFailure("exponential: transposed transformation missing");
            t.morphism_map.push_back(*id);
        }
        auto id = curried.find(t);
        if (!id) throw VerificationFailure("exponential: transposed functor missing");
        phi.object_map.push_back(*id);
    }
    for (MorphismId m = 0; m < uncurried.groupoid->morphism_count(); ++m) {
        ObjectId src = uncurried.groupoid->source(m);
        const auto& srcF = curried.functors[phi.object_map[src]];
        std::vector<MorphismId> comps;
        for (ObjectId c = 0; c < z->object_count(); ++c) {
            std::vector<MorphismId> inner_comps;
            for (ObjectId o = 0; o < yo; ++o) inner_comps.push_back(uncurried.components[m][c * yo + o]);
            auto id = inner.find_transformation(srcF.object_map[c], inner_comps);
            if (!id) throw VerificationFailure("exponential: component transformation missing");
            comps.push_back(*id);
        }
        auto id = curried.find_transformation(phi.object_map[src], comps);
        if (!id) throw VerificationFailure("exponential: transposed morphism missing");
        phi.morphism_map.push_back(*id);
    }
    std::string why;
    auto w = certify_equivalence(phi, &why);
    if (!w) throw VerificationFailure("exponential law transpose is not an equivalence: " + why);
    return {std::move(uncurried), std::move(inner), std::move(curried), std::move(phi), std::move(*w)};
}

// The iso-comma (2-fiber product) of f: 𝔸 → ℂ and g: 𝔹 → ℂ. Objects are
// (a, b, φ: f a → g b); morphisms (α, β) with φ′∘f(α) = g(β)∘φ.
struct IsoComma {
    GroupoidRef groupoid;
    GroupoidFunctor f, g;
    struct Object {
        ObjectId a, b;
        MorphismId phi;
    };
    std::vector<Object> objects;
    std::vector<std::pair<MorphismId, MorphismId>> morphisms;
    GroupoidFunctor first, second;  // projections to 𝔸, 𝔹
    NaturalTransformation cell;     // f∘first ⇒ g∘second
    std::map<std::tuple<ObjectId, ObjectId, MorphismId>, ObjectId> index;

    std::optional<ObjectId> find(ObjectId a, ObjectId b, MorphismId phi) const {
        auto it = index.find({a, b, phi});
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
};

inline IsoComma iso_comma(const GroupoidFunctor& f, const GroupoidFunctor& g, std::size_t table_bound = default_table_bound) {
    if (f.codomain != g.codomain) throw InvalidInput("iso_comma: legs have different codomains");
    const auto& A = *f.domain;
    const auto& B = *g.domain;
    const auto& C = *f.codomain;
    IsoComma r;
    r.f = f;
    r.g = g;
    for (ObjectId a = 0; a < A.object_count(); ++a)
        for (ObjectId b = 0; b < B.object_count(); ++b)
            for (MorphismId phi : C.hom(f.on_object(a), g.on_object(b))) {
                r.index.emplace(std::tuple{a, b, phi}, static_cast<ObjectId>(r.objects.size()));
                r.objects.push_back({a, b, phi});
            }
    std::vector<MorphismRecord> mors;
    std::vector<std::size_t> base;
    for (ObjectId s = 0; s < r.objects.size(); ++s) {
        base.push_back(mors.size());
        const auto& o = r.objects[s];
        for (MorphismId alpha : A.out(o.a))
            for (MorphismId beta : B.out(o.b)) {
                MorphismId phi2 = C.compose(g.on_morphism(beta), C.compose(o.phi, C.inverse(f.on_morphism(alpha))));
                auto t = r.find(A.target(alpha), B.target(beta), phi2);
                if (!t) throw VerificationFailure("iso_comma: target object missing");
                mors.push_back({s, *t});
                r.morphisms.emplace_back(alpha, beta);
            }
    }
    auto morphism_id = [&](ObjectId s, MorphismId alpha, MorphismId beta) {
        return static_cast<MorphismId>(base[s] + A.out_position(alpha) * B.out(r.objects[s].b).size() + B.out_position(beta));
    };
    FiniteGroupoid::Builder builder(r.objects.size(), mors, table_bound);
    for (ObjectId s = 0; s < r.objects.size(); ++s)
        builder.set_identity(s, morphism_id(s, A.identity(r.objects[s].a), B.identity(r.objects[s].b)));
    for (MorphismId m = 0; m < mors.size(); ++m)
        builder.set_inverse(m, morphism_id(mors[m].target, A.inverse(r.morphisms[m].first), B.inverse(r.morphisms[m].second)));
    builder.compose_with([&](MorphismId after, MorphismId before) {
        return morphism_id(mors[before].source, A.compose(r.morphisms[after].first, r.morphisms[before].first),
                           B.compose(r.morphisms[after].second, r.morphisms[before].second));
    });
    std::vector<std::string> ol;
    for (const auto& o : r.objects) ol.push_back("(" + A.object_label(o.a) + "," + B.object_label(o.b) + "," + C.morphism_label(o.phi) + ")");
    std::vector<std::string> ml;
    for (const auto& [alpha, beta] : r.morphisms) ml.push_back("(" + A.morphism_label(alpha) + "," + B.morphism_label(beta) + ")");
    builder.set_labels(std::move(ol), std::move(ml));
    r.groupoid = share(std::move(builder).build());

    r.first = {r.groupoid, f.domain, {}, {}};
    r.second = {r.groupoid, g.domain, {}, {}};
    for (const auto& o : r.objects) {
        r.first.object_map.push_back(o.a);
        r.second.object_map.push_back(o.b);
    }
    for (const auto& [alpha, beta] : r.morphisms) {
        r.first.morphism_map.push_back(alpha);
        r.second.morphism_map.push_back(beta);
    }
    r.cell = {compose(f, r.first), compose(g, r.second), {}};
    for (const auto& o : r.objects) r.cell.components.push_back(o.phi);
    return r;
}

// Strict pullback: objects (a, b) with f a = g b, morphisms (α, β) with
// f α = g β.
struct StrictPullback {
    GroupoidRef groupoid;
    std::vector<std::pair<ObjectId, ObjectId>> objects;
    std::vector<std::pair<MorphismId, MorphismId>> morphisms;
    GroupoidFunctor first, second;
};

inline StrictPullback strict_pullback(const GroupoidFunctor& f, const GroupoidFunctor& g) {
    if (f.codomain != g.codomain) throw InvalidInput("strict_pullback: legs have different codomains");
    const auto& A = *f.domain;
    const auto& B = *g.domain;
    StrictPullback r;
    std::map<std::pair<ObjectId, ObjectId>, ObjectId> obj_index;
    for (ObjectId a = 0; a < A.object_count(); ++a)
        for (ObjectId b = 0; b < B.object_count(); ++b)
            if (f.on_object(a) == g.on_object(b)) {
                obj_index[{a, b}] = static_cast<ObjectId>(r.objects.size());
                r.objects.emplace_back(a, b);
            }
    std::map<std::pair<MorphismId, MorphismId>, MorphismId> mor_index;
    std::vector<MorphismRecord> mors;
    for (const auto& [a, b] : r.objects)
        for (MorphismId alpha : A.out(a))
            for (MorphismId beta : B.out(b))
                if (f.on_morphism(alpha) == g.on_morphism(beta)) {
                    mor_index[{alpha, beta}] = static_cast<MorphismId>(mors.size());
                    mors.push_back({obj_index.at({a, b}), obj_index.at({A.target(alpha), B.target(beta)})});
                    r.morphisms.emplace_back(alpha, beta);
                }
    FiniteGroupoid::Builder builder(r.objects.size(), mors);
    for (ObjectId s = 0; s < r.objects.size(); ++s)
        builder.set_identity(s, mor_index.at({A.identity(r.objects[s].first), B.identity(r.objects[s].second)}));
    for (MorphismId m = 0; m < mors.size(); ++m)
        builder.set_inverse(m, mor_index.at({A.inverse(r.morphisms[m].first), B.inverse(r.morphisms[m].second)}));
    builder.compose_with([&](MorphismId after, MorphismId before) {
        return mor_index.at({A.compose(r.morphisms[after].first, r.morphisms[before].first),
                             B.compose(r.morphisms[after].second, r.morphisms[before].second)});
    });
    r.groupoid = share(std::move(builder).build());
    r.first = {r.groupoid, f.domain, {}, {}};
    r.second = {r.groupoid, g.domain, {}, {}};
    for (const auto& [a, b] : r.objects) {
        r.first.object_map.push_back(a);
        r.second.object_map.push_back(b);
    }
    for (const auto& [alpha, beta] : r.morphisms) {
        r.first.morphism_map.push_back(alpha);
        r.second.morphism_map.push_back(beta);
    }
    return r;
}

} // namespace mapstack
