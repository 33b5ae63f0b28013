#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "functor.hpp"
#include "groupoid.hpp"

namespace mapstack {

using PointSet = std::uint64_t;

// Finite space given by its specialization preorder. Open sets are the
// down-sets: y ∈ U and x ≤ y imply x ∈ U.
class FiniteSpace {
public:
    FiniteSpace() = default;

    // `below` holds pairs (x, y) with x ≤ y; the preorder is their
    // reflexive-transitive closure.
    FiniteSpace(std::vector<std::string> labels, const std::vector<std::pair<std::size_t, std::size_t>>& below)
        : labels_(std::move(labels)), down_(labels_.size()) {
        if (labels_.size() > 64) throw InvalidInput("finite space: at most 64 points");
        for (std::size_t x = 0; x < size(); ++x) down_[x] = bit(x);
        for (auto [x, y] : below) {
            if (x >= size() || y >= size()) throw InvalidInput("finite space: relation names an undeclared point");
            down_[y] |= bit(x);
        }
        // transitive closure on bitmasks
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t y = 0; y < size(); ++y) {
                PointSet d = down_[y];
                for (std::size_t x = 0; x < size(); ++x)
                    if ((d >> x) & 1) d |= down_[x];
                if (d != down_[y]) down_[y] = d, changed = true;
            }
        }
    }

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t x) const { return labels_[x]; }
    const std::vector<std::string>& labels() const { return labels_; }
    PointSet all() const { return size() == 64 ? ~PointSet{0} : (PointSet{1} << size()) - 1; }
    static PointSet bit(std::size_t x) { return PointSet{1} << x; }

    bool leq(std::size_t x, std::size_t y) const { return (down_[y] >> x) & 1; }
    PointSet minimal_open(std::size_t x) const { return down_[x]; }

    bool is_open(PointSet u) const {
        for (std::size_t y = 0; y < size(); ++y)
            if (((u >> y) & 1) && (down_[y] & ~u)) return false;
        return true;
    }

    // Points with nothing strictly above them.
    std::vector<std::size_t> maximal_points() const {
        std::vector<std::size_t> out;
        for (std::size_t x = 0; x < size(); ++x) {
            bool top = true;
            for (std::size_t y = 0; y < size() && top; ++y)
                if (leq(x, y) && !leq(y, x)) top = false;
            if (top) out.push_back(x);
        }
        return out;
    }

    // Nonempty opens in increasing bitmask order.
    std::vector<PointSet> opens(std::size_t bound = 4096) const {
        std::set<PointSet> seen{0};
        std::vector<PointSet> frontier{0};
        while (!frontier.empty()) {
            std::vector<PointSet> next;
            for (PointSet u : frontier)
                for (std::size_t x = 0; x < size(); ++x) {
                    PointSet v = u | down_[x];
                    if (seen.insert(v).second) {
                        if (seen.size() > bound + 1) throw BoundExceeded("open set enumeration", bound);
                        next.push_back(v);
                    }
                }
            frontier = std::move(next);
        }
        seen.erase(0);
        return {seen.begin(), seen.end()};
    }

    // Components of the comparability graph restricted to s.
    std::vector<PointSet> components(PointSet s) const {
        std::vector<PointSet> out;
        PointSet left = s;
        while (left) {
            PointSet comp = left & (~left + 1);
            for (PointSet grown = 0; grown != comp;) {
                grown = comp;
                for (std::size_t x = 0; x < size(); ++x) {
                    if (!((comp >> x) & 1)) continue;
                    for (std::size_t y = 0; y < size(); ++y)
                        if (((s >> y) & 1) && (leq(x, y) || leq(y, x))) comp |= bit(y);
                }
            }
            out.push_back(comp);
            left &= ~comp;
        }
        return out;
    }

    std::string format(PointSet s) const {
        std::string out = "{";
        for (std::size_t x = 0; x < size(); ++x)
            if ((s >> x) & 1) out += (out.size() > 1 ? "," : "") + labels_[x];
        return out + "}";
    }

private:
    std::vector<std::string> labels_;
    std::vector<PointSet> down_;  // down_[y] = {x : x ≤ y}
};

// Four points a, b below c, d: a finite model of the circle.
inline FiniteSpace pseudo_circle() { return FiniteSpace({"a", "b", "c", "d"}, {{0, 2}, {1, 2}, {0, 3}, {1, 3}}); }

inline FiniteSpace discrete_space(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i + 1));
    return FiniteSpace(std::move(labels), {});
}

// Opens listed in increasing bitmask order with no repeats.
struct OpenCover {
    std::vector<PointSet> sets;
    friend auto operator<=>(const OpenCover&, const OpenCover&) = default;
};

inline OpenCover make_cover(const FiniteSpace& k, std::vector<PointSet> sets) {
    PointSet all = 0;
    for (PointSet u : sets) {
        if (u & ~k.all()) throw InvalidInput("cover names points outside the space");
        if (!k.is_open(u)) throw InvalidInput("cover member " + k.format(u) + " is not open");
        all |= u;
    }
    if (all != k.all()) throw InvalidInput("cover does not cover the space");
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    return {std::move(sets)};
}

// Minimal neighborhoods of the maximal points. It refines every open cover,
// since an open containing y contains everything below y.
inline OpenCover minimal_cover(const FiniteSpace& k) {
    std::vector<PointSet> sets;
    for (std::size_t x : k.maximal_points()) sets.push_back(k.minimal_open(x));
    return make_cover(k, std::move(sets));
}

inline OpenCover whole_space_cover(const FiniteSpace& k) { return make_cover(k, {k.all()}); }

// All covers by at most max_size distinct nonempty opens, plus the minimal
// cover. Sorted by size, then lexicographically.
inline std::vector<OpenCover> enumerate_covers(const FiniteSpace& k, std::size_t max_size = 4,
                                               std::size_t bound = 100'000) {
    auto opens = k.opens();
    std::set<OpenCover> found;
    std::vector<PointSet> chosen;
    std::size_t visited = 0;
    auto dfs = [&](auto&& self, std::size_t from, PointSet covered) -> void {
        if (++visited > bound) throw BoundExceeded("cover enumeration", bound);
        if (covered == k.all() && !chosen.empty()) found.insert({chosen});
        if (chosen.size() == max_size) return;
        for (std::size_t i = from; i < opens.size(); ++i) {
            chosen.push_back(opens[i]);
            self(self, i + 1, covered | opens[i]);
            chosen.pop_back();
        }
    };
    dfs(dfs, 0, 0);
    if (k.size() == 0) found.insert(OpenCover{});
    found.insert(minimal_cover(k));
    std::vector<OpenCover> out(found.begin(), found.end());
    std::stable_sort(out.begin(), out.end(), [](const OpenCover& a, const OpenCover& b) { return a.sets.size() < b.sets.size(); });
    return out;
}

// Pair groupoid over the cover: objects (i, p) with p ∈ U_i, one morphism
// (i, j, p): (i, p) -> (j, p) for p ∈ U_i ∩ U_j.
struct CechGroupoid {
    FiniteSpace space;
    OpenCover cover;
    GroupoidRef groupoid;
    std::vector<std::pair<std::size_t, std::size_t>> objects;  // (i, p)
    struct Arrow {
        std::size_t i, j, p;
    };
    std::vector<Arrow> morphisms;

    // Pieces and their order-connected components. Continuous maps into a
    // discrete target are constant on each component.
    std::vector<std::vector<PointSet>> object_components;  // per i
    std::vector<std::size_t> object_base;                  // first global id per i
    std::size_t object_component_count = 0;
    struct PairPiece {
        std::size_t i, j;
        std::vector<PointSet> components;
        std::size_t base;
    };
    std::vector<PairPiece> pairs;  // i < j with nonempty overlap
    std::size_t pair_component_count = 0;
    // per triple-overlap component: the three pair components (ij, jk, ik)
    struct TripleComponent {
        std::size_t ij, jk, ik;
    };
    std::vector<TripleComponent> triples;

    std::size_t opens() const { return cover.sets.size(); }

    std::size_t object_component(std::size_t i, std::size_t p) const {
        const auto& comps = object_components[i];
        for (std::size_t c = 0; c < comps.size(); ++c)
            if ((comps[c] >> p) & 1) return object_base[i] + c;
        throw InvalidInput("point not in cover member");
    }
    std::optional<std::size_t> pair_index(std::size_t i, std::size_t j) const {
        for (std::size_t q = 0; q < pairs.size(); ++q)
            if (pairs[q].i == i && pairs[q].j == j) return q;
        return std::nullopt;
    }
    std::size_t pair_component(std::size_t i, std::size_t j, std::size_t p) const {
        const auto& piece = pairs.at(*pair_index(i, j));
        for (std::size_t c = 0; c < piece.components.size(); ++c)
            if ((piece.components[c] >> p) & 1) return piece.base + c;
        throw InvalidInput("point not in overlap");
    }
    // endpoints of a pair component as object components
    std::pair<std::size_t, std::size_t> pair_ends(std::size_t component) const {
        for (const auto& piece : pairs)
            if (component >= piece.base && component < piece.base + piece.components.size()) {
                auto p = static_cast<std::size_t>(std::countr_zero(piece.components[component - piece.base]));
                return {object_component(piece.i, p), object_component(piece.j, p)};
            }
        throw InvalidInput("pair component out of range");
    }
};

inline CechGroupoid cech_groupoid(const FiniteSpace& k, const OpenCover& alpha) {
    CechGroupoid c;
    c.space = k;
    c.cover = make_cover(k, alpha.sets);
    const auto& U = c.cover.sets;
    const std::size_t m = U.size();
    std::map<std::pair<std::size_t, std::size_t>, ObjectId> obj;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t p = 0; p < k.size(); ++p)
            if ((U[i] >> p) & 1) {
                obj[{i, p}] = static_cast<ObjectId>(c.objects.size());
                c.objects.emplace_back(i, p);
            }
    std::vector<MorphismRecord> recs;
    std::map<std::tuple<std::size_t, std::size_t, std::size_t>, MorphismId> mor;
    for (std::size_t p = 0; p < k.size(); ++p)
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j)
                if (((U[i] >> p) & 1) && ((U[j] >> p) & 1)) {
                    mor[{i, j, p}] = static_cast<MorphismId>(recs.size());
                    recs.push_back({obj.at({i, p}), obj.at({j, p})});
                    c.morphisms.push_back({i, j, p});
                }
    FiniteGroupoid::Builder b(c.objects.size(), recs);
    for (const auto& [i, p] : c.objects) b.set_identity(obj.at({i, p}), mor.at({i, i, p}));
    for (MorphismId a = 0; a < recs.size(); ++a) {
        const auto& [i, j, p] = c.morphisms[a];
        b.set_inverse(a, mor.at({j, i, p}));
    }
    b.compose_with([&](MorphismId after, MorphismId before) {
        const auto& f = c.morphisms[before];
        return mor.at({f.i, c.morphisms[after].j, f.p});
    });
    std::vector<std::string> ol, ml;
    for (const auto& [i, p] : c.objects) ol.push_back("U" + std::to_string(i) + ":" + k.label(p));
    for (const auto& a : c.morphisms) ml.push_back("U" + std::to_string(a.i) + "U" + std::to_string(a.j) + ":" + k.label(a.p));
    b.set_labels(std::move(ol), std::move(ml));
    c.groupoid = share(std::move(b).build());

    for (std::size_t i = 0; i < m; ++i) {
        c.object_base.push_back(c.object_component_count);
        c.object_components.push_back(k.components(U[i]));
        c.object_component_count += c.object_components.back().size();
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            PointSet both = U[i] & U[j];
            if (!both) continue;
            c.pairs.push_back({i, j, k.components(both), c.pair_component_count});
            c.pair_component_count += c.pairs.back().components.size();
        }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t l = j + 1; l < m; ++l)
                for (PointSet comp : k.components(U[i] & U[j] & U[l])) {
                    auto p = static_cast<std::size_t>(std::countr_zero(comp));
                    c.triples.push_back({c.pair_component(i, j, p), c.pair_component(j, l, p), c.pair_component(i, l, p)});
                }
    return c;
}

// A continuous functor from a Čech groupoid into a groupoid with the discrete
// topology: one object per object component, one morphism per overlap
// component of U_i ∩ U_j (i < j). Diagonal pieces are identities and the
// reversed pieces are inverses.
struct CechCocycle {
    std::vector<ObjectId> objects;
    std::vector<MorphismId> morphisms;
    friend auto operator<=>(const CechCocycle&, const CechCocycle&) = default;
};

// The morphism assigned to the arrow (i, j, p).
inline MorphismId cocycle_value(const CechGroupoid& c, const FiniteGroupoid& x, const CechCocycle& z, std::size_t i,
                                std::size_t j, std::size_t p) {
    if (i == j) return x.identity(z.objects[c.object_component(i, p)]);
    if (i < j) return z.morphisms[c.pair_component(i, j, p)];
    return x.inverse(z.morphisms[c.pair_component(j, i, p)]);
}

inline GroupoidFunctor cocycle_functor(const CechGroupoid& c, const GroupoidRef& x, const CechCocycle& z) {
    GroupoidFunctor f{c.groupoid, x, {}, {}};
    for (const auto& [i, p] : c.objects) f.object_map.push_back(z.objects[c.object_component(i, p)]);
    for (const auto& a : c.morphisms) f.morphism_map.push_back(cocycle_value(c, *x, z, a.i, a.j, a.p));
    return f;
}

inline bool satisfies_cocycle_condition(const CechGroupoid& c, const FiniteGroupoid& x, const CechCocycle& z) {
    for (std::size_t q = 0; q < c.pair_component_count; ++q) {
        auto [s, t] = c.pair_ends(q);
        if (x.source(z.morphisms[q]) != z.objects[s] || x.target(z.morphisms[q]) != z.objects[t]) return false;
    }
    for (const auto& t : c.triples)
        if (x.compose(z.morphisms[t.jk], z.morphisms[t.ij]) != z.morphisms[t.ik]) return false;
    return true;
}

// Every continuous functor, in lexicographic order of (objects, morphisms).
inline std::vector<CechCocycle> hom_space(const CechGroupoid& c, const FiniteGroupoid& x, std::size_t bound = 1'000'000) {
    std::vector<CechCocycle> out;
    const std::size_t no = c.object_component_count, np = c.pair_component_count;
    std::vector<std::pair<std::size_t, std::size_t>> ends(np);
    for (std::size_t q = 0; q < np; ++q) ends[q] = c.pair_ends(q);
    // triple checks fire once their last pair component is assigned
    std::vector<std::vector<const CechGroupoid::TripleComponent*>> due(np);
    for (const auto& t : c.triples) due[std::max({t.ij, t.jk, t.ik})].push_back(&t);

    CechCocycle z{std::vector<ObjectId>(no), std::vector<MorphismId>(np)};
    auto assign_pairs = [&](auto&& self, std::size_t q) -> void {
        if (q == np) {
            if (out.size() == bound) throw BoundExceeded("cocycle enumeration", bound);
            out.push_back(z);
            return;
        }
        for (MorphismId g : x.hom(z.objects[ends[q].first], z.objects[ends[q].second])) {
            z.morphisms[q] = g;
            bool ok = true;
            for (const auto* t : due[q])
                if (x.compose(z.morphisms[t->jk], z.morphisms[t->ij]) != z.morphisms[t->ik]) {
                    ok = false;
                    break;
                }
            if (ok) self(self, q + 1);
        }
    };
    auto assign_objects = [&](auto&& self, std::size_t o) -> void {
        if (o == no) return assign_pairs(assign_pairs, 0);
        for (ObjectId v = 0; v < x.object_count(); ++v) {
            z.objects[o] = v;
            self(self, o + 1);
        }
    };
    assign_objects(assign_objects, 0);
    return out;
}

// Least cocycle naturally isomorphic to z over the same cover. A continuous
// transformation picks h_c: z(c) -> w(c) per object component, and then
// w(ij) = h_j ∘ z(ij) ∘ h_i⁻¹.
inline CechCocycle gauge_minimum(const CechGroupoid& c, const FiniteGroupoid& x, const CechCocycle& z,
                                 std::size_t bound = 1'000'000) {
    const std::size_t no = c.object_component_count;
    std::size_t total = 1;
    for (std::size_t o = 0; o < no; ++o) {
        total *= x.out(z.objects[o]).size();
        if (total > bound) throw BoundExceeded("gauge orbit enumeration", bound, total);
    }
    std::vector<std::pair<std::size_t, std::size_t>> ends(c.pair_component_count);
    for (std::size_t q = 0; q < ends.size(); ++q) ends[q] = c.pair_ends(q);
    std::vector<MorphismId> h(no);
    CechCocycle best = z, w = z;
    auto rec = [&](auto&& self, std::size_t o) -> void {
        if (o == no) {
            for (std::size_t q = 0; q < ends.size(); ++q)
                w.morphisms[q] = x.compose(h[ends[q].second], x.compose(z.morphisms[q], x.inverse(h[ends[q].first])));
            if (w < best) best = w;
            return;
        }
        for (MorphismId m : x.out(z.objects[o])) {
            h[o] = m;
            w.objects[o] = x.target(m);
            self(self, o + 1);
        }
    };
    rec(rec, 0);
    return best;
}

// Refinement map: each member of `fine` sent to the first member of
// `coarse` containing it.
inline std::optional<std::vector<std::size_t>> refinement(const OpenCover& fine, const OpenCover& coarse) {
    std::vector<std::size_t> tau;
    for (PointSet v : fine.sets) {
        std::size_t i = 0;
        while (i < coarse.sets.size() && (v & ~coarse.sets[i])) ++i;
        if (i == coarse.sets.size()) return std::nullopt;
        tau.push_back(i);
    }
    return tau;
}

// Pullback of a cocycle on `coarse` along the refinement tau: fine -> coarse.
inline CechCocycle pull_back(const CechGroupoid& fine, const CechGroupoid& coarse, const std::vector<std::size_t>& tau,
                             const FiniteGroupoid& x, const CechCocycle& z) {
    CechCocycle w;
    for (std::size_t i = 0; i < fine.opens(); ++i)
        for (PointSet comp : fine.object_components[i]) {
            auto p = static_cast<std::size_t>(std::countr_zero(comp));
            w.objects.push_back(z.objects[coarse.object_component(tau[i], p)]);
        }
    for (const auto& piece : fine.pairs)
        for (PointSet comp : piece.components) {
            auto p = static_cast<std::size_t>(std::countr_zero(comp));
            w.morphisms.push_back(cocycle_value(coarse, x, z, tau[piece.i], tau[piece.j], p));
        }
    return w;
}

struct HsClass {
    CechCocycle representative;     // on the minimal cover, least in its gauge orbit
    std::vector<std::size_t> covers;  // enumerated covers with a cocycle in this class
};

// Hilsum-Skandalis morphisms k -> x: cocycles over every enumerated cover,
// identified by natural isomorphism after pulling back to the minimal cover,
// which refines all of them.
struct HsClassification {
    std::vector<OpenCover> covers;
    std::size_t minimal = 0;  // index of the minimal cover
    std::size_t whole = SIZE_MAX;  // index of {K}, if enumerated
    CechGroupoid refined;  // Čech groupoid of the minimal cover
    std::vector<std::size_t> cocycle_counts;  // per cover
    std::vector<HsClass> classes;
};

struct CechBounds {
    std::size_t max_cover_size = 4;
    std::size_t covers = 100'000;
    std::size_t cocycles = 1'000'000;
    std::size_t gauge = 1'000'000;
};

inline HsClassification classify_hs(const FiniteSpace& k, const FiniteGroupoid& x, const CechBounds& bounds = {}) {
    HsClassification r;
    r.covers = enumerate_covers(k, bounds.max_cover_size, bounds.covers);
    auto min_cover = minimal_cover(k);
    for (std::size_t i = 0; i < r.covers.size(); ++i) {
        if (r.covers[i] == min_cover) r.minimal = i;
        if (r.covers[i].sets == std::vector<PointSet>{k.all()}) r.whole = i;
    }
    r.refined = cech_groupoid(k, min_cover);
    std::map<CechCocycle, std::size_t> class_of;
    for (std::size_t i = 0; i < r.covers.size(); ++i) {
        auto c = cech_groupoid(k, r.covers[i]);
        auto tau = refinement(min_cover, r.covers[i]);
        if (!tau) throw VerificationFailure("minimal cover does not refine " + std::to_string(i));
        auto zs = hom_space(c, x, bounds.cocycles);
        r.cocycle_counts.push_back(zs.size());
        for (const auto& z : zs) {
            if (!satisfies_cocycle_condition(c, x, z)) throw VerificationFailure("enumerated cocycle fails the cocycle condition");
            auto w = pull_back(r.refined, c, *tau, x, z);
            if (!satisfies_cocycle_condition(r.refined, x, w)) throw VerificationFailure("pulled-back cocycle fails the cocycle condition");
            auto key = gauge_minimum(r.refined, x, w, bounds.gauge);
            auto [it, fresh] = class_of.try_emplace(key, r.classes.size());
            if (fresh) r.classes.push_back({key, {}});
            auto& hits = r.classes[it->second].covers;
            if (hits.empty() || hits.back() != i) hits.push_back(i);
        }
    }
    std::sort(r.classes.begin(), r.classes.end(),
              [](const HsClass& a, const HsClass& b) { return a.representative < b.representative; });
    return r;
}

struct EpimorphismReport {
    std::size_t classes = 0;
    bool every_class_hit = false;
    bool minimal_cover_hits_all = false;
    std::size_t whole_space_hits = 0;     // classes with a cocycle on {K}
    std::size_t whole_space_expected = 0;  // |π₀(x)|^(components of K)

    bool ok() const { return every_class_hit && minimal_cover_hits_all && whole_space_hits == whole_space_expected; }
};

// Every class is realized on some enumerated cover. The minimal cover refines
// all covers, so it must realize every class. {K} realizes exactly the
// classes of cocycles constant over K's components.
inline EpimorphismReport atlas_epimorphism_check(const FiniteSpace& k, const FiniteGroupoid& x, const CechBounds& bounds = {}) {
    auto r = classify_hs(k, x, bounds);
    EpimorphismReport e;
    e.classes = r.classes.size();
    e.every_class_hit = std::all_of(r.classes.begin(), r.classes.end(), [](const HsClass& c) { return !c.covers.empty(); });
    e.minimal_cover_hits_all = std::all_of(r.classes.begin(), r.classes.end(), [&](const HsClass& c) {
        return std::find(c.covers.begin(), c.covers.end(), r.minimal) != c.covers.end();
    });
    if (r.whole != SIZE_MAX) {
        for (const auto& c : r.classes)
            if (std::find(c.covers.begin(), c.covers.end(), r.whole) != c.covers.end()) ++e.whole_space_hits;
        // on {K} a cocycle is an object per component of K, up to isomorphism
        std::size_t comps = k.components(k.all()).size(), objects = pi0(x).count();
        e.whole_space_expected = 1;
        for (std::size_t i = 0; i < comps; ++i) e.whole_space_expected *= objects;
    }
    return e;
}

} // namespace mapstack
