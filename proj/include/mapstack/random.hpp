#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "groupoid.hpp"

namespace mapstack {

// Seeded generator for property corpora. Uses raw engine output only, so a
// seed reproduces the same corpus on every standard library.
class CorpusRng {
public:
    explicit CorpusRng(std::uint64_t seed) : engine_(seed) {}

    std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(engine_() % n); }
    bool coin() { return (engine_() & 1u) != 0; }

    template <class T>
    const T& pick(const std::vector<T>& v) { return v[below(v.size())]; }

private:
    std::mt19937_64 engine_;
};

// Renumbers objects and morphisms: new id of object o is object_perm[o].
inline FiniteGroupoid relabel(const FiniteGroupoid& g, const std::vector<ObjectId>& object_perm,
                              const std::vector<MorphismId>& morphism_perm) {
    std::vector<MorphismRecord> mors(g.morphism_count());
    std::vector<std::string> ol(g.object_count()), ml(g.morphism_count());
    for (MorphismId m = 0; m < g.morphism_count(); ++m) {
        mors[morphism_perm[m]] = {object_perm[g.source(m)], object_perm[g.target(m)]};
        ml[morphism_perm[m]] = g.morphism_label(m);
    }
    for (ObjectId o = 0; o < g.object_count(); ++o) ol[object_perm[o]] = g.object_label(o);
    FiniteGroupoid::Builder b(g.object_count(), std::move(mors));
    for (ObjectId o = 0; o < g.object_count(); ++o) b.set_identity(object_perm[o], morphism_perm[g.identity(o)]);
    for (MorphismId m = 0; m < g.morphism_count(); ++m) {
        b.set_inverse(morphism_perm[m], morphism_perm[g.inverse(m)]);
        for (MorphismId n : g.out(g.target(m))) b.set_composite(morphism_perm[n], morphism_perm[m], morphism_perm[g.compose(n, m)]);
    }
    b.set_labels(std::move(ol), std::move(ml));
    return std::move(b).build();
}

// Connected groupoid with `objects` objects and automorphism group g.
inline FiniteGroupoid fattened_b_group(const FiniteGroup& g, std::size_t objects) {
    return product(indiscrete_groupoid(objects), b_group(g));
}

inline std::vector<FiniteGroup> small_group_palette() {
    return {groups::trivial(), groups::cyclic(2), groups::cyclic(3), groups::symmetric(3)};
}

// Random valid groupoid: up to `max_objects` objects split into components,
// each with an automorphism group drawn from `palette`, ids shuffled.
inline FiniteGroupoid random_groupoid(CorpusRng& rng, std::size_t max_objects, const std::vector<FiniteGroup>& palette) {
    std::size_t total = 1 + rng.below(max_objects);
    std::vector<FiniteGroupoid> parts;
    std::size_t left = total;
    while (left > 0) {
        std::size_t size = 1 + rng.below(left);
        parts.push_back(fattened_b_group(rng.pick(palette), size));
        left -= size;
    }
    std::vector<const FiniteGroupoid*> ptrs;
    for (const auto& p : parts) ptrs.push_back(&p);
    auto g = disjoint_union(std::span<const FiniteGroupoid* const>(ptrs));
    std::vector<ObjectId> op(g.object_count());
    std::vector<MorphismId> mp(g.morphism_count());
    std::iota(op.begin(), op.end(), 0u);
    std::iota(mp.begin(), mp.end(), 0u);
    for (std::size_t i = op.size(); i > 1; --i) std::swap(op[i - 1], op[rng.below(i)]);
    for (std::size_t i = mp.size(); i > 1; --i) std::swap(mp[i - 1], mp[rng.below(i)]);
    return relabel(g, op, mp);
}

} // namespace mapstack
