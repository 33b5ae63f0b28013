#pragma once

#include <cstdint>
#include <vector>

#include "equivalence.hpp"
#include "mapping.hpp"
#include "random.hpp"

namespace mapstack {

// One checked instance of Fun(z×y, x) ≅ Fun(z, Fun(y, x)).
struct ExponentialTrial {
    std::size_t draw = 0;  // index in the seeded stream
    GroupoidRef z, y, x;
    std::size_t uncurried_objects = 0, uncurried_morphisms = 0;
    std::size_t curried_objects = 0, curried_morphisms = 0;
    bool verified = false;
};

struct ExponentialCorpus {
    std::vector<ExponentialTrial> trials;
    std::size_t draws = 0;
    std::size_t resampled = 0;  // triples redrawn after BoundExceeded
};

inline EnumerationBounds default_corpus_bounds() { return {20'000, std::size_t{1} << 22}; }

// Seeded random triples with at most `max_objects` objects each and
// automorphism groups from the small palette. Triples whose functor
// groupoids exceed `bounds` are redrawn; gives up after 50 draws per trial.
inline ExponentialCorpus exponential_corpus(std::uint64_t seed, std::size_t count, std::size_t max_objects = 3,
                                            const EnumerationBounds& bounds = default_corpus_bounds()) {
    CorpusRng rng(seed);
    auto palette = small_group_palette();
    ExponentialCorpus c;
    const std::size_t max_draws = 50 * count;
    while (c.trials.size() < count) {
        if (c.draws == max_draws) throw BoundExceeded("exponential corpus draws", max_draws, c.draws + 1);
        ExponentialTrial t;
        t.draw = c.draws++;
        t.z = share(random_groupoid(rng, max_objects, palette));
        t.y = share(random_groupoid(rng, max_objects, palette));
        t.x = share(random_groupoid(rng, max_objects, palette));
        try {
            auto r = exponential_check(t.z, t.y, t.x, bounds);
            t.uncurried_objects = r.uncurried.groupoid->object_count();
            t.uncurried_morphisms = r.uncurried.groupoid->morphism_count();
            t.curried_objects = r.curried.groupoid->object_count();
            t.curried_morphisms = r.curried.groupoid->morphism_count();
            t.verified = verify(r.witness);
        } catch (const BoundExceeded&) {
            ++c.resampled;
            continue;
        }
        c.trials.push_back(std::move(t));
    }
    return c;
}

} // namespace mapstack
