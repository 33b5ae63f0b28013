#pragma once

// Slow reference implementations used to cross-check the library.

#include <algorithm>
#include <vector>

#include "mapstack/groupoid.hpp"

namespace oracle {

using namespace mapstack;

// Independent equivalence oracle for tiny groupoids: tries every raw pair of
// object and morphism maps and checks the definitions directly.
inline bool brute_force_equivalent(const FiniteGroupoid& x, const FiniteGroupoid& y) {
    const std::size_t xo = x.object_count(), xm = x.morphism_count();
    if (xo == 0 || y.object_count() == 0) return xo == y.object_count();
    std::vector<ObjectId> omap(xo, 0);
    for (;;) {
        // candidate images restricted to the right endpoints
        std::vector<std::vector<MorphismId>> cand(xm);
        bool possible = true;
        for (MorphismId m = 0; m < xm && possible; ++m) {
            cand[m] = y.hom(omap[x.source(m)], omap[x.target(m)]);
            possible = !cand[m].empty();
        }
        std::vector<std::size_t> pos(xm, 0);
        while (possible) {
            std::vector<MorphismId> mmap(xm);
            for (MorphismId m = 0; m < xm; ++m) mmap[m] = cand[m][pos[m]];
            bool functor = true;
            for (MorphismId m = 0; m < xm && functor; ++m)
                for (MorphismId n : x.out(x.target(m)))
                    if (mmap[x.compose(n, m)] != y.compose(mmap[n], mmap[m])) functor = false;
            if (functor) {
                bool ff = true;
                for (ObjectId a = 0; a < xo && ff; ++a)
                    for (ObjectId b = 0; b < xo && ff; ++b) {
                        std::vector<MorphismId> img;
                        for (auto m : x.hom(a, b)) img.push_back(mmap[m]);
                        std::sort(img.begin(), img.end());
                        ff = std::adjacent_find(img.begin(), img.end()) == img.end() &&
                             img.size() == y.hom(omap[a], omap[b]).size();
                    }
                bool es = true;
                for (ObjectId t = 0; t < y.object_count() && es; ++t) {
                    bool hit = false;
                    for (ObjectId a = 0; a < xo && !hit; ++a) hit = !y.hom(omap[a], t).empty();
                    es = hit;
                }
                if (ff && es) return true;
            }
            std::size_t k = 0;
            while (k < xm && ++pos[k] == cand[k].size()) pos[k++] = 0;
            if (k == xm) break;
        }
        std::size_t i = 0;
        while (i < xo && ++omap[i] == y.object_count()) omap[i++] = 0;
        if (i == xo) return false;
    }
}

// All raw functors y -> x: every object map, every morphism map with the
// right endpoints, filtered by preservation of composition.
inline std::vector<std::pair<std::vector<ObjectId>, std::vector<MorphismId>>> raw_functors(const FiniteGroupoid& y,
                                                                                         const FiniteGroupoid& x) {
    std::vector<std::pair<std::vector<ObjectId>, std::vector<MorphismId>>> out;
    const std::size_t yo = y.object_count(), ym = y.morphism_count();
    if (yo == 0) return {{{}, {}}};
    if (x.object_count() == 0) return out;
    std::vector<ObjectId> omap(yo, 0);
    for (;;) {
        std::vector<std::vector<MorphismId>> cand(ym);
        bool possible = true;
        for (MorphismId m = 0; m < ym && possible; ++m) {
            cand[m] = x.hom(omap[y.source(m)], omap[y.target(m)]);
            possible = !cand[m].empty();
        }
        std::vector<std::size_t> pos(ym, 0);
        while (possible) {
            std::vector<MorphismId> mmap(ym);
            for (MorphismId m = 0; m < ym; ++m) mmap[m] = cand[m][pos[m]];
            bool ok = true;
            for (MorphismId m = 0; m < ym && ok; ++m)
                for (MorphismId n : y.out(y.target(m)))
                    if (mmap[y.compose(n, m)] != x.compose(mmap[n], mmap[m])) ok = false;
            if (ok) out.emplace_back(omap, mmap);
            std::size_t k = 0;
            while (k < ym && ++pos[k] == cand[k].size()) pos[k++] = 0;
            if (k == ym) break;
        }
        std::size_t i = 0;
        while (i < yo && ++omap[i] == x.object_count()) omap[i++] = 0;
        if (i == yo) return out;
    }
}

// Number of natural transformations between two raw functors.
inline std::size_t raw_transformations(const FiniteGroupoid& y, const FiniteGroupoid& x,
                                       const std::pair<std::vector<ObjectId>, std::vector<MorphismId>>& f,
                                       const std::pair<std::vector<ObjectId>, std::vector<MorphismId>>& g) {
    const std::size_t yo = y.object_count();
    std::vector<std::vector<MorphismId>> cand(yo);
    for (ObjectId o = 0; o < yo; ++o) {
        cand[o] = x.hom(f.first[o], g.first[o]);
        if (cand[o].empty()) return 0;
    }
    std::size_t count = 0;
    std::vector<std::size_t> pos(yo, 0);
    for (;;) {
        bool natural = true;
        for (MorphismId m = 0; m < y.morphism_count() && natural; ++m)
            natural = x.compose(cand[y.target(m)][pos[y.target(m)]], f.second[m]) ==
                      x.compose(g.second[m], cand[y.source(m)][pos[y.source(m)]]);
        count += natural;
        std::size_t k = 0;
        while (k < yo && ++pos[k] == cand[k].size()) pos[k++] = 0;
        if (k == yo) return count;
    }
}

} // namespace oracle
