#include <gtest/gtest.h>

#include "mapstack/cech.hpp"
#include "mapstack/loop_inertia.hpp"
#include "mapstack/mapping.hpp"
#include "mapstack/random.hpp"

using namespace mapstack;

namespace {

// Covers by brute force: every family of nonempty point sets that are
// down-closed under the listed relation, checked straight from the pairs.
std::size_t brute_force_cover_count(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& below,
                                    std::size_t max_size) {
    auto closed = [&](unsigned s) {
        for (auto [x, y] : below)
            if (((s >> y) & 1) && !((s >> x) & 1)) return false;
        return true;
    };
    std::vector<unsigned> opens;
    for (unsigned s = 1; s < (1u << n); ++s)
        if (closed(s)) opens.push_back(s);
    std::size_t count = 0;
    for (unsigned long long fam = 1; fam < (1ull << opens.size()); ++fam) {
        if (static_cast<std::size_t>(std::popcount(fam)) > max_size) continue;
        unsigned all = 0;
        for (std::size_t i = 0; i < opens.size(); ++i)
            if ((fam >> i) & 1) all |= opens[i];
        count += all == (1u << n) - 1;
    }
    return count;
}

GroupoidRef bg(const FiniteGroup& g) { return share(b_group(g)); }

// Continuous functors by filtering all functors: constant on every
// order-connected component of every piece.
std::size_t continuous_functor_count(const CechGroupoid& c, const GroupoidRef& x) {
    auto fun = functor_groupoid(c.groupoid, x);
    std::size_t count = 0;
    for (const auto& f : fun.functors) {
        bool ok = true;
        for (ObjectId o = 0; o < c.objects.size() && ok; ++o)
            for (ObjectId o2 = 0; o2 < c.objects.size() && ok; ++o2) {
                auto [i, p] = c.objects[o];
                auto [i2, p2] = c.objects[o2];
                if (i == i2 && c.object_component(i, p) == c.object_component(i2, p2) && f.on_object(o) != f.on_object(o2)) ok = false;
            }
        for (MorphismId m = 0; m < c.morphisms.size() && ok; ++m)
            for (MorphismId m2 = 0; m2 < c.morphisms.size() && ok; ++m2) {
                const auto& a = c.morphisms[m];
                const auto& b = c.morphisms[m2];
                if (a.i != b.i || a.j != b.j || a.i == a.j) continue;
                auto lo = std::min(a.i, a.j), hi = std::max(a.i, a.j);
                if (c.pair_component(lo, hi, a.p) == c.pair_component(lo, hi, b.p) && f.on_morphism(m) != f.on_morphism(m2)) ok = false;
            }
        count += ok;
    }
    return count;
}

} // namespace

TEST(FiniteSpace, PseudoCircle) {
    auto k = pseudo_circle();
    EXPECT_EQ(k.size(), 4u);
    EXPECT_EQ(k.minimal_open(0), 0b0001u);
    EXPECT_EQ(k.minimal_open(1), 0b0010u);
    EXPECT_EQ(k.minimal_open(2), 0b0111u);
    EXPECT_EQ(k.minimal_open(3), 0b1011u);
    EXPECT_TRUE(k.is_open(0b0001));
    EXPECT_FALSE(k.is_open(0b0100));
    auto opens = k.opens();
    EXPECT_EQ(opens.size(), 6u);
    std::vector<PointSet> proper_maximal;
    for (PointSet u : opens) {
        if (u == k.all()) continue;
        bool maximal = true;
        for (PointSet v : opens)
            if (v != k.all() && v != u && (u & v) == u) maximal = false;
        if (maximal) proper_maximal.push_back(u);
    }
    EXPECT_EQ(proper_maximal, (std::vector<PointSet>{0b0111, 0b1011}));
    EXPECT_EQ(k.maximal_points(), (std::vector<std::size_t>{2, 3}));
    EXPECT_EQ(k.components(0b0011).size(), 2u);
    EXPECT_EQ(k.components(k.all()).size(), 1u);
}

TEST(FiniteSpace, RejectsBadInput) {
    EXPECT_THROW(FiniteSpace({"a"}, {{0, 1}}), InvalidInput);
    auto k = pseudo_circle();
    EXPECT_THROW(make_cover(k, {0b0100, 0b1011}), InvalidInput);  // {c} is not open
    EXPECT_THROW(make_cover(k, {0b0111}), InvalidInput);          // misses d
}

TEST(Covers, Examples) {
    EXPECT_EQ(enumerate_covers(discrete_space(1)).size(), 1u);
    auto two = enumerate_covers(discrete_space(2), 2);
    EXPECT_EQ(two.size(), 4u);
    EXPECT_EQ(two.size(), brute_force_cover_count(2, {}, 2));
    auto k = pseudo_circle();
    auto covers = enumerate_covers(k);
    EXPECT_NE(std::find(covers.begin(), covers.end(), OpenCover{{0b0111, 0b1011}}), covers.end());
    EXPECT_EQ(minimal_cover(k), (OpenCover{{0b0111, 0b1011}}));
}

TEST(Covers, MatchBruteForce) {
    std::vector<std::pair<std::size_t, std::size_t>> circle{{0, 2}, {1, 2}, {0, 3}, {1, 3}};
    for (std::size_t m = 1; m <= 5; ++m) {
        EXPECT_EQ(enumerate_covers(pseudo_circle(), m).size(), brute_force_cover_count(4, circle, m) + (m < 2))
            << "max size " << m;
        EXPECT_EQ(enumerate_covers(discrete_space(3), m).size(), brute_force_cover_count(3, {}, m) + (m < 3));
    }
    // a chain 0 < 1 < 2 and a random poset on 5 points
    std::vector<std::pair<std::size_t, std::size_t>> chain{{0, 1}, {1, 2}};
    EXPECT_EQ(enumerate_covers(FiniteSpace({"x", "y", "z"}, chain), 3).size(), brute_force_cover_count(3, chain, 3));
    CorpusRng rng(79);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<std::pair<std::size_t, std::size_t>> rel;
        for (std::size_t x = 0; x < 5; ++x)
            for (std::size_t y = x + 1; y < 5; ++y)
                if (rng.below(3) == 0) rel.emplace_back(x, y);
        FiniteSpace k({"p", "q", "r", "s", "t"}, rel);
        auto covers = enumerate_covers(k, 3);
        auto min = minimal_cover(k);
        bool min_small = min.sets.size() <= 3;
        EXPECT_EQ(covers.size(), brute_force_cover_count(5, rel, 3) + (min_small ? 0 : 1));
    }
}

TEST(CechGroupoid, Examples) {
    auto k = pseudo_circle();
    auto whole = cech_groupoid(k, whole_space_cover(k));
    EXPECT_EQ(whole.groupoid->object_count(), 4u);
    EXPECT_EQ(whole.groupoid->morphism_count(), 4u);
    EXPECT_TRUE(is_valid(*whole.groupoid));

    auto c = cech_groupoid(k, minimal_cover(k));
    EXPECT_TRUE(is_valid(*c.groupoid));
    EXPECT_EQ(c.groupoid->object_count(), 6u);
    ASSERT_EQ(c.pairs.size(), 1u);
    EXPECT_EQ(c.pairs[0].components.size(), 2u);
    EXPECT_EQ(c.object_component_count, 2u);
    // quotient of the groupoid is the space: one component per point
    EXPECT_EQ(pi0(*c.groupoid).count(), 4u);

    auto d = discrete_space(2);
    auto singletons = cech_groupoid(d, make_cover(d, {0b01, 0b10}));
    EXPECT_EQ(singletons.groupoid->object_count(), 2u);
    EXPECT_EQ(singletons.groupoid->morphism_count(), 2u);
}

TEST(CechGroupoid, AtMostOneMorphismBetweenObjects) {
    auto k = pseudo_circle();
    for (const auto& cover : enumerate_covers(k)) {
        auto c = cech_groupoid(k, cover);
        const auto& g = *c.groupoid;
        ASSERT_TRUE(is_valid(g));
        for (ObjectId a = 0; a < g.object_count(); ++a)
            for (ObjectId b = 0; b < g.object_count(); ++b) EXPECT_LE(g.hom(a, b).size(), 1u);
        EXPECT_EQ(pi0(g).count(), k.size());
    }
}

TEST(HomSpace, Examples) {
    auto k = pseudo_circle();
    auto c = cech_groupoid(k, minimal_cover(k));
    EXPECT_EQ(hom_space(c, terminal_groupoid()).size(), 1u);
    auto z2 = hom_space(c, b_group(groups::cyclic(2)));
    EXPECT_EQ(z2.size(), 4u);  // one element per component of {a, b}
    auto whole = cech_groupoid(k, whole_space_cover(k));
    // locally constant maps from a connected space
    EXPECT_EQ(hom_space(whole, discrete_groupoid(3)).size(), 3u);
    auto d = discrete_space(2);
    EXPECT_EQ(hom_space(cech_groupoid(d, whole_space_cover(d)), discrete_groupoid(3)).size(), 9u);
}

TEST(HomSpace, MatchesFilteredFunctors) {
    auto k = pseudo_circle();
    auto covers = enumerate_covers(k, 3);
    std::size_t compared = 0;
    for (const auto& x : {bg(groups::cyclic(2)), share(indiscrete_groupoid(2)),
                          share(disjoint_union(b_group(groups::cyclic(2)), terminal_groupoid()))}) {
        for (const auto& cover : covers) {
            auto c = cech_groupoid(k, cover);
            auto zs = hom_space(c, *x);
            // the unfiltered functor groupoid gets large on the bigger covers
            if (estimate_functor_groupoid(*c.groupoid, *x).table <= (std::size_t{1} << 18)) {
                EXPECT_EQ(zs.size(), continuous_functor_count(c, x));
                ++compared;
            }
            for (const auto& z : zs) {
                EXPECT_TRUE(satisfies_cocycle_condition(c, *x, z));
                EXPECT_TRUE(validate_functor(cocycle_functor(c, x, z)).empty());
            }
            EXPECT_TRUE(std::is_sorted(zs.begin(), zs.end()));
        }
    }
    EXPECT_GE(compared, 20u);
}

TEST(Classify, Examples) {
    auto s3 = b_group(groups::symmetric(3));
    EXPECT_EQ(classify_hs(discrete_space(1), s3).classes.size(), 1u);
    EXPECT_EQ(classify_hs(discrete_space(2), s3).classes.size(), 1u);
    auto k = pseudo_circle();
    EXPECT_EQ(classify_hs(k, b_group(groups::cyclic(2))).classes.size(), 2u);
    EXPECT_EQ(classify_hs(k, b_group(groups::cyclic(3))).classes.size(), 3u);
    auto r = classify_hs(k, s3);
    EXPECT_EQ(r.classes.size(), 3u);
    for (const auto& cls : r.classes) {
        EXPECT_TRUE(satisfies_cocycle_condition(r.refined, s3, cls.representative));
        EXPECT_EQ(cls.representative, gauge_minimum(r.refined, s3, cls.representative));
    }
}

TEST(Classify, PseudoCircleCountsConjugacyClasses) {
    auto k = pseudo_circle();
    for (const auto& g : {groups::cyclic(2), groups::cyclic(3), groups::symmetric(3), groups::cyclic(4)})
        EXPECT_EQ(classify_hs(k, b_group(g), {.max_cover_size = 2}).classes.size(), conjugacy(g).count());
}

TEST(Classify, PseudoCircleCountsFreeLoopComponents) {
    CorpusRng rng(83);
    auto palette = small_group_palette();
    auto k = pseudo_circle();
    for (int trial = 0; trial < 6; ++trial) {
        auto x = share(random_groupoid(rng, 3, palette));
        auto r = classify_hs(k, *x, {.max_cover_size = 2});
        EXPECT_EQ(r.classes.size(), pi0(*inertia_groupoid(x).groupoid).count());
    }
}

TEST(Classify, StableUnderLargerCoverBounds) {
    auto k = pseudo_circle();
    auto x = b_group(groups::cyclic(3));
    std::size_t first = classify_hs(k, x, {.max_cover_size = 1}).classes.size();
    for (std::size_t m = 2; m <= 4; ++m) EXPECT_EQ(classify_hs(k, x, {.max_cover_size = m}).classes.size(), first);
}

TEST(Classify, DiscreteSpacesMatchFunctorComponents) {
    for (std::size_t n = 1; n <= 3; ++n) {
        auto k = discrete_space(n);
        for (const auto& x : {bg(groups::cyclic(2)), share(discrete_groupoid(2)),
                              share(disjoint_union(b_group(groups::symmetric(3)), indiscrete_groupoid(2)))}) {
            auto fun = functor_groupoid(share(discrete_groupoid(n)), x);
            EXPECT_EQ(classify_hs(k, *x, {.max_cover_size = 2}).classes.size(), pi0(*fun.groupoid).count());
        }
    }
}

TEST(Atlas, EpimorphismReports) {
    auto pt = atlas_epimorphism_check(discrete_space(1), b_group(groups::cyclic(2)));
    EXPECT_TRUE(pt.ok());
    EXPECT_EQ(pt.classes, 1u);
    auto k = pseudo_circle();
    auto z2 = atlas_epimorphism_check(k, b_group(groups::cyclic(2)));
    EXPECT_TRUE(z2.ok());
    EXPECT_EQ(z2.classes, 2u);
    EXPECT_TRUE(z2.minimal_cover_hits_all);
    EXPECT_EQ(z2.whole_space_hits, 1u);
    auto s3 = atlas_epimorphism_check(k, b_group(groups::symmetric(3)), {.max_cover_size = 3});
    EXPECT_TRUE(s3.ok());
    EXPECT_EQ(s3.classes, 3u);
}
