#include <gtest/gtest.h>

#include "mapstack/fibration.hpp"
#include "mapstack/random.hpp"

using namespace mapstack;

namespace {

GroupoidRef bg(const FiniteGroup& g) { return share(b_group(g)); }

// B of the inclusion A3 -> S3.
GroupoidFunctor alternating_inclusion(const GroupoidRef& ba3, const GroupoidRef& bs3) {
    auto a3 = groups::alternating(3);
    auto s3 = groups::symmetric(3);
    std::vector<Element> phi;
    for (Element a = 0; a < a3.order(); ++a) phi.push_back(*s3.find(a3.label(a)));
    return b_functor(ba3, bs3, phi);
}

// Orbits of G on pairs (g, φ) under h·(g, φ) = (hgh⁻¹, hφ), by flood fill.
std::size_t pair_orbit_count(const FiniteGroup& g) {
    const std::size_t n = g.order();
    std::vector<bool> seen(n * n, false);
    std::size_t orbits = 0;
    for (std::size_t start = 0; start < n * n; ++start) {
        if (seen[start]) continue;
        ++orbits;
        auto a = static_cast<Element>(start / n), phi = static_cast<Element>(start % n);
        for (Element h = 0; h < n; ++h)
            seen[g.multiply(g.multiply(h, a), g.inverse(h)) * n + g.multiply(h, phi)] = true;
    }
    return orbits;
}

} // namespace

TEST(PathGroupoid, Examples) {
    auto d = share(discrete_groupoid(3));
    auto pd = path_groupoid(d);
    EXPECT_EQ(pd.paths.groupoid->object_count(), 3u);
    EXPECT_TRUE(certify_equivalence(pd.ev0));

    auto s3 = bg(groups::symmetric(3));
    auto ps = path_groupoid(s3);
    EXPECT_EQ(ps.paths.groupoid->object_count(), 6u);
    EXPECT_EQ(pi0(*ps.paths.groupoid).count(), 1u);
    EXPECT_TRUE(certify_equivalence(ps.ev0));
    EXPECT_TRUE(certify_equivalence(ps.ev1));
    EXPECT_EQ(compose(ps.ev0, ps.constant), identity_functor(s3));
    EXPECT_EQ(compose(ps.ev1, ps.constant), identity_functor(s3));
    EXPECT_TRUE(validate_functor(ps.constant).empty());
}

TEST(PathGroupoid, ObjectsAreMorphisms) {
    CorpusRng rng(41);
    auto palette = small_group_palette();
    for (int trial = 0; trial < 8; ++trial) {
        auto x = share(random_groupoid(rng, 3, palette));
        auto p = path_groupoid(x);
        EXPECT_EQ(p.paths.groupoid->object_count(), x->morphism_count());
        EXPECT_TRUE(certify_equivalence(p.ev0));
    }
}

TEST(Isofibration, Examples) {
    auto s3 = bg(groups::symmetric(3));
    EXPECT_TRUE(is_isofibration(identity_functor(s3)));
    auto b2 = bg(groups::cyclic(2));
    auto pt = is_isofibration(point_functor(b2, 0));
    ASSERT_FALSE(pt);
    EXPECT_EQ(pt.counterexample->morphism, 1u);
    EXPECT_TRUE(is_isofibration(path_groupoid(s3).ev0));
}

TEST(Isofibration, RestrictionAlongInclusions) {
    // restriction along an injective-on-objects functor lifts isomorphisms
    CorpusRng rng(43);
    auto palette = small_group_palette();
    auto x = bg(groups::cyclic(2));
    for (int trial = 0; trial < 10; ++trial) {
        auto y = share(random_groupoid(rng, 3, palette));
        if (y->object_count() < 2) continue;
        auto sub = share(discrete_groupoid(2));
        GroupoidFunctor incl{sub, y, {0, 1}, {y->identity(0), y->identity(1)}};
        auto big = functor_groupoid(y, x), small = functor_groupoid(sub, x);
        EXPECT_TRUE(is_isofibration(restriction(incl, big, small)));
    }
}

TEST(Replacement, Examples) {
    auto t = share(terminal_groupoid());
    auto r0 = replace(identity_functor(t));
    EXPECT_TRUE(are_equivalent(r0.total.groupoid, t));

    auto s3 = groups::symmetric(3);
    auto bs3 = bg(s3);
    auto r1 = replace(point_functor(bs3, 0));
    EXPECT_EQ(r1.total.groupoid->object_count(), 6u);
    EXPECT_TRUE(is_isofibration(r1.projection));

    auto ba3 = bg(groups::alternating(3));
    auto r2 = replace(alternating_inclusion(ba3, bs3));
    EXPECT_TRUE(is_isofibration(r2.projection));
    EXPECT_TRUE(are_equivalent(r2.total.groupoid, ba3));
    EXPECT_TRUE(verify(r2.embedding_witness));
}

TEST(Replacement, RandomCorpus) {
    CorpusRng rng(47);
    auto palette = small_group_palette();
    int checked = 0;
    for (int trial = 0; trial < 20 && checked < 10; ++trial) {
        auto x = share(random_groupoid(rng, 3, palette));
        auto y = share(random_groupoid(rng, 3, palette));
        auto fun = functor_groupoid(x, y);
        if (fun.functors.empty()) continue;
        const auto& f = fun.functors[rng.below(fun.functors.size())];
        auto r = replace(f);
        EXPECT_TRUE(is_isofibration(r.projection));
        EXPECT_TRUE(verify(r.embedding_witness));
        EXPECT_EQ(compose(r.retraction, r.embedding), identity_functor(x));
        EXPECT_EQ(compose(r.projection, r.embedding), f);
        EXPECT_TRUE(validate_natural(r.homotopy).empty());
        ++checked;
    }
    EXPECT_GE(checked, 5);
}

TEST(HomotopyFiber, Examples) {
    auto s3 = bg(groups::symmetric(3));
    auto id = homotopy_fiber(identity_functor(s3), 0);
    EXPECT_TRUE(are_equivalent(id.fiber.groupoid, share(terminal_groupoid())));

    auto ba3 = bg(groups::alternating(3));
    auto h = homotopy_fiber(alternating_inclusion(ba3, s3), 0);
    EXPECT_TRUE(are_equivalent(h.fiber.groupoid, share(discrete_groupoid(2))));
    EXPECT_TRUE(is_essentially_discrete(*h.fiber.groupoid));
    // coset count [S3 : A3]
    EXPECT_EQ(pi0(*h.direct.groupoid).count(), 2u);

    auto pt = homotopy_fiber(point_functor(s3, 0), 0);
    EXPECT_TRUE(are_equivalent(pt.fiber.groupoid, share(discrete_groupoid(6))));
}

TEST(HomotopyFiber, ReplacementAgreesWithDirect) {
    CorpusRng rng(53);
    auto palette = small_group_palette();
    for (int trial = 0; trial < 10; ++trial) {
        auto x = share(random_groupoid(rng, 2, palette));
        auto y = share(random_groupoid(rng, 2, palette));
        auto fun = functor_groupoid(x, y);
        if (fun.functors.empty()) continue;
        const auto& f = fun.functors[rng.below(fun.functors.size())];
        auto h = homotopy_fiber(f, static_cast<ObjectId>(rng.below(y->object_count())));
        ASSERT_TRUE(h.agreement);
        EXPECT_TRUE(verify(*h.agreement.witness));
    }
}

TEST(Omega, TerminalAndCyclic) {
    auto t = omega(share(terminal_groupoid()), 0);
    EXPECT_EQ(t.components, 1u);
    EXPECT_TRUE(t.discrete);
    auto z5 = omega(bg(groups::cyclic(5)), 0);
    EXPECT_EQ(z5.components, 5u);
    EXPECT_TRUE(z5.discrete);
}

TEST(Omega, ComponentsOfBasedLoopsInBG) {
    // The fiber of ev over the base point has objects (g, φ) and morphisms
    // h: (g, φ) -> (hgh⁻¹, hφ). The action is free, so there are |G|
    // components, each with trivial automorphisms.
    for (const auto& g : {groups::symmetric(3), groups::quaternion(), groups::cyclic(4)}) {
        auto o = omega(bg(g), 0);
        EXPECT_EQ(o.components, pair_orbit_count(g));
        EXPECT_TRUE(o.discrete);
        EXPECT_EQ(pi0(*o.fiber.direct.groupoid).count(), g.order());
    }
}
