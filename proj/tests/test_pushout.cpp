#include <gtest/gtest.h>

#include "mapstack/pushout.hpp"
#include "mapstack/random.hpp"
#include "oracles.hpp"

using namespace mapstack;

namespace {

GroupoidRef bg(const FiniteGroup& g) { return share(b_group(g)); }

// The span a -> indiscrete{y0,y1} and a -> indiscrete{z0,z1} sending both
// points of a = discrete 2 to y1 and z0.
std::pair<GroupoidFunctor, GroupoidFunctor> three_object_span() {
    auto a = share(discrete_groupoid(2));
    auto y = share(indiscrete_groupoid(2));
    auto z = share(indiscrete_groupoid(2));
    GroupoidFunctor f{a, y, {1, 1}, {y->identity(1), y->identity(1)}};
    GroupoidFunctor g{a, z, {0, 0}, {z->identity(0), z->identity(0)}};
    return {f, g};
}

// Same pushout from a single shared point: y1 ~ z0.
std::pair<GroupoidFunctor, GroupoidFunctor> one_point_span() {
    auto t = share(terminal_groupoid());
    auto y = share(indiscrete_groupoid(2));
    auto z = share(indiscrete_groupoid(2));
    return {GroupoidFunctor{t, y, {1}, {y->identity(1)}}, GroupoidFunctor{t, z, {0}, {z->identity(0)}}};
}

// Checks the strict universal property against every cocone into w.
void check_universal(const FinitePushout& p, const GroupoidRef& w) {
    auto fy = functor_groupoid(p.a_to_y.codomain, w);
    auto fz = functor_groupoid(p.a_to_z.codomain, w);
    auto fp = functor_groupoid(p.groupoid, w);
    for (const auto& u : fy.functors)
        for (const auto& v : fz.functors) {
            if (compose(u, p.a_to_y) != compose(v, p.a_to_z)) continue;
            auto h = induced_functor(p, u, v);
            ASSERT_TRUE(validate_functor(h).empty());
            EXPECT_EQ(compose(h, p.from_y), u);
            EXPECT_EQ(compose(h, p.from_z), v);
            std::size_t factorizations = 0;
            for (const auto& k : fp.functors)
                factorizations += compose(k, p.from_y) == u && compose(k, p.from_z) == v;
            EXPECT_EQ(factorizations, 1u);
        }
}

} // namespace

TEST(Pushout, EmptyApexIsDisjointUnion) {
    auto e = share(empty_groupoid());
    auto y = bg(groups::cyclic(2));
    auto z = share(indiscrete_groupoid(2));
    auto p = pushout({e, y, {}, {}}, {e, z, {}, {}});
    ASSERT_TRUE(p.finite());
    EXPECT_TRUE(is_valid(*p.groupoid));
    EXPECT_EQ(p.groupoid->object_count(), 3u);
    EXPECT_EQ(p.groupoid->morphism_count(), 6u);
    EXPECT_TRUE(are_equivalent(p.groupoid, share(disjoint_union(*y, *z))));
    check_universal(p, bg(groups::cyclic(2)));
}

TEST(Pushout, AlongIdentityLegRecoversOtherLeg) {
    auto z = bg(groups::symmetric(3));
    auto p = pushout(identity_functor(point_groupoid()), point_functor(z, 0));
    ASSERT_TRUE(p.finite());
    EXPECT_EQ(p.groupoid->object_count(), 1u);
    EXPECT_EQ(p.groupoid->morphism_count(), 6u);
    EXPECT_TRUE(are_equivalent(p.groupoid, z));
    EXPECT_TRUE(certify_equivalence(p.from_z));
}

TEST(Pushout, ThreeObjectIndiscrete) {
    auto [f, g] = three_object_span();
    auto p = pushout(f, g);
    ASSERT_TRUE(p.finite());
    EXPECT_TRUE(is_valid(*p.groupoid));
    EXPECT_EQ(p.groupoid->object_count(), 3u);
    EXPECT_EQ(p.groupoid->morphism_count(), 9u);
    EXPECT_TRUE(are_equivalent(p.groupoid, share(terminal_groupoid())));
    EXPECT_TRUE(oracle::brute_force_equivalent(*p.groupoid, indiscrete_groupoid(3)));
    check_universal(p, share(indiscrete_groupoid(2)));
    check_universal(p, bg(groups::cyclic(2)));
}

TEST(Pushout, QuotientByImage) {
    // Z/2 -> Z/4 (1 |-> 2) and Z/2 -> 1: the pushout is B(Z/4 / <2>) = B Z/2
    auto b2 = bg(groups::cyclic(2));
    auto b4 = bg(groups::cyclic(4));
    auto t = share(terminal_groupoid());
    auto p = pushout(b_functor(b2, b4, {0, 2}), constant_functor(b2, t, 0));
    ASSERT_TRUE(p.finite());
    EXPECT_EQ(p.groupoid->morphism_count(), 2u);
    EXPECT_TRUE(are_equivalent(p.groupoid, b2));
    check_universal(p, bg(groups::symmetric(3)));
}

TEST(Pushout, IsomorphicLegGivesTarget) {
    auto b3 = bg(groups::cyclic(3));
    auto s3 = groups::symmetric(3);
    auto bs3 = bg(s3);
    // Z/3 onto the rotation subgroup of S3
    std::vector<Element> phi{0, 0, 0};
    auto r = *s3.find("(1 2 3)");
    phi[1] = r;
    phi[2] = s3.multiply(r, r);
    auto p = pushout(identity_functor(b3), b_functor(b3, bs3, phi));
    ASSERT_TRUE(p.finite());
    EXPECT_TRUE(are_equivalent(p.groupoid, bs3));
}

TEST(Pushout, InfiniteResultsAbort) {
    // a circle: two points glued to both ends of an interval
    auto a = share(discrete_groupoid(2));
    auto y = share(indiscrete_groupoid(2));
    auto t = share(terminal_groupoid());
    auto circle = pushout({a, y, {0, 1}, {y->identity(0), y->identity(1)}}, constant_functor(a, t, 0), 500);
    EXPECT_FALSE(circle.finite());
    EXPECT_GT(circle.explored, 0u);
    // Z/2 * Z/2 is infinite dihedral
    auto b2 = bg(groups::cyclic(2));
    auto free = pushout(point_functor(b2, 0), point_functor(b2, 0), 500);
    EXPECT_FALSE(free.finite());
}

TEST(Pushout, RandomSpansSatisfyUniversalProperty) {
    CorpusRng rng(17);
    auto palette = small_group_palette();
    int finite = 0;
    for (int trial = 0; trial < 30 && finite < 8; ++trial) {
        auto a = share(random_groupoid(rng, 2, palette));
        auto y = share(random_groupoid(rng, 3, palette));
        auto z = share(random_groupoid(rng, 3, palette));
        auto fy = functor_groupoid(a, y);
        auto fz = functor_groupoid(a, z);
        if (fy.functors.empty() || fz.functors.empty()) continue;
        auto p = pushout(fy.functors[rng.below(fy.functors.size())], fz.functors[rng.below(fz.functors.size())], 2000);
        if (!p.finite()) continue;
        ++finite;
        ASSERT_TRUE(is_valid(*p.groupoid));
        EXPECT_TRUE(validate_functor(p.from_y).empty());
        EXPECT_TRUE(validate_functor(p.from_z).empty());
        EXPECT_EQ(compose(p.from_y, p.a_to_y), compose(p.from_z, p.a_to_z));
        if (p.groupoid->morphism_count() <= 12) check_universal(p, bg(groups::cyclic(2)));
    }
    EXPECT_GE(finite, 3);
}

TEST(Gluing, Examples) {
    auto bs3 = bg(groups::symmetric(3));
    auto e = share(empty_groupoid());
    auto y = bg(groups::cyclic(2));
    auto z = share(discrete_groupoid(2));
    auto p0 = pushout({e, y, {}, {}}, {e, z, {}, {}});
    auto g0 = gluing_check(p0, bs3);
    EXPECT_TRUE(verify(g0.witness));
    EXPECT_TRUE(g0.strict);

    auto [f, g] = one_point_span();
    auto p1 = pushout(f, g);
    EXPECT_TRUE(oracle::brute_force_equivalent(*p1.groupoid, indiscrete_groupoid(3)));
    auto g1 = gluing_check(p1, bs3);
    EXPECT_TRUE(verify(g1.witness));
    EXPECT_TRUE(are_equivalent(g1.glued.groupoid, bs3));
    EXPECT_TRUE(are_equivalent(g1.pullback, bs3));

    auto t = share(terminal_groupoid());
    auto i2 = share(indiscrete_groupoid(2));
    auto p2 = pushout({t, i2, {0}, {i2->identity(0)}}, identity_functor(t));
    auto g2 = gluing_check(p2, bg(groups::cyclic(2)));
    EXPECT_TRUE(verify(g2.witness));
}

TEST(Gluing, RestrictionAlongFullInclusionLifts) {
    auto i2 = share(indiscrete_groupoid(2));
    auto t = share(terminal_groupoid());
    GroupoidFunctor incl{t, i2, {0}, {i2->identity(0)}};
    auto x = bg(groups::symmetric(3));
    auto big = functor_groupoid(i2, x), small = functor_groupoid(t, x);
    EXPECT_FALSE(find_unliftable(restriction(incl, big, small)));
}

TEST(Gluing, IsoCommaPathAgreesWithStrictPath) {
    auto [f, g] = one_point_span();
    auto p = pushout(f, g);
    auto b2 = bg(groups::cyclic(2));
    auto strict = gluing_check(p, b2);
    auto lax = gluing_check(p, b2, {}, GluingPullback::iso_comma);
    EXPECT_TRUE(strict.strict);
    EXPECT_FALSE(lax.strict);
    EXPECT_TRUE(verify(lax.witness));
    EXPECT_TRUE(are_equivalent(strict.pullback, lax.pullback));
}

TEST(Gluing, FailsWhenLegsIdentifyPoints) {
    // two points collapsed on both sides: the strict pushout is a point while
    // the 2-pullback of mapping groupoids sees a loop
    auto a = share(discrete_groupoid(2));
    auto t = share(terminal_groupoid());
    auto p = pushout(constant_functor(a, t, 0), constant_functor(a, t, 0));
    ASSERT_TRUE(p.finite());
    EXPECT_EQ(p.groupoid->morphism_count(), 1u);
    EXPECT_THROW(gluing_check(p, bg(groups::cyclic(2))), VerificationFailure);
    // same for the two-point span into indiscrete pairs
    auto [f, g] = three_object_span();
    EXPECT_THROW(gluing_check(pushout(f, g), bg(groups::cyclic(2))), VerificationFailure);
}
