#include <gtest/gtest.h>

#include <numeric>
#include <set>

#include "mapstack/loop_inertia.hpp"
#include "mapstack/mapping.hpp"
#include "mapstack/random.hpp"

using namespace mapstack;

namespace {

std::vector<FiniteGroup> corpus() {
    return {groups::trivial(),      groups::cyclic(4),    groups::symmetric(3),
            groups::quaternion(),   groups::dihedral(4),  groups::alternating(4),
            groups::direct_product(groups::cyclic(2), groups::cyclic(2))};
}

std::vector<std::size_t> centralizer_orders(const ConjugacyTable& t) {
    std::vector<std::size_t> v;
    for (const auto& z : t.centralizers) v.push_back(z.size());
    return v;
}

// Orbits of G acting on itself by conjugation, by flood fill.
std::size_t conjugation_orbits(const FiniteGroup& g) {
    std::vector<bool> seen(g.order(), false);
    std::size_t orbits = 0;
    for (Element a = 0; a < g.order(); ++a) {
        if (seen[a]) continue;
        ++orbits;
        std::vector<Element> stack{a};
        seen[a] = true;
        while (!stack.empty()) {
            Element b = stack.back();
            stack.pop_back();
            for (Element h = 0; h < g.order(); ++h) {
                Element c = g.multiply(g.multiply(h, b), g.inverse(h));
                if (!seen[c]) {
                    seen[c] = true;
                    stack.push_back(c);
                }
            }
        }
    }
    return orbits;
}

} // namespace

TEST(Inertia, Examples) {
    auto t = inertia_groupoid(share(terminal_groupoid()));
    EXPECT_EQ(t.groupoid->object_count(), 1u);
    EXPECT_EQ(t.groupoid->morphism_count(), 1u);
    auto d = inertia_groupoid(share(discrete_groupoid(3)));
    EXPECT_EQ(d.groupoid->object_count(), 3u);
    EXPECT_EQ(d.groupoid->morphism_count(), 3u);
    auto s = inertia_groupoid(share(b_group(groups::symmetric(3))));
    EXPECT_TRUE(is_valid(*s.groupoid));
    EXPECT_EQ(s.groupoid->object_count(), 6u);
    EXPECT_EQ(s.groupoid->morphism_count(), 36u);
    EXPECT_EQ(pi0(*s.groupoid).count(), 3u);
    EXPECT_TRUE(validate_functor(s.ev).empty());
}

TEST(Inertia, LoopPointsAreFunctorsFromCyclicGroups) {
    // with n the exponent of every automorphism group, functors B Z/n -> x
    // are exactly (object, automorphism) pairs
    CorpusRng rng(23);
    auto palette = small_group_palette();
    for (int trial = 0; trial < 10; ++trial) {
        auto x = share(random_groupoid(rng, 3, palette));
        std::size_t n = 1, pairs = 0;
        for (ObjectId o = 0; o < x->object_count(); ++o) {
            auto a = aut(*x, o);
            pairs += a.morphisms.size();
            for (Element e = 0; e < a.group.order(); ++e) n = std::lcm(n, a.group.element_order(e));
        }
        auto in = inertia_groupoid(x);
        EXPECT_EQ(in.groupoid->object_count(), pairs);
        auto fun = functor_groupoid(share(b_group(groups::cyclic(n))), x);
        EXPECT_EQ(fun.functors.size(), pairs);
        EXPECT_TRUE(are_equivalent(in.groupoid, fun.groupoid));
    }
}

TEST(Inertia, CommutesWithDisjointUnion) {
    CorpusRng rng(29);
    auto palette = small_group_palette();
    for (int trial = 0; trial < 8; ++trial) {
        auto x = random_groupoid(rng, 3, palette);
        auto y = random_groupoid(rng, 3, palette);
        auto lhs = inertia_groupoid(share(disjoint_union(x, y)));
        auto ix = inertia_groupoid(share(std::move(x)));
        auto iy = inertia_groupoid(share(std::move(y)));
        auto rhs = share(disjoint_union(*ix.groupoid, *iy.groupoid));
        auto r = are_equivalent(lhs.groupoid, rhs);
        ASSERT_TRUE(r) << r.refutation;
        EXPECT_TRUE(verify(*r.witness));
    }
}

TEST(Inertia, EvaluationFibersCountClasses) {
    CorpusRng rng(31);
    auto palette = small_group_palette();
    for (int trial = 0; trial < 8; ++trial) {
        auto x = share(random_groupoid(rng, 4, palette));
        auto in = inertia_groupoid(x);
        auto comps = pi0(*in.groupoid);
        auto xc = pi0(*x);
        for (std::size_t c = 0; c < xc.count(); ++c) {
            std::size_t over = 0;
            for (std::size_t k = 0; k < comps.count(); ++k) over += xc.component_of[in.ev.on_object(comps.representative(k))] == c;
            EXPECT_EQ(over, conjugation_orbits(aut(*x, xc.representative(c)).group));
        }
    }
}

TEST(Conjugacy, Examples) {
    EXPECT_EQ(conjugacy(groups::trivial()).count(), 1u);
    auto s3 = conjugacy(groups::symmetric(3));
    EXPECT_EQ(centralizer_orders(s3), (std::vector<std::size_t>{6, 2, 3}));
    auto q8 = conjugacy(groups::quaternion());
    EXPECT_EQ(centralizer_orders(q8), (std::vector<std::size_t>{8, 8, 4, 4, 4}));
}

TEST(Conjugacy, ClassEquationAndOrbitOracle) {
    for (const auto& g : corpus()) {
        auto t = conjugacy(g);
        EXPECT_EQ(t.count(), conjugation_orbits(g));
        std::size_t total = 0;
        for (std::size_t c = 0; c < t.count(); ++c) {
            total += t.classes[c].size();
            EXPECT_EQ(t.classes[c].size() * t.centralizers[c].size(), g.order());
            EXPECT_EQ(t.representatives[c], t.classes[c].front());
        }
        EXPECT_EQ(total, g.order());
    }
}

TEST(Conjugacy, AutomorphismsOfLoopPointsAreCentralizers) {
    for (const auto& g : corpus()) {
        auto in = inertia_groupoid(share(b_group(g)));
        auto t = conjugacy(g);
        EXPECT_EQ(pi0(*in.groupoid).count(), t.count());
        for (Element a = 0; a < g.order(); ++a) {
            auto p = in.find(0, a);
            ASSERT_TRUE(p);
            auto z = twisted_loop_group(g, a);
            EXPECT_TRUE(find_isomorphism(aut(*in.groupoid, *p).group, z.group));
        }
    }
}

TEST(TwistedLoops, Examples) {
    auto s3 = groups::symmetric(3);
    EXPECT_EQ(twisted_loop_group(s3, s3.identity()).group.order(), 6u);
    auto z = twisted_loop_group(s3, *s3.find("(1 2)"));
    std::set<std::string> labels;
    for (Element e : z.embedding) labels.insert(s3.label(e));
    EXPECT_EQ(labels, (std::set<std::string>{"()", "(1 2)"}));
    auto q8 = groups::quaternion();
    auto zi = twisted_loop_group(q8, *q8.find("i"));
    EXPECT_EQ(zi.group.order(), 4u);
    EXPECT_EQ(abelian_invariants(zi.group), (std::vector<std::uint64_t>{4}));
    EXPECT_EQ(based_twisted_loop_group(q8, *q8.find("i")).group.order(), 1u);
}

TEST(TorsorIso, Examples) {
    auto s3 = groups::symmetric(3);
    auto t12 = *s3.find("(1 2)"), t13 = *s3.find("(1 3)"), c = *s3.find("(1 2 3)");
    auto same = torsor_iso(s3, t12, t12);
    ASSERT_TRUE(same);
    EXPECT_EQ(*same.delta, s3.identity());
    auto r = torsor_iso(s3, t12, t13);
    ASSERT_TRUE(r);
    EXPECT_EQ(s3.conjugate(*r.delta, t12), t13);
    EXPECT_EQ(s3.conjugate(*s3.find("(2 3)"), t12), t13);
    auto no = torsor_iso(ClutchingDatum{&s3, t12}, ClutchingDatum{&s3, c});
    EXPECT_FALSE(no);
    EXPECT_FALSE(no.refutation.empty());
}

TEST(TorsorIso, AgreesWithConjugacyAndIsoCommaFibers) {
    for (const auto& g : {groups::symmetric(3), groups::quaternion()}) {
        auto t = conjugacy(g);
        auto in = inertia_groupoid(share(b_group(g)));
        for (Element a = 0; a < g.order(); ++a)
            for (Element b = 0; b < g.order(); ++b) {
                bool iso = static_cast<bool>(torsor_iso(g, a, b));
                EXPECT_EQ(iso, t.class_of[a] == t.class_of[b]);
                auto ic = iso_comma(point_functor(in.groupoid, *in.find(0, a)), point_functor(in.groupoid, *in.find(0, b)));
                EXPECT_EQ(iso, ic.groupoid->object_count() > 0);
                if (a == b) EXPECT_EQ(ic.groupoid->object_count(), centralizer(g, a).size());
            }
    }
}

TEST(Borel, Examples) {
    auto t = borel_groupoid(groups::trivial());
    EXPECT_EQ(t.groupoid->object_count(), 1u);
    EXPECT_TRUE(verify(t.witness));
    auto s = borel_groupoid(groups::symmetric(3));
    EXPECT_TRUE(verify(s.witness));
    auto z4 = borel_groupoid(groups::cyclic(4));
    auto comps = pi0(*z4.groupoid);
    ASSERT_EQ(comps.count(), 4u);
    for (std::size_t c = 0; c < 4; ++c) {
        auto a = aut(*z4.groupoid, comps.representative(c));
        EXPECT_TRUE(find_isomorphism(a.group, groups::cyclic(4)));
    }
}

TEST(LoopDecomposition, Examples) {
    auto t = loop_decomposition(groups::trivial());
    EXPECT_EQ(t.classes.count(), 1u);
    EXPECT_EQ(t.centralizers[0].group.order(), 1u);
    auto s3 = loop_decomposition(groups::symmetric(3));
    EXPECT_EQ(centralizer_orders(s3.classes), (std::vector<std::size_t>{6, 2, 3}));
    EXPECT_TRUE(verify(s3.witness));
    EXPECT_TRUE(verify(s3.borel_witness));
    auto q8 = loop_decomposition(groups::quaternion());
    EXPECT_EQ(centralizer_orders(q8.classes), (std::vector<std::size_t>{8, 8, 4, 4, 4}));
    EXPECT_TRUE(verify(q8.witness));
}

TEST(LoopDecomposition, CorpusWitnessesAndPointMaps) {
    for (const auto& g : corpus()) {
        auto d = loop_decomposition(g);
        EXPECT_TRUE(verify(d.witness));
        EXPECT_TRUE(verify(d.borel_witness));
        for (std::size_t i = 0; i < d.classes.count(); ++i) {
            const auto& pt = d.inertia.points[d.inclusion.on_object(static_cast<ObjectId>(i))];
            EXPECT_EQ(pt.loop, d.classes.representatives[i]);
        }
    }
}
