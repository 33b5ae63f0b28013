#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "mapstack/equivalence.hpp"
#include "mapstack/homology.hpp"
#include "mapstack/loop_inertia.hpp"
#include "mapstack/random.hpp"

using namespace mapstack;

namespace {

using Rational = boost::multiprecision::cpp_rational;

// Rank by Gaussian elimination over the rationals.
std::size_t rational_rank(const IntMatrix& m) {
    std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (const auto& [c, v] : m.row(r)) a[r][c] = Rational(v);
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
        std::size_t p = rank;
        while (p < m.rows() && a[p][c] == 0) ++p;
        if (p == m.rows()) continue;
        std::swap(a[p], a[rank]);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == rank || a[r][c] == 0) continue;
            Rational f = a[r][c] / a[rank][c];
            for (std::size_t k = c; k < m.cols(); ++k) a[r][k] -= f * a[rank][k];
        }
        ++rank;
    }
    return rank;
}

IntMatrix dense(const std::vector<std::vector<int>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < rows[r].size(); ++c) m.set(r, c, rows[r][c]);
    return m;
}

std::vector<Integer> ints(std::initializer_list<int> v) { return {v.begin(), v.end()}; }

std::vector<std::string> formatted(const std::vector<HomologyGroup>& hs) {
    std::vector<std::string> out;
    for (const auto& h : hs) out.push_back(format_group(h));
    return out;
}

std::size_t power(std::size_t b, std::size_t e) {
    std::size_t r = 1;
    while (e--) r *= b;
    return r;
}

} // namespace

TEST(Smith, Examples) {
    auto id = smith_normal_form(IntMatrix::identity(4), true);
    EXPECT_EQ(id.factors, ints({1, 1, 1, 1}));
    EXPECT_TRUE(verify_smith(IntMatrix::identity(4), id));

    auto d = dense({{2, 0}, {0, 0}});
    auto f = smith_normal_form(d, true);
    EXPECT_EQ(f.factors, ints({2}));
    EXPECT_EQ(f.rank(), 1u);
    EXPECT_TRUE(verify_smith(d, f));

    // a 3×3 worked example with factors 2 | 6 | 12
    auto w = dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    auto fw = smith_normal_form(w, true);
    EXPECT_EQ(fw.factors, ints({2, 6, 12}));
    EXPECT_TRUE(verify_smith(w, fw));

    // diag(4, 6) needs the gcd step: 2 | 12
    auto g = dense({{4, 0}, {0, 6}});
    auto fg = smith_normal_form(g, true);
    EXPECT_EQ(fg.factors, ints({2, 12}));
    EXPECT_TRUE(verify_smith(g, fg));

    EXPECT_EQ(smith_normal_form(IntMatrix(3, 0)).rank(), 0u);
}

TEST(Smith, RandomSparseAgainstRationalRank) {
    CorpusRng rng(61);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t rows = 1 + rng.below(6), cols = 1 + rng.below(6);
        IntMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t c = 0; c < cols; ++c)
                if (rng.below(3) == 0) m.set(r, c, static_cast<int>(rng.below(19)) - 9);
        auto f = smith_normal_form(m, true);
        EXPECT_EQ(f.rank(), rational_rank(m));
        EXPECT_TRUE(verify_smith(m, f));
        // the first invariant factor is the gcd of all entries
        if (f.rank() > 0) {
            Integer g = 0;
            for (std::size_t r = 0; r < rows; ++r)
                for (const auto& [c, v] : m.row(r)) g = boost::multiprecision::gcd(g, v);
            EXPECT_EQ(f.factors.front(), g);
        }
    }
}

TEST(Smith, EntryGrowthUsesBigIntegers) {
    // entries near 2^62 overflow 64-bit products during elimination
    Integer big = Integer(1) << 62;
    IntMatrix m(2, 2);
    m.set(0, 0, big + 1);
    m.set(0, 1, big);
    m.set(1, 0, big);
    m.set(1, 1, big - 1);
    auto f = smith_normal_form(m, true);
    EXPECT_EQ(f.factors, ints({1, 1}));  // determinant -1
    EXPECT_TRUE(verify_smith(m, f));
}

TEST(Nerve, Examples) {
    auto t = nerve(terminal_groupoid(), 3);
    EXPECT_EQ(t.ranks, (std::vector<std::size_t>{1, 0, 0, 0}));
    auto b2 = nerve(b_group(groups::cyclic(2)), 3);
    EXPECT_EQ(b2.ranks, (std::vector<std::size_t>{1, 1, 1, 1}));
    auto d3 = nerve(discrete_groupoid(3), 2);
    EXPECT_EQ(d3.ranks, (std::vector<std::size_t>{3, 0, 0}));
}

TEST(Nerve, CountsMatchClosedForms) {
    for (std::size_t n = 1; n <= 5; ++n) {
        auto c = nerve(b_group(groups::cyclic(n)), 4);
        for (std::size_t k = 0; k <= 4; ++k) EXPECT_EQ(c.ranks[k], power(n - 1, k));
    }
    // indiscrete on m objects: strings of k+1 objects with consecutive ones distinct
    for (std::size_t m = 1; m <= 4; ++m) {
        auto c = nerve(indiscrete_groupoid(m), 3);
        for (std::size_t k = 0; k <= 3; ++k) EXPECT_EQ(c.ranks[k], m * power(m - 1, k));
    }
}

TEST(Nerve, BoundExceeded) {
    try {
        nerve(b_group(groups::symmetric(3)), 6, 1000);
        FAIL() << "expected BoundExceeded";
    } catch (const BoundExceeded& e) {
        EXPECT_EQ(e.bound(), 1000u);
        EXPECT_EQ(e.estimate(), 1001u);
    }
    EXPECT_NO_THROW(nerve(b_group(groups::symmetric(3)), 4, 625));
}

TEST(Homology, Examples) {
    auto d = homology(discrete_groupoid(3), 2);
    EXPECT_EQ(formatted(d), (std::vector<std::string>{"Z^3", "0", "0"}));
    auto b2 = homology(b_group(groups::cyclic(2)), 3);
    EXPECT_EQ(formatted(b2), (std::vector<std::string>{"Z", "Z/2", "0", "Z/2"}));
    EXPECT_EQ(to_string(b2[3]), "H_3 = Z/2");
    auto t = homology(terminal_groupoid(), 3);
    EXPECT_EQ(formatted(t), (std::vector<std::string>{"Z", "0", "0", "0"}));
    // indiscrete groupoids are contractible
    EXPECT_EQ(formatted(homology(indiscrete_groupoid(3), 2)), (std::vector<std::string>{"Z", "0", "0"}));
}

TEST(Homology, SymmetricGroupLowDegrees) {
    // H_1 = abelianization, H_2 = Schur multiplier (trivial), H_3 = Z/6
    auto h = homology(b_group(groups::symmetric(3)), 3);
    EXPECT_EQ(formatted(h), (std::vector<std::string>{"Z", "Z/2", "0", "Z/6"}));
}

TEST(Homology, CyclicGroupsMatchPeriodicResolution) {
    for (std::size_t n = 2; n <= 5; ++n) {
        auto h = homology(b_group(groups::cyclic(n)), 4);
        EXPECT_EQ(h, cyclic_group_homology_oracle(n, 4)) << "n = " << n;
    }
}

TEST(Homology, OracleExamples) {
    EXPECT_EQ(formatted(cyclic_group_homology_oracle(1, 3)), (std::vector<std::string>{"Z", "0", "0", "0"}));
    EXPECT_EQ(formatted(cyclic_group_homology_oracle(2, 5)),
              (std::vector<std::string>{"Z", "Z/2", "0", "Z/2", "0", "Z/2"}));
    EXPECT_EQ(formatted(cyclic_group_homology_oracle(3, 3)), (std::vector<std::string>{"Z", "Z/3", "0", "Z/3"}));
}

TEST(Homology, InertiaOfSymmetricGroup) {
    auto g = groups::symmetric(3);
    auto in = inertia_groupoid(share(b_group(g)));
    auto h = homology(*in.groupoid, 1);
    EXPECT_EQ(h[0].betti, 3u);
    EXPECT_TRUE(h[0].torsion.empty());
    EXPECT_EQ(h[1].betti, 0u);
    // one abelianized centralizer per class: Z/2 ⊕ Z/2 ⊕ Z/3
    std::vector<Integer> orders;
    for (Element a : conjugacy(g).representatives)
        for (auto d : abelian_invariants(abelianization(make_subgroup(g, centralizer(g, a)).group))) orders.push_back(d);
    EXPECT_EQ(invariant_factors(orders), ints({2, 6}));
    EXPECT_EQ(h[1].torsion, invariant_factors(orders));
    EXPECT_EQ(format_group(h[1]), "Z/2 ⊕ Z/6");
}

TEST(Homology, DegreeZeroCountsComponents) {
    CorpusRng rng(67);
    auto palette = small_group_palette();
    for (int trial = 0; trial < 15; ++trial) {
        auto x = random_groupoid(rng, 4, palette);
        auto h = homology(x, 1);
        EXPECT_EQ(h[0].betti, pi0(x).count());
        EXPECT_TRUE(h[0].torsion.empty());
    }
}

TEST(Homology, InvariantUnderEquivalence) {
    CorpusRng rng(71);
    auto palette = small_group_palette();
    for (int trial = 0; trial < 10; ++trial) {
        auto x = share(random_groupoid(rng, 3, palette));
        auto s = skeleton(x);
        ASSERT_TRUE(verify(s.inclusion));
        EXPECT_EQ(homology(*x, 2), homology(*s.groupoid, 2));
    }
    for (const auto& g : palette) {
        auto fat = share(fattened_b_group(g, 3));
        auto thin = share(b_group(g));
        ASSERT_TRUE(are_equivalent(fat, thin));
        EXPECT_EQ(homology(*fat, 2), homology(*thin, 2));
    }
}

TEST(Homology, DisjointUnionIsDirectSum) {
    CorpusRng rng(73);
    auto palette = small_group_palette();
    for (int trial = 0; trial < 10; ++trial) {
        auto x = random_groupoid(rng, 3, palette);
        auto y = random_groupoid(rng, 3, palette);
        auto hx = homology(x, 2), hy = homology(y, 2), hu = homology(disjoint_union(x, y), 2);
        for (std::size_t k = 0; k <= 2; ++k) {
            EXPECT_EQ(hu[k].betti, hx[k].betti + hy[k].betti);
            auto both = hx[k].torsion;
            both.insert(both.end(), hy[k].torsion.begin(), hy[k].torsion.end());
            EXPECT_EQ(hu[k].torsion, invariant_factors(both));
        }
    }
}

TEST(Homology, BoundaryMatricesCertify) {
    auto c = nerve(b_group(groups::cyclic(4)), 4);
    for (std::size_t k = 1; k <= 4; ++k) {
        auto f = smith_normal_form(c.boundary[k], true);
        EXPECT_TRUE(verify_smith(c.boundary[k], f)) << "degree " << k;
        EXPECT_EQ(f.rank(), rational_rank(c.boundary[k]));
    }
}
