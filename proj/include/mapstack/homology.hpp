#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "groupoid.hpp"
#include "mapping.hpp"
#include "smith.hpp"

namespace mapstack {

inline constexpr std::size_t default_nerve_bound = 100'000;

// Normalized chains of the nerve. A k-simplex is a composable string
// x0 -m1-> x1 -> ... -mk-> xk of non-identity morphisms; 0-simplices are
// objects. boundary[k] maps C_k to C_{k-1} (boundary[0] has no rows).
struct ChainComplex {
    std::vector<std::vector<std::vector<MorphismId>>> simplices;  // degree ≥ 1
    std::vector<std::size_t> ranks;
    std::vector<IntMatrix> boundary;

    std::size_t top() const { return ranks.size() - 1; }
};

// Nondegenerate simplex counts per degree, saturating at bound + 1.
inline std::vector<std::size_t> nerve_sizes(const FiniteGroupoid& x, std::size_t n, std::size_t bound) {
    std::vector<std::size_t> ending(x.object_count(), 1), sizes{x.object_count()};
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::size_t> next(x.object_count(), 0);
        for (MorphismId m = 0; m < x.morphism_count(); ++m) {
            if (x.identity(x.source(m)) == m) continue;
            auto& c = next[x.target(m)];
            c = std::min(bound + 1, c + ending[x.source(m)]);
        }
        std::size_t total = 0;
        for (auto c : next) total = std::min(bound + 1, total + c);
        sizes.push_back(total);
        ending = std::move(next);
    }
    return sizes;
}

inline ChainComplex nerve(const FiniteGroupoid& x, std::size_t n, std::size_t bound = default_nerve_bound) {
    auto sizes = nerve_sizes(x, n, bound);
    for (std::size_t k = 0; k <= n; ++k)
        if (sizes[k] > bound) throw BoundExceeded("nerve simplices in degree " + std::to_string(k), bound, sizes[k]);

    ChainComplex c;
    c.ranks.push_back(x.object_count());
    c.boundary.emplace_back(0, x.object_count());
    c.simplices.emplace_back();  // degree 0 is the object list
    std::vector<std::vector<MorphismId>> prev;
    std::unordered_map<std::vector<MorphismId>, std::size_t, detail::VectorHash> prev_index;
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<MorphismId>> level;
        if (k == 1) {
            for (MorphismId m = 0; m < x.morphism_count(); ++m)
                if (x.identity(x.source(m)) != m) level.push_back({m});
        } else {
            for (const auto& s : prev)
                for (MorphismId m : x.out(x.target(s.back()))) {
                    if (x.identity(x.source(m)) == m) continue;
                    level.push_back(s);
                    level.back().push_back(m);
                }
        }
        IntMatrix d(c.ranks.back(), level.size());
        for (std::size_t j = 0; j < level.size(); ++j) {
            const auto& s = level[j];
            if (k == 1) {
                d.add(x.target(s[0]), j, 1);
                d.add(x.source(s[0]), j, -1);
                continue;
            }
            std::vector<MorphismId> face;
            for (std::size_t i = 0; i <= k; ++i) {
                face.clear();
                bool degenerate = false;
                for (std::size_t p = 0; p < k; ++p) {
                    if (i == 0 && p == 0) continue;
                    if (i == k && p == k - 1) continue;
                    if (i > 0 && i < k && p == i) {
                        MorphismId comp = x.compose(s[i], s[i - 1]);
                        face.back() = comp;
                        degenerate = x.identity(x.source(comp)) == comp;
                        continue;
                    }
                    face.push_back(s[p]);
                }
                if (degenerate) continue;
                d.add(prev_index.at(face), j, (i % 2 == 0) ? 1 : -1);
            }
        }
        c.ranks.push_back(level.size());
        c.boundary.push_back(std::move(d));
        prev_index.clear();
        for (std::size_t j = 0; j < level.size(); ++j) prev_index.emplace(level[j], j);
        prev = level;
        c.simplices.push_back(std::move(level));
    }
    for (std::size_t k = 2; k <= n; ++k)
        if ((c.boundary[k - 1] * c.boundary[k]).nonzeros() != 0)
            throw VerificationFailure("nerve boundary does not square to zero in degree " + std::to_string(k));
    return c;
}

struct HomologyGroup {
    std::size_t degree = 0;
    std::size_t betti = 0;
    std::vector<Integer> torsion;  // each > 1, dividing the next

    friend bool operator==(const HomologyGroup&, const HomologyGroup&) = default;
};

// Invariant factors of ⊕ Z/orders[i]; zeros and ones are dropped.
inline std::vector<Integer> invariant_factors(const std::vector<Integer>& orders) {
    IntMatrix d(orders.size(), orders.size());
    for (std::size_t i = 0; i < orders.size(); ++i) d.set(i, i, orders[i]);
    std::vector<Integer> out;
    for (auto& f : smith_normal_form(d).factors)
        if (f > 1) out.push_back(f);
    return out;
}

inline std::string format_group(const HomologyGroup& h) {
    std::vector<std::string> parts;
    if (h.betti == 1) parts.push_back("Z");
    if (h.betti > 1) parts.push_back("Z^" + std::to_string(h.betti));
    for (const auto& t : h.torsion) parts.push_back("Z/" + t.str());
    if (parts.empty()) return "0";
    std::string s = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) s += " ⊕ " + parts[i];
    return s;
}

inline std::string to_string(const HomologyGroup& h) { return "H_" + std::to_string(h.degree) + " = " + format_group(h); }

// H_k = ker ∂_k / im ∂_{k+1}; needs boundaries up to degree k_max + 1.
inline std::vector<HomologyGroup> homology(const ChainComplex& c, std::size_t k_max) {
    if (c.top() < k_max + 1) throw InvalidInput("homology: chain complex too short for the requested degree");
    std::vector<SmithForm> snf(k_max + 2);
    for (std::size_t k = 1; k <= k_max + 1; ++k) snf[k] = smith_normal_form(c.boundary[k]);
    std::vector<HomologyGroup> out;
    for (std::size_t k = 0; k <= k_max; ++k) {
        HomologyGroup h;
        h.degree = k;
        std::size_t in_rank = k == 0 ? 0 : snf[k].rank();
        h.betti = c.ranks[k] - in_rank - snf[k + 1].rank();
        for (const auto& f : snf[k + 1].factors)
            if (f > 1) h.torsion.push_back(f);
        out.push_back(std::move(h));
    }
    return out;
}

inline std::vector<HomologyGroup> homology(const FiniteGroupoid& x, std::size_t k_max = 3,
                                           std::size_t bound = default_nerve_bound) {
    return homology(nerve(x, k_max + 1, bound), k_max);
}

// B Z/n from the 2-periodic free resolution of Z over Z[Z/n]:
// ... -N-> Z[G] -(t-1)-> Z[G] -N-> Z[G] -(t-1)-> Z[G] -> Z.
// Tensoring with the trivial module turns t-1 into 0 and the norm N into n.
inline std::vector<HomologyGroup> cyclic_group_homology_oracle(std::size_t n, std::size_t k_max) {
    if (n == 0) throw InvalidInput("cyclic_group_homology_oracle: n must be positive");
    // entry of the 1×1 map Z -> Z in degree k ≥ 1
    auto map_in = [&](std::size_t k) -> std::size_t { return k % 2 == 1 ? 0 : n; };
    std::vector<HomologyGroup> out;
    for (std::size_t k = 0; k <= k_max; ++k) {
        HomologyGroup h;
        h.degree = k;
        bool cycle = k == 0 || map_in(k) == 0;
        std::size_t image = map_in(k + 1);
        if (cycle && image == 0) h.betti = 1;
        if (cycle && image > 1) h.torsion.push_back(Integer(image));
        out.push_back(std::move(h));
    }
    return out;
}

} // namespace mapstack
