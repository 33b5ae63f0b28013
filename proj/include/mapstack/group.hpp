#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace mapstack {

using Element = std::uint32_t;

// Images of the points 0..n-1.
using Permutation = std::vector<std::uint32_t>;

// Cycle notation on points 1..n, e.g. "(1 2 3)(4 5)"; the identity is "()".
inline std::string format_cycles(const Permutation& p) {
    std::string out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t start = 0; start < p.size(); ++start) {
        if (seen[start] || p[start] == start) continue;
        out += '(';
        std::size_t x = start;
        bool first = true;
        while (!seen[x]) {
            seen[x] = true;
            if (!first) out += ' ';
            out += std::to_string(x + 1);
            first = false;
            x = p[x];
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

// Parses cycle notation. Cycles are composed right to left, matching the
// group product convention (a*b)(x) = a(b(x)).
inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
    Permutation result(degree);
    std::iota(result.begin(), result.end(), 0u);
    std::vector<Permutation> cycles;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\t')) ++i;
    };
    skip_ws();
    if (text.substr(i) == "e" || text.substr(i) == "id") return result;
    while (i < text.size()) {
        if (text[i] != '(') throw ParseError("cycle notation: expected '(' in \"" + std::string(text) + "\"");
        ++i;
        std::vector<std::uint32_t> cyc;
        for (;;) {
            skip_ws();
            if (i >= text.size()) throw ParseError("cycle notation: unterminated cycle in \"" + std::string(text) + "\"");
            if (text[i] == ')') {
                ++i;
                break;
            }
            std::size_t j = i;
            while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
            if (j == i) throw ParseError("cycle notation: expected a point in \"" + std::string(text) + "\"");
            auto point = static_cast<std::uint32_t>(std::stoul(std::string(text.substr(i, j - i))));
            if (point == 0 || point > degree)
                throw ParseError("cycle notation: point " + std::to_string(point) + " outside 1.." + std::to_string(degree));
            if (std::find(cyc.begin(), cyc.end(), point - 1) != cyc.end())
                throw ParseError("cycle notation: repeated point in \"" + std::string(text) + "\"");
            cyc.push_back(point - 1);
            i = j;
        }
        Permutation c(degree);
        std::iota(c.begin(), c.end(), 0u);
        for (std::size_t k = 0; k < cyc.size(); ++k) c[cyc[k]] = cyc[(k + 1) % cyc.size()];
        cycles.push_back(std::move(c));
        skip_ws();
    }
    // rightmost cycle acts first
    for (auto it = cycles.rbegin(); it != cycles.rend(); ++it) {
        Permutation next(degree);
        for (std::size_t x = 0; x < degree; ++x) next[x] = (*it)[result[x]];
        result = std::move(next);
    }
    return result;
}

// Largest point mentioned in a cycle string (0 if none).
inline std::size_t cycle_degree(std::string_view text) {
    std::size_t best = 0, i = 0;
    while (i < text.size()) {
        if (text[i] >= '0' && text[i] <= '9') {
            std::size_t j = i;
            while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
            best = std::max<std::size_t>(best, std::stoul(std::string(text.substr(i, j - i))));
            i = j;
        } else {
            ++i;
        }
    }
    return best;
}

using GroupTable = std::vector<std::vector<Element>>;

// Checks closure, identity, inverses and associativity of a multiplication
// table. Returns one message per violation, each with a witness.
inline std::vector<std::string> validate_group_table(const GroupTable& table) {
    std::vector<std::string> problems;
    const std::size_t n = table.size();
    if (n == 0) {
        problems.emplace_back("empty element set");
        return problems;
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (table[a].size() != n) {
            problems.push_back("row " + std::to_string(a) + " has " + std::to_string(table[a].size()) +
                               " entries, expected " + std::to_string(n));
            return problems;
        }
        for (std::size_t b = 0; b < n; ++b)
            if (table[a][b] >= n)
                problems.push_back("product " + std::to_string(a) + "*" + std::to_string(b) + " = " +
                                   std::to_string(table[a][b]) + " is not an element");
    }
    if (!problems.empty()) return problems;

    std::optional<Element> identity;
    for (Element e = 0; e < n && !identity; ++e) {
        bool ok = true;
        for (Element a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
        if (ok) identity = e;
    }
    if (!identity) {
        problems.emplace_back("no two-sided identity element");
        return problems;
    }
    for (Element a = 0; a < n; ++a) {
        bool has_inverse = false;
        for (Element b = 0; b < n && !has_inverse; ++b)
            has_inverse = table[a][b] == *identity && table[b][a] == *identity;
        if (!has_inverse) problems.push_back("element " + std::to_string(a) + " has no inverse");
    }
    for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
            for (Element c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]]) {
                    problems.push_back("associativity fails for (" + std::to_string(a) + ", " + std::to_string(b) +
                                       ", " + std::to_string(c) + ")");
                    return problems;
                }
    return problems;
}

class FiniteGroup {
public:
    // The trivial group.
    FiniteGroup() : order_(1), identity_(0), table_{0}, inverse_{0}, labels_{"e"} {}

    static FiniteGroup from_table(const GroupTable& table, std::vector<std::string> labels = {}) {
        auto problems = validate_group_table(table);
        if (!problems.empty()) throw InvalidInput("invalid group table: " + problems.front());
        FiniteGroup g;
        g.order_ = table.size();
        g.table_.assign(g.order_ * g.order_, 0);
        for (std::size_t a = 0; a < g.order_; ++a)
            for (std::size_t b = 0; b < g.order_; ++b) g.table_[a * g.order_ + b] = table[a][b];
        for (Element e = 0; e < g.order_; ++e)
            if (table[e][e] == e) g.identity_ = e;
        g.finish(std::move(labels));
        return g;
    }

    // Closure of the given permutations of {0..degree-1}. Elements are listed
    // identity first, then in breadth-first order over the generators.
    static FiniteGroup from_permutations(const std::vector<Permutation>& gens, std::size_t degree,
                                         std::size_t max_order = 100000) {
        Permutation id(degree);
        std::iota(id.begin(), id.end(), 0u);
        for (const auto& s : gens)
            if (s.size() != degree) throw InvalidInput("generator has wrong degree");
        std::vector<Permutation> elems{id};
        std::map<Permutation, Element> index{{id, 0}};
        auto compose = [degree](const Permutation& a, const Permutation& b) {
            Permutation r(degree);
            for (std::size_t x = 0; x < degree; ++x) r[x] = a[b[x]];
            return r;
        };
        for (std::size_t q = 0; q < elems.size(); ++q) {
            for (const auto& s : gens) {
                Permutation p = compose(s, elems[q]);
                if (index.emplace(p, static_cast<Element>(elems.size())).second) {
                    elems.push_back(std::move(p));
                    if (elems.size() > max_order) throw BoundExceeded("permutation group closure", max_order);
                }
            }
        }
        FiniteGroup g;
        g.order_ = elems.size();
        g.identity_ = 0;
        g.table_.assign(g.order_ * g.order_, 0);
        for (std::size_t a = 0; a < g.order_; ++a)
            for (std::size_t b = 0; b < g.order_; ++b) g.table_[a * g.order_ + b] = index.at(compose(elems[a], elems[b]));
        std::vector<std::string> labels;
        for (const auto& p : elems) labels.push_back(format_cycles(p));
        for (const auto& s : gens) g.perm_generators_.push_back(index.at(s));
        g.permutations_ = std::move(elems);
        g.finish(std::move(labels));
        return g;
    }

    static FiniteGroup from_cycle_strings(const std::vector<std::string>& gens, std::size_t degree = 0) {
        for (const auto& s : gens) degree = std::max(degree, cycle_degree(s));
        std::vector<Permutation> perms;
        for (const auto& s : gens) perms.push_back(parse_cycles(s, degree));
        return from_permutations(perms, degree);
    }

    std::size_t order() const noexcept { return order_; }
    Element identity() const noexcept { return identity_; }
    Element multiply(Element a, Element b) const { return table_[a * order_ + b]; }
    Element inverse(Element a) const { return inverse_[a]; }
    Element conjugate(Element by, Element a) const { return multiply(multiply(by, a), inverse(by)); }
    const std::string& label(Element a) const { return labels_[a]; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    std::size_t element_order(Element a) const { return orders_[a]; }
    bool is_abelian() const {
        for (Element a = 0; a < order_; ++a)
            for (Element b = 0; b < order_; ++b)
                if (multiply(a, b) != multiply(b, a)) return false;
        return true;
    }

    std::optional<Element> find(std::string_view label) const {
        for (Element a = 0; a < order_; ++a)
            if (labels_[a] == label) return a;
        if (!permutations_.empty()) {
            try {
                auto p = parse_cycles(label, permutations_.front().size());
                for (Element a = 0; a < order_; ++a)
                    if (permutations_[a] == p) return a;
            } catch (const ParseError&) {
            }
        }
        return std::nullopt;
    }

    // Deterministic small generating set: greedily adds the element of
    // largest order (least index on ties) outside the current subgroup.
    const std::vector<Element>& generators() const noexcept { return generators_; }
    // Generators from a permutation presentation; empty for table input.
    const std::vector<Element>& presentation_generators() const noexcept { return perm_generators_; }
    const std::vector<Permutation>& permutations() const noexcept { return permutations_; }

    GroupTable table() const {
        GroupTable t(order_, std::vector<Element>(order_));
        for (Element a = 0; a < order_; ++a)
            for (Element b = 0; b < order_; ++b) t[a][b] = multiply(a, b);
        return t;
    }

    // Subgroup generated by `gens`, as a sorted element list.
    std::vector<Element> generated_subgroup(const std::vector<Element>& gens) const {
        std::vector<bool> in(order_, false);
        std::vector<Element> elems{identity_};
        in[identity_] = true;
        for (std::size_t q = 0; q < elems.size(); ++q)
            for (Element s : gens) {
                Element p = multiply(s, elems[q]);
                if (!in[p]) {
                    in[p] = true;
                    elems.push_back(p);
                }
            }
        std::sort(elems.begin(), elems.end());
        return elems;
    }

private:
    void finish(std::vector<std::string> labels) {
        inverse_.assign(order_, 0);
        for (Element a = 0; a < order_; ++a)
            for (Element b = 0; b < order_; ++b)
                if (multiply(a, b) == identity_) inverse_[a] = b;
        orders_.assign(order_, 1);
        for (Element a = 0; a < order_; ++a) {
            Element p = a;
            std::size_t k = 1;
            while (p != identity_) {
                p = multiply(p, a);
                ++k;
            }
            orders_[a] = k;
        }
        if (labels.size() != order_) {
            labels.clear();
            for (Element a = 0; a < order_; ++a) labels.push_back(a == identity_ ? "e" : "g" + std::to_string(a));
        }
        labels_ = std::move(labels);

        generators_.clear();
        std::vector<bool> in(order_, false);
        in[identity_] = true;
        std::size_t covered = 1;
        while (covered < order_) {
            Element best = identity_;
            std::size_t best_order = 0;
            for (Element a = 0; a < order_; ++a)
                if (!in[a] && orders_[a] > best_order) {
                    best = a;
                    best_order = orders_[a];
                }
            generators_.push_back(best);
            auto sub = generated_subgroup(generators_);
            std::fill(in.begin(), in.end(), false);
            for (Element x : sub) in[x] = true;
            covered = sub.size();
        }
    }

    std::size_t order_;
    Element identity_;
    std::vector<Element> table_;
    std::vector<Element> inverse_;
    std::vector<std::string> labels_;
    std::vector<std::size_t> orders_;
    std::vector<Element> generators_;
    std::vector<Element> perm_generators_;
    std::vector<Permutation> permutations_;
};

// A subgroup together with its embedding into the ambient group.
struct Subgroup {
    FiniteGroup group;
    std::vector<Element> embedding;
};

// `elements` must be closed under multiplication.
inline Subgroup make_subgroup(const FiniteGroup& g, std::vector<Element> elements) {
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    std::map<Element, Element> local;
    for (std::size_t i = 0; i < elements.size(); ++i) local[elements[i]] = static_cast<Element>(i);
    GroupTable t(elements.size(), std::vector<Element>(elements.size()));
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        labels.push_back(g.label(elements[i]));
        for (std::size_t j = 0; j < elements.size(); ++j) {
            auto it = local.find(g.multiply(elements[i], elements[j]));
            if (it == local.end()) throw InvalidInput("subset is not closed under multiplication");
            t[i][j] = it->second;
        }
    }
    return {FiniteGroup::from_table(t, std::move(labels)), std::move(elements)};
}

inline std::vector<Element> centralizer(const FiniteGroup& g, Element alpha) {
    std::vector<Element> z;
    for (Element h = 0; h < g.order(); ++h)
        if (g.multiply(h, alpha) == g.multiply(alpha, h)) z.push_back(h);
    return z;
}

// Extends generator images to a homomorphism, or returns nullopt when the
// assignment does not extend.
inline std::optional<std::vector<Element>> extend_homomorphism(const FiniteGroup& from, const FiniteGroup& to,
                                                               const std::vector<Element>& gens,
                                                               const std::vector<Element>& images) {
    constexpr Element unset = static_cast<Element>(-1);
    std::vector<Element> phi(from.order(), unset);
    phi[from.identity()] = to.identity();
    std::vector<Element> queue{from.identity()};
    for (std::size_t q = 0; q < queue.size(); ++q) {
        Element g = queue[q];
        for (std::size_t i = 0; i < gens.size(); ++i) {
            Element sg = from.multiply(gens[i], g);
            Element val = to.multiply(images[i], phi[g]);
            if (phi[sg] == unset) {
                phi[sg] = val;
                queue.push_back(sg);
            } else if (phi[sg] != val) {
                return std::nullopt;
            }
        }
    }
    if (queue.size() != from.order()) return std::nullopt;
    // every generator edge out of every element has been checked above
    return phi;
}

// All homomorphisms from -> to, in lexicographic order of generator images.
inline std::vector<std::vector<Element>> enumerate_homomorphisms(const FiniteGroup& from, const FiniteGroup& to) {
    const auto& gens = from.generators();
    std::vector<std::vector<Element>> candidates(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (Element h = 0; h < to.order(); ++h)
            if (from.element_order(gens[i]) % to.element_order(h) == 0) candidates[i].push_back(h);
    std::vector<std::vector<Element>> result;
    std::vector<Element> images(gens.size());
    std::vector<std::size_t> pos(gens.size(), 0);
    if (gens.empty()) {
        result.push_back(std::vector<Element>(from.order(), to.identity()));
        return result;
    }
    for (;;) {
        for (std::size_t i = 0; i < gens.size(); ++i) images[i] = candidates[i][pos[i]];
        if (auto phi = extend_homomorphism(from, to, gens, images)) result.push_back(std::move(*phi));
        std::size_t k = gens.size();
        while (k > 0) {
            --k;
            if (++pos[k] < candidates[k].size()) break;
            pos[k] = 0;
            if (k == 0) return result;
        }
    }
}

inline std::size_t count_homomorphisms(const FiniteGroup& from, const FiniteGroup& to) {
    return enumerate_homomorphisms(from, to).size();
}

// Brute-force isomorphism search over generator images, pruned by element
// order profiles. Throws BoundExceeded when |G| exceeds `order_bound`.
inline std::optional<std::vector<Element>> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                                            std::size_t order_bound = 200) {
    if (g.order() != h.order()) return std::nullopt;
    if (g.order() > order_bound) throw BoundExceeded("group isomorphism search", order_bound, g.order());
    std::vector<std::size_t> pg, ph;
    for (Element a = 0; a < g.order(); ++a) pg.push_back(g.element_order(a));
    for (Element a = 0; a < h.order(); ++a) ph.push_back(h.element_order(a));
    std::sort(pg.begin(), pg.end());
    std::sort(ph.begin(), ph.end());
    if (pg != ph) return std::nullopt;

    const auto& gens = g.generators();
    if (gens.empty()) return std::vector<Element>{h.identity()};
    std::vector<std::vector<Element>> candidates(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (Element b = 0; b < h.order(); ++b)
            if (h.element_order(b) == g.element_order(gens[i])) candidates[i].push_back(b);
    std::vector<Element> images(gens.size());
    std::optional<std::vector<Element>> found;
    auto search = [&](auto&& self, std::size_t depth) -> void {
        if (found) return;
        if (depth == gens.size()) {
            auto phi = extend_homomorphism(g, h, gens, images);
            if (!phi) return;
            std::vector<bool> hit(h.order(), false);
            for (Element x : *phi) hit[x] = true;
            if (std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) found = std::move(phi);
            return;
        }
        for (Element b : candidates[depth]) {
            images[depth] = b;
            self(self, depth + 1);
            if (found) return;
        }
    };
    search(search, 0);
    return found;
}

// Invariant factors d1 | d2 | ... (all > 1) of a finite abelian group,
// read off from counts of elements annihilated by prime powers.
inline std::vector<std::uint64_t> abelian_invariants(const FiniteGroup& g) {
    if (!g.is_abelian()) throw InvalidInput("abelian_invariants: group is not abelian");
    std::size_t n = g.order();
    auto power = [&](Element a, std::uint64_t k) {
        Element r = g.identity();
        for (std::uint64_t i = 0; i < k; ++i) r = g.multiply(r, a);
        return r;
    };
    std::vector<std::vector<std::uint64_t>> primary;  // per prime, exponents p^e descending
    std::size_t rest = n;
    for (std::uint64_t p = 2; rest > 1; ++p) {
        if (rest % p != 0) continue;
        while (rest % p == 0) rest /= p;
        // c[k] = #{a : a^(p^k) = e}
        std::vector<std::size_t> c{1};
        std::uint64_t pk = 1;
        for (;;) {
            pk *= p;
            std::size_t count = 0;
            for (Element a = 0; a < n; ++a)
                if (power(a, pk) == g.identity()) ++count;
            c.push_back(count);
            if (count == c[c.size() - 2]) break;
        }
        // number of cyclic factors of order >= p^k is log_p(c[k]/c[k-1])
        std::vector<std::size_t> at_least;
        for (std::size_t k = 1; k < c.size(); ++k) {
            std::size_t ratio = c[k] / c[k - 1], r = 0;
            while (ratio > 1) {
                ratio /= p;
                ++r;
            }
            at_least.push_back(r);
        }
        std::vector<std::uint64_t> powers;
        for (std::size_t k = 0; k < at_least.size(); ++k) {
            std::size_t exactly = at_least[k] - (k + 1 < at_least.size() ? at_least[k + 1] : 0);
            std::uint64_t q = 1;
            for (std::size_t j = 0; j <= k; ++j) q *= p;
            for (std::size_t j = 0; j < exactly; ++j) powers.push_back(q);
        }
        std::sort(powers.rbegin(), powers.rend());
        primary.push_back(std::move(powers));
    }
    std::size_t length = 0;
    for (const auto& v : primary) length = std::max(length, v.size());
    std::vector<std::uint64_t> factors(length, 1);
    for (const auto& v : primary)
        for (std::size_t i = 0; i < v.size(); ++i) factors[i] *= v[i];
    std::reverse(factors.begin(), factors.end());
    return factors;
}

// G / [G, G].
inline FiniteGroup abelianization(const FiniteGroup& g) {
    std::vector<Element> commutators;
    for (Element a = 0; a < g.order(); ++a)
        for (Element b = 0; b < g.order(); ++b)
            commutators.push_back(g.multiply(g.multiply(a, b), g.multiply(g.inverse(a), g.inverse(b))));
    auto derived = g.generated_subgroup(commutators);
    std::vector<bool> in_derived(g.order(), false);
    for (Element x : derived) in_derived[x] = true;
    constexpr Element unset = static_cast<Element>(-1);
    std::vector<Element> coset(g.order(), unset);
    std::vector<Element> reps;
    for (Element a = 0; a < g.order(); ++a) {
        if (coset[a] != unset) continue;
        auto id = static_cast<Element>(reps.size());
        reps.push_back(a);
        for (Element d : derived) coset[g.multiply(a, d)] = id;
    }
    GroupTable t(reps.size(), std::vector<Element>(reps.size()));
    for (std::size_t i = 0; i < reps.size(); ++i)
        for (std::size_t j = 0; j < reps.size(); ++j) t[i][j] = coset[g.multiply(reps[i], reps[j])];
    std::vector<std::string> labels;
    for (Element r : reps) labels.push_back("[" + g.label(r) + "]");
    return FiniteGroup::from_table(t, std::move(labels));
}

namespace groups {

inline FiniteGroup trivial() { return FiniteGroup(); }

inline FiniteGroup cyclic(std::size_t n) {
    if (n == 0) throw InvalidInput("cyclic group of order 0");
    GroupTable t(n, std::vector<Element>(n));
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < n; ++a) {
        labels.push_back(std::to_string(a));
        for (std::size_t b = 0; b < n; ++b) t[a][b] = static_cast<Element>((a + b) % n);
    }
    return FiniteGroup::from_table(t, std::move(labels));
}

inline FiniteGroup symmetric(std::size_t n) {
    if (n <= 1) return trivial();
    std::string cycle = "(";
    for (std::size_t i = 1; i <= n; ++i) cycle += std::to_string(i) + (i < n ? " " : ")");
    if (n == 2) return FiniteGroup::from_cycle_strings({"(1 2)"});
    return FiniteGroup::from_cycle_strings({"(1 2)", cycle});
}

inline FiniteGroup alternating(std::size_t n) {
    if (n <= 2) return trivial();
    std::vector<std::string> gens;
    for (std::size_t k = 3; k <= n; ++k) gens.push_back("(1 2 " + std::to_string(k) + ")");
    return FiniteGroup::from_cycle_strings(gens, n);
}

// Symmetries of the n-gon, order 2n.
inline FiniteGroup dihedral(std::size_t n) {
    std::string rot = "(";
    for (std::size_t i = 1; i <= n; ++i) rot += std::to_string(i) + (i < n ? " " : ")");
    std::string refl;
    for (std::size_t i = 1; i < n + 1 - i; ++i) refl += "(" + std::to_string(i) + " " + std::to_string(n + 1 - i) + ")";
    return FiniteGroup::from_cycle_strings({rot, refl.empty() ? "()" : refl}, n);
}

// Quaternion group {±1, ±i, ±j, ±k}.
inline FiniteGroup quaternion() {
    // unit index 0..3 = 1, i, j, k; unit_mul[a][b] = (unit, negate)
    static constexpr std::pair<int, bool> unit_mul[4][4] = {
        {{0, false}, {1, false}, {2, false}, {3, false}},
        {{1, false}, {0, true}, {3, false}, {2, true}},
        {{2, false}, {3, true}, {0, true}, {1, false}},
        {{3, false}, {2, false}, {1, true}, {0, true}},
    };
    const char* names[4] = {"1", "i", "j", "k"};
    GroupTable t(8, std::vector<Element>(8));
    std::vector<std::string> labels;
    for (Element a = 0; a < 8; ++a) {
        labels.push_back(std::string(a % 2 ? "-" : "") + names[a / 2]);
        for (Element b = 0; b < 8; ++b) {
            auto [u, neg] = unit_mul[a / 2][b / 2];
            bool sign = neg ^ (a % 2 == 1) ^ (b % 2 == 1);
            t[a][b] = static_cast<Element>(2 * u + (sign ? 1 : 0));
        }
    }
    return FiniteGroup::from_table(t, std::move(labels));
}

inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    std::size_t n = a.order() * b.order();
    GroupTable t(n, std::vector<Element>(n));
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < n; ++x) {
        labels.push_back("(" + a.label(static_cast<Element>(x / b.order())) + "," +
                         b.label(static_cast<Element>(x % b.order())) + ")");
        for (std::size_t y = 0; y < n; ++y) {
            auto l = a.multiply(static_cast<Element>(x / b.order()), static_cast<Element>(y / b.order()));
            auto r = b.multiply(static_cast<Element>(x % b.order()), static_cast<Element>(y % b.order()));
            t[x][y] = static_cast<Element>(l * b.order() + r);
        }
    }
    return FiniteGroup::from_table(t, std::move(labels));
}

} // namespace groups

} // namespace mapstack
