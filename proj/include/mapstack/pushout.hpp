#pragma once

#include <deque>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "mapping.hpp"

namespace mapstack {

enum class PushoutStatus { finite, aborted };

// Strict pushout of y <- a -> z. The morphisms of the result are words in the
// morphisms of y and z modulo their composition tables and the identification
// f(α) = g(α); each morphism is stored with its shortlex normal form.
struct FinitePushout {
    GroupoidFunctor a_to_y, a_to_z;
    PushoutStatus status = PushoutStatus::aborted;
    std::size_t explored = 0;  // enumeration nodes created before completing or aborting
    GroupoidRef groupoid;
    GroupoidFunctor from_y, from_z;

    // Generator g is a merged label of morphisms of y (ids < |Mor y|) and
    // z (offset by |Mor y|).
    std::vector<std::uint32_t> generator_of;   // raw morphism -> generator
    std::vector<MorphismId> generator_sample;  // generator -> one raw morphism
    std::vector<std::vector<std::uint32_t>> words;  // per morphism, generator sequence
    std::vector<std::vector<std::uint32_t>> tree_words;  // per object, word of the chosen path from its base

    bool finite() const { return status == PushoutStatus::finite; }
};

namespace detail {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (b < a) std::swap(a, b);
        parent[b] = a;
        return true;
    }
};

// Coset enumeration over a groupoid presentation. Nodes stand for morphisms
// out of a base object; generators act by postcomposition.
class NodeTable {
public:
    explicit NodeTable(const std::vector<std::uint32_t>& gen_inverse) : gen_inverse_(gen_inverse) {}

    std::uint32_t add(std::uint32_t end) {
        parent_.push_back(static_cast<std::uint32_t>(parent_.size()));
        end_.push_back(end);
        edges_.emplace_back();
        return static_cast<std::uint32_t>(parent_.size() - 1);
    }
    std::size_t created() const { return parent_.size(); }
    std::uint32_t find(std::uint32_t n) {
        while (parent_[n] != n) n = parent_[n] = parent_[parent_[n]];
        return n;
    }
    bool alive(std::uint32_t n) const { return parent_[n] == n; }
    std::uint32_t end(std::uint32_t n) const { return end_[n]; }

    std::optional<std::uint32_t> act(std::uint32_t n, std::uint32_t gen) {
        n = find(n);
        auto it = edges_[n].find(gen);
        if (it == edges_[n].end()) return std::nullopt;
        return find(it->second);
    }

    // Applies gen to n, creating a node if undefined.
    std::uint32_t act_or_define(std::uint32_t n, std::uint32_t gen, std::uint32_t target_object) {
        if (auto m = act(n, gen)) return *m;
        n = find(n);
        std::uint32_t m = add(target_object);
        edges_[n][gen] = m;
        edges_[m][gen_inverse_[gen]] = n;
        return m;
    }

    void set_edge(std::uint32_t n, std::uint32_t gen, std::uint32_t m) {
        n = find(n);
        m = find(m);
        if (auto cur = act(n, gen)) {
            coincide(*cur, m);
            return;
        }
        edges_[n][gen] = m;
        if (auto back = act(m, gen_inverse_[gen])) {
            coincide(*back, n);
        } else {
            edges_[m][gen_inverse_[gen]] = n;
        }
    }

    void coincide(std::uint32_t a, std::uint32_t b) {
        std::deque<std::pair<std::uint32_t, std::uint32_t>> queue{{a, b}};
        while (!queue.empty()) {
            auto [x, y] = queue.front();
            queue.pop_front();
            x = find(x);
            y = find(y);
            if (x == y) continue;
            if (y < x) std::swap(x, y);
            parent_[y] = x;
            auto moved = std::move(edges_[y]);
            edges_[y].clear();
            for (auto [gen, t] : moved) {
                auto it = edges_[x].find(gen);
                if (it == edges_[x].end())
                    edges_[x][gen] = t;
                else if (find(it->second) != find(t))
                    queue.emplace_back(it->second, t);
            }
        }
    }

private:
    const std::vector<std::uint32_t>& gen_inverse_;
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> end_;
    std::vector<std::unordered_map<std::uint32_t, std::uint32_t>> edges_;
};

} // namespace detail

inline FinitePushout pushout(const GroupoidFunctor& a_to_y, const GroupoidFunctor& a_to_z, std::size_t bound = 10'000) {
    if (a_to_y.domain != a_to_z.domain) throw InvalidInput("pushout: legs have different domains");
    const auto& A = *a_to_y.domain;
    const auto& Y = *a_to_y.codomain;
    const auto& Z = *a_to_z.codomain;
    FinitePushout r;
    r.a_to_y = a_to_y;
    r.a_to_z = a_to_z;
    const std::size_t yo = Y.object_count(), ym = Y.morphism_count();
    const std::size_t zm = Z.morphism_count();

    // objects: y ⊔ z modulo f(a) ~ g(a)
    detail::UnionFind objects(yo + Z.object_count());
    for (ObjectId a = 0; a < A.object_count(); ++a)
        objects.unite(a_to_y.on_object(a), static_cast<std::uint32_t>(yo + a_to_z.on_object(a)));
    // generators: raw morphisms modulo f(α) ~ g(α)
    detail::UnionFind gens(ym + zm);
    for (MorphismId m = 0; m < A.morphism_count(); ++m)
        gens.unite(a_to_y.on_morphism(m), static_cast<std::uint32_t>(ym + a_to_z.on_morphism(m)));

    auto raw_source = [&](std::uint32_t raw) -> std::uint32_t {
        return raw < ym ? Y.source(raw) : static_cast<std::uint32_t>(yo + Z.source(raw - ym));
    };
    auto raw_target = [&](std::uint32_t raw) -> std::uint32_t {
        return raw < ym ? Y.target(raw) : static_cast<std::uint32_t>(yo + Z.target(raw - ym));
    };
    auto raw_inverse = [&](std::uint32_t raw) -> std::uint32_t {
        return raw < ym ? Y.inverse(raw) : static_cast<std::uint32_t>(ym + Z.inverse(raw - ym));
    };

    // dense numbering of object classes and generators
    std::vector<std::uint32_t> class_of(yo + Z.object_count());
    std::vector<std::uint32_t> class_rep;
    {
        std::unordered_map<std::uint32_t, std::uint32_t> seen;
        for (std::uint32_t o = 0; o < class_of.size(); ++o) {
            auto [it, fresh] = seen.emplace(objects.find(o), static_cast<std::uint32_t>(class_rep.size()));
            if (fresh) class_rep.push_back(o);
            class_of[o] = it->second;
        }
    }
    r.generator_of.resize(ym + zm);
    {
        std::unordered_map<std::uint32_t, std::uint32_t> seen;
        for (std::uint32_t raw = 0; raw < ym + zm; ++raw) {
            auto [it, fresh] = seen.emplace(gens.find(raw), static_cast<std::uint32_t>(r.generator_sample.size()));
            if (fresh) r.generator_sample.push_back(raw);
            r.generator_of[raw] = it->second;
        }
    }
    const std::size_t ng = r.generator_sample.size();
    std::vector<std::uint32_t> gen_source(ng), gen_target(ng), gen_inverse(ng);
    for (std::uint32_t g = 0; g < ng; ++g) {
        auto raw = r.generator_sample[g];
        gen_source[g] = class_of[raw_source(raw)];
        gen_target[g] = class_of[raw_target(raw)];
        gen_inverse[g] = r.generator_of[raw_inverse(raw)];
    }
    std::vector<bool> gen_is_identity(ng, false);
    for (ObjectId o = 0; o < yo; ++o) gen_is_identity[r.generator_of[Y.identity(o)]] = true;
    for (ObjectId o = 0; o < Z.object_count(); ++o) gen_is_identity[r.generator_of[ym + Z.identity(o)]] = true;

    // relations: (after, before, composite) triangles, grouped by start class
    struct Triangle {
        std::uint32_t after, before, composite;
    };
    std::vector<std::vector<Triangle>> triangles(class_rep.size());
    std::vector<std::vector<std::uint32_t>> gens_at(class_rep.size());
    for (std::uint32_t g = 0; g < ng; ++g) gens_at[gen_source[g]].push_back(g);
    auto add_triangles = [&](const FiniteGroupoid& G, std::uint32_t mor_offset) {
        for (MorphismId before = 0; before < G.morphism_count(); ++before)
            for (MorphismId after : G.out(G.target(before)))
                triangles[gen_source[r.generator_of[mor_offset + before]]].push_back(
                    {r.generator_of[mor_offset + after], r.generator_of[mor_offset + before],
                     r.generator_of[mor_offset + G.compose(after, before)]});
    };
    add_triangles(Y, 0);
    add_triangles(Z, static_cast<std::uint32_t>(ym));

    // class components under generators
    detail::UnionFind comp(class_rep.size());
    for (std::uint32_t g = 0; g < ng; ++g) comp.unite(gen_source[g], gen_target[g]);

    detail::NodeTable table(gen_inverse);
    std::vector<std::uint32_t> root_of_class(class_rep.size(), UINT32_MAX);
    std::vector<std::uint32_t> roots;
    for (std::uint32_t c = 0; c < class_rep.size(); ++c) {
        if (comp.find(c) != c) continue;
        std::uint32_t root = table.add(c);
        roots.push_back(root);
        root_of_class[c] = root;
        // scan and fill every node of this component until closed
        for (std::uint32_t n = root; n < table.created(); ++n) {
            if (table.created() > bound) {
                r.explored = table.created();
                return r;
            }
            if (!table.alive(n)) continue;
            std::uint32_t at = table.end(n);
            for (std::uint32_t g : gens_at[at])
                if (gen_is_identity[g]) table.set_edge(n, g, n);
            for (std::uint32_t g : gens_at[at]) table.act_or_define(n, g, gen_target[g]);
            for (const auto& t : triangles[at]) {
                if (!table.alive(n)) break;
                std::uint32_t m1 = table.act_or_define(n, t.before, gen_target[t.before]);
                std::uint32_t m2 = table.act_or_define(m1, t.after, gen_target[t.after]);
                table.set_edge(n, t.composite, m2);
            }
        }
    }
    r.explored = table.created();

    // BFS from each root in generator order yields shortlex normal forms
    std::vector<std::uint32_t> node_order;  // alive nodes in BFS order
    std::unordered_map<std::uint32_t, std::uint32_t> node_index;
    std::vector<std::vector<std::uint32_t>> node_word;
    std::vector<std::uint32_t> node_root;
    for (std::uint32_t root : roots) {
        root = table.find(root);
        std::deque<std::uint32_t> queue{root};
        node_index.emplace(root, static_cast<std::uint32_t>(node_order.size()));
        node_order.push_back(root);
        node_word.emplace_back();
        node_root.push_back(root);
        while (!queue.empty()) {
            auto n = queue.front();
            queue.pop_front();
            auto word = node_word[node_index[n]];
            for (std::uint32_t g : gens_at[table.end(n)]) {
                auto m = table.act(n, g);
                if (!m) throw VerificationFailure("pushout: incomplete enumeration table");
                if (node_index.count(*m)) continue;
                node_index.emplace(*m, static_cast<std::uint32_t>(node_order.size()));
                node_order.push_back(*m);
                auto w = word;
                w.push_back(g);
                node_word.push_back(std::move(w));
                node_root.push_back(root);
                queue.push_back(*m);
            }
        }
    }

    // per class: tree node = first node in BFS order ending there
    const std::size_t nobj = class_rep.size();
    std::vector<std::uint32_t> tree(nobj, UINT32_MAX);
    std::vector<std::vector<std::uint32_t>> nodes_ending(nobj);
    for (std::uint32_t i = 0; i < node_order.size(); ++i) {
        auto c = table.end(node_order[i]);
        if (tree[c] == UINT32_MAX) tree[c] = i;
        nodes_ending[c].push_back(i);
    }
    std::size_t total = 0;
    for (std::uint32_t c = 0; c < nobj; ++c) {
        // morphisms c -> c' correspond to nodes ending at c' in c's component
        for (std::uint32_t d = 0; d < nobj; ++d)
            if (comp.find(c) == comp.find(d)) total = detail::sat_add(total, nodes_ending[d].size());
    }
    if (total > bound) return r;

    // morphism (c, node i ending at d) means node_i ∘ tree_c⁻¹
    std::vector<MorphismRecord> mors;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> mor_data;  // (source class, node index)
    std::unordered_map<std::uint64_t, MorphismId> mor_id;
    for (std::uint32_t c = 0; c < nobj; ++c)
        for (std::uint32_t d = 0; d < nobj; ++d) {
            if (comp.find(c) != comp.find(d)) continue;
            for (std::uint32_t i : nodes_ending[d]) {
                mor_id.emplace((std::uint64_t{c} << 32) | i, static_cast<MorphismId>(mors.size()));
                mors.push_back({c, d});
                mor_data.emplace_back(c, i);
            }
        }

    auto apply_word = [&](std::uint32_t n, const std::vector<std::uint32_t>& w) {
        for (auto g : w) n = *table.act(n, g);
        return n;
    };
    auto apply_inverse_word = [&](std::uint32_t n, const std::vector<std::uint32_t>& w) {
        for (auto it = w.rbegin(); it != w.rend(); ++it) n = *table.act(n, gen_inverse[*it]);
        return n;
    };
    // μ = word(node_i) ∘ word(tree_c)⁻¹ acting on a node ending at c
    auto act_morphism = [&](MorphismId mu, std::uint32_t node) {
        auto [c, i] = mor_data[mu];
        return apply_word(apply_inverse_word(node, node_word[tree[c]]), node_word[i]);
    };
    auto morphism_of = [&](std::uint32_t source_class, std::uint32_t node) {
        return mor_id.at((std::uint64_t{source_class} << 32) | node_index.at(node));
    };

    FiniteGroupoid::Builder builder(nobj, mors);
    for (std::uint32_t c = 0; c < nobj; ++c) builder.set_identity(c, morphism_of(c, node_order[tree[c]]));
    for (MorphismId m = 0; m < mors.size(); ++m) {
        auto [c, i] = mor_data[m];
        // μ⁻¹ ∘ tree_d = tree_c ∘ node_i⁻¹ ∘ tree_d
        std::uint32_t d = mors[m].target;
        std::uint32_t n = apply_word(apply_inverse_word(node_order[tree[d]], node_word[i]), node_word[tree[c]]);
        builder.set_inverse(m, morphism_of(d, n));
    }
    builder.compose_with([&](MorphismId after, MorphismId before) {
        auto [c, i] = mor_data[before];
        return morphism_of(c, act_morphism(after, node_order[i]));
    });
    std::vector<std::string> ol(nobj), ml;
    for (std::uint32_t c = 0; c < nobj; ++c) {
        auto rep = class_rep[c];
        ol[c] = rep < yo ? Y.object_label(rep) : Z.object_label(rep - yo);
    }
    auto gen_label = [&](std::uint32_t g) {
        auto raw = r.generator_sample[g];
        return raw < ym ? Y.morphism_label(raw) : Z.morphism_label(raw - ym);
    };
    for (MorphismId m = 0; m < mors.size(); ++m) {
        auto [c, i] = mor_data[m];
        std::vector<std::uint32_t> w;
        // μ = node_i ∘ tree_c⁻¹ written right to left
        const auto& tw = node_word[tree[c]];
        auto push = [&](std::uint32_t g) {
            if (gen_is_identity[g]) return;
            if (!w.empty() && w.back() == gen_inverse[g])
                w.pop_back();
            else
                w.push_back(g);
        };
        for (auto it = tw.rbegin(); it != tw.rend(); ++it) push(gen_inverse[*it]);
        for (auto g : node_word[i]) push(g);
        std::string label;
        for (auto it = w.rbegin(); it != w.rend(); ++it) label += (label.empty() ? "" : "∘") + gen_label(*it);
        ml.push_back(label.empty() ? "id" : label);
        r.words.push_back(std::move(w));
    }
    builder.set_labels(std::move(ol), std::move(ml));
    r.groupoid = share(std::move(builder).build());
    for (std::uint32_t c = 0; c < nobj; ++c) r.tree_words.push_back(node_word[tree[c]]);

    auto leg = [&](const GroupoidRef& src, std::uint32_t obj_offset, std::uint32_t mor_offset) {
        GroupoidFunctor f{src, r.groupoid, {}, {}};
        for (ObjectId o = 0; o < src->object_count(); ++o) f.object_map.push_back(class_of[obj_offset + o]);
        for (MorphismId m = 0; m < src->morphism_count(); ++m) {
            std::uint32_t c = f.object_map[src->source(m)];
            std::uint32_t n = *table.act(node_order[tree[c]], r.generator_of[mor_offset + m]);
            f.morphism_map.push_back(morphism_of(c, n));
        }
        return f;
    };
    r.from_y = leg(a_to_y.codomain, 0, 0);
    r.from_z = leg(a_to_z.codomain, static_cast<std::uint32_t>(yo), static_cast<std::uint32_t>(ym));
    r.status = PushoutStatus::finite;
    return r;
}

// The functor out of a finite pushout determined by a cocone
// u: y -> w, v: z -> w with u∘f = v∘g.
inline GroupoidFunctor induced_functor(const FinitePushout& p, const GroupoidFunctor& u, const GroupoidFunctor& v) {
    if (!p.finite()) throw InvalidInput("induced_functor: pushout was aborted");
    if (compose(u, p.a_to_y) != compose(v, p.a_to_z)) throw InvalidInput("induced_functor: not a cocone");
    const auto& W = *u.codomain;
    const std::size_t ym = p.a_to_y.codomain->morphism_count();
    auto image = [&](std::uint32_t g) {
        auto raw = p.generator_sample[g];
        return raw < ym ? u.on_morphism(raw) : v.on_morphism(raw - ym);
    };
    GroupoidFunctor h{p.groupoid, u.codomain, std::vector<ObjectId>(p.groupoid->object_count()), {}};
    for (ObjectId o = 0; o < p.a_to_y.codomain->object_count(); ++o) h.object_map[p.from_y.on_object(o)] = u.on_object(o);
    for (ObjectId o = 0; o < p.a_to_z.codomain->object_count(); ++o) h.object_map[p.from_z.on_object(o)] = v.on_object(o);
    for (MorphismId m = 0; m < p.groupoid->morphism_count(); ++m) {
        MorphismId acc = W.identity(h.object_map[p.groupoid->source(m)]);
        for (auto g : p.words[m]) acc = W.compose(image(g), acc);
        h.morphism_map.push_back(acc);
    }
    return h;
}

// Fun(pushout, x) compared with the pullback of the two restrictions
// Fun(y, x) -> Fun(a, x) <- Fun(z, x). When one restriction is an
// isofibration the strict pullback already models the 2-pullback and is used;
// otherwise the iso-comma is built.
enum class GluingPullback { automatic, iso_comma };

struct GluingCheck {
    FunctorGroupoid glued, on_y, on_z, on_a;
    GroupoidFunctor restrict_y, restrict_z;
    bool strict = false;
    GroupoidRef pullback;
    GroupoidFunctor comparison;
    EquivalenceWitness witness;
};

inline GluingCheck gluing_check(const FinitePushout& p, const GroupoidRef& x, const EnumerationBounds& bounds = {},
                                GluingPullback mode = GluingPullback::automatic) {
    if (!p.finite()) throw InvalidInput("gluing_check: pushout was aborted");
    GluingCheck r;
    r.glued = functor_groupoid(p.groupoid, x, bounds);
    r.on_y = functor_groupoid(p.a_to_y.codomain, x, bounds);
    r.on_z = functor_groupoid(p.a_to_z.codomain, x, bounds);
    r.on_a = functor_groupoid(p.a_to_y.domain, x, bounds);
    r.restrict_y = restriction(p.a_to_y, r.on_y, r.on_a);
    r.restrict_z = restriction(p.a_to_z, r.on_z, r.on_a);
    auto to_y = restriction(p.from_y, r.glued, r.on_y);
    auto to_z = restriction(p.from_z, r.glued, r.on_z);
    r.strict = mode == GluingPullback::automatic && (!find_unliftable(r.restrict_y) || !find_unliftable(r.restrict_z));

    std::vector<std::pair<MorphismId, MorphismId>> pairs;
    GroupoidFunctor cmp{r.glued.groupoid, nullptr, {}, {}};
    if (r.strict) {
        auto sp = strict_pullback(r.restrict_y, r.restrict_z);
        r.pullback = sp.groupoid;
        pairs = sp.morphisms;
        for (ObjectId f = 0; f < r.glued.functors.size(); ++f) {
            auto it = std::find(sp.objects.begin(), sp.objects.end(), std::pair{to_y.on_object(f), to_z.on_object(f)});
            if (it == sp.objects.end()) throw VerificationFailure("gluing: restrictions of a glued functor disagree on the overlap");
            cmp.object_map.push_back(static_cast<ObjectId>(it - sp.objects.begin()));
        }
    } else {
        auto ic = iso_comma(r.restrict_y, r.restrict_z, bounds.table);
        r.pullback = ic.groupoid;
        pairs = ic.morphisms;
        for (ObjectId f = 0; f < r.glued.functors.size(); ++f) {
            ObjectId a = to_y.on_object(f), b = to_z.on_object(f);
            auto o = ic.find(a, b, r.on_a.groupoid->identity(r.restrict_y.on_object(a)));
            if (!o) throw VerificationFailure("gluing: restrictions of a glued functor disagree on the overlap");
            cmp.object_map.push_back(*o);
        }
    }
    cmp.codomain = r.pullback;
    for (MorphismId m = 0; m < r.glued.groupoid->morphism_count(); ++m) {
        std::pair want{to_y.on_morphism(m), to_z.on_morphism(m)};
        MorphismId found = no_morphism;
        for (MorphismId n : r.pullback->out(cmp.object_map[r.glued.groupoid->source(m)]))
            if (pairs[n] == want) found = n;
        if (found == no_morphism) throw VerificationFailure("gluing: comparison morphism missing");
        cmp.morphism_map.push_back(found);
    }
    std::string why;
    auto w = certify_equivalence(cmp, &why);
    if (!w) throw VerificationFailure("gluing comparison is not an equivalence: " + why);
    r.comparison = std::move(cmp);
    r.witness = std::move(*w);
    return r;
}

} // namespace mapstack
