#include "qci/graph_aut.hpp"

#include <algorithm>

namespace qci {

std::vector<int> Coloring::class_sizes() const {
    std::vector<int> sizes(num_classes, 0);
    for (int c : color) sizes[c]++;
    return sizes;
}

namespace {

// Rank colors by value so that ids are a deterministic, isomorphism-
// equivariant function of the partition.
Coloring normalize(std::vector<int> raw) {
    std::vector<int> values = raw;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (int& c : raw)
        c = static_cast<int>(std::lower_bound(values.begin(), values.end(), c) -
                             values.begin());
    return Coloring{std::move(raw), static_cast<int>(values.size())};
}

std::vector<VertexSet> class_masks(const Coloring& c) {
    std::vector<VertexSet> masks(c.num_classes);
    for (int v = 0; v < static_cast<int>(c.color.size()); ++v)
        masks[c.color[v]].set(v);
    return masks;
}

bool apply_and_check(const Digraph& g, const Perm& p) {
    // Full out-row equality covers arcs and non-arcs in both directions.
    for (int v = 0; v < g.n; ++v) {
        VertexSet mapped;
        g.out[v].for_each([&](int u) { mapped.set(p[u]); });
        if (!(mapped == g.out[p[v]])) return false;
    }
    return true;
}

} // namespace

Coloring refine(const Digraph& g, const Coloring& initial) {
    Coloring cur = normalize(initial.color);
    const int n = g.n;
    while (true) {
        std::vector<VertexSet> masks = class_masks(cur);
        std::vector<std::vector<int>> sig(n);
        for (int v = 0; v < n; ++v) {
            auto& s = sig[v];
            s.reserve(1 + 2 * cur.num_classes);
            s.push_back(cur.color[v]);
            for (int c = 0; c < cur.num_classes; ++c) {
                s.push_back((g.out[v] & masks[c]).count());
                s.push_back((g.in[v] & masks[c]).count());
            }
        }
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[v] = v;
        std::sort(order.begin(), order.end(), [&](int x, int y) {
            return sig[x] < sig[y];
        });
        std::vector<int> next(n);
        int cls = 0;
        next[order[0]] = 0;
        for (int i = 1; i < n; ++i) {
            if (sig[order[i]] != sig[order[i - 1]]) ++cls;
            next[order[i]] = cls;
        }
        int next_classes = cls + 1;
        bool stable = next_classes == cur.num_classes;
        cur = Coloring{std::move(next), next_classes};
        if (stable) return cur;
    }
}

Coloring individualize_and_refine(const Digraph& g, const Coloring& initial, int v) {
    std::vector<int> raw = initial.color;
    raw[v] = initial.num_classes; // fresh id, same on both search sides
    return refine(g, Coloring{std::move(raw), initial.num_classes + 1});
}

namespace {

class AutSearch {
public:
    AutSearch(const Digraph& g, const AutSearchOptions& opts)
        : g_(g), opts_(opts) {}

    AutSearchResult run() {
        for (const auto& s : opts_.seeds) {
            if (s.degree() != g_.n)
                throw DegreeMismatch("automorphism search: seed degree mismatch");
            if (!apply_and_check(g_, s))
                throw ConsistencyFailure("automorphism search: invalid seed");
        }

        build_base_path();

        BigCount order = BigCount::one();
        gens_.clear();
        gen_levels_.clear();
        for (int lvl = depth() - 1; lvl >= 0; --lvl)
            order.mul(count_level(lvl));

        std::vector<Perm> all_gens = opts_.seeds;
        all_gens.insert(all_gens.end(), gens_.begin(), gens_.end());
        for (const auto& gen : all_gens)
            if (!apply_and_check(g_, gen))
                throw ConsistencyFailure("automorphism search: emitted invalid generator");
        PermGroup group = PermGroup::with_known_order(g_.n, std::move(all_gens),
                                                      order, opts_.closure_cap);
        return AutSearchResult{std::move(group), order, nodes_};
    }

private:
    int depth() const { return static_cast<int>(base_vertex_.size()); }

    void tick() {
        if (++nodes_ > opts_.node_cap)
            throw BudgetExceeded("automorphism search: node cap " +
                                 std::to_string(opts_.node_cap) + " exceeded");
    }

    void build_base_path() {
        tick();
        base_.push_back(refine(g_, Coloring::uniform(g_.n)));
        while (!base_.back().discrete()) {
            const Coloring& c = base_.back();
            auto sizes = c.class_sizes();
            int cls = 0;
            while (sizes[cls] == 1) ++cls; // first non-singleton class
            int v = 0;
            while (c.color[v] != cls) ++v; // lowest vertex in it
            target_class_.push_back(cls);
            base_vertex_.push_back(v);
            tick();
            base_.push_back(individualize_and_refine(g_, c, v));
        }
        for (const auto& c : base_) base_shapes_.push_back(c.class_sizes());
    }

    // Exact orbit size of base_vertex_[lvl] under the stabilizer of the
    // earlier base vertices; records one generator per new orbit point.
    // Leaf acceptance requires the generator to fix the base prefix
    // pointwise and to map base_vertex_[lvl] to the branch target, so the
    // orbit-stabilizer product stays exact even when class ids drift
    // between the two refinement sides.
    uint64_t count_level(int lvl) {
        const Coloring& c = base_[lvl];
        const int v = base_vertex_[lvl];
        const int cls = target_class_[lvl];

        std::vector<int> members;
        for (int u = 0; u < g_.n; ++u)
            if (c.color[u] == cls) members.push_back(u);

        std::vector<char> in_orbit(g_.n, 0);
        in_orbit[v] = 1;
        grow_orbit(in_orbit, lvl);

        uint64_t count = 0;
        for (int u : members) {
            if (in_orbit[u]) { ++count; continue; }
            tick();
            Coloring d = individualize_and_refine(g_, c, u);
            if (d.class_sizes() != base_shapes_[lvl + 1]) continue;
            prefix_len_ = lvl;
            required_image_ = u;
            std::optional<Perm> found = find_first(lvl + 1, d);
            if (found) {
                gens_.push_back(std::move(*found));
                gen_levels_.push_back(lvl);
                in_orbit[u] = 1;
                grow_orbit(in_orbit, lvl);
                ++count;
            }
        }
        return count;
    }

    void grow_orbit(std::vector<char>& in_orbit, int lvl) {
        std::vector<const Perm*> usable;
        if (lvl == 0)
            for (const auto& s : opts_.seeds) usable.push_back(&s);
        for (size_t i = 0; i < gens_.size(); ++i)
            if (gen_levels_[i] >= lvl) usable.push_back(&gens_[i]);
        if (usable.empty()) return;

        std::vector<Perm> inverses;
        inverses.reserve(usable.size());
        for (const Perm* p : usable) inverses.push_back(p->inverse());

        bool changed = true;
        while (changed) {
            changed = false;
            for (int x = 0; x < g_.n; ++x) {
                if (!in_orbit[x]) continue;
                for (const Perm* p : usable)
                    if (!in_orbit[(*p)[x]]) { in_orbit[(*p)[x]] = 1; changed = true; }
                for (const auto& p : inverses)
                    if (!in_orbit[p[x]]) { in_orbit[p[x]] = 1; changed = true; }
            }
        }
    }

    // First automorphism below a candidate coloring aligned with base level
    // `lvl` that fixes base_vertex_[0..prefix_len_-1] and maps
    // base_vertex_[prefix_len_] to required_image_; nullopt after
    // exhausting the subtree.
    std::optional<Perm> find_first(int lvl, const Coloring& d) {
        if (lvl == depth()) {
            // Both discrete: match classes, validate arc-exactly.
            const Coloring& base_final = base_.back();
            std::vector<uint16_t> img(g_.n);
            std::vector<int> by_color(g_.n);
            for (int u = 0; u < g_.n; ++u) by_color[d.color[u]] = u;
            for (int v = 0; v < g_.n; ++v)
                img[v] = static_cast<uint16_t>(by_color[base_final.color[v]]);
            Perm p(std::move(img));
            for (int j = 0; j < prefix_len_; ++j)
                if (p[base_vertex_[j]] != base_vertex_[j]) return std::nullopt;
            if (p[base_vertex_[prefix_len_]] != required_image_) return std::nullopt;
            if (apply_and_check(g_, p)) return p;
            return std::nullopt;
        }
        const int cls = target_class_[lvl];
        for (int u = 0; u < g_.n; ++u) {
            if (d.color[u] != cls) continue;
            tick();
            Coloring next = individualize_and_refine(g_, d, u);
            if (next.class_sizes() != base_shapes_[lvl + 1]) continue;
            if (auto r = find_first(lvl + 1, next)) return r;
        }
        return std::nullopt;
    }

    const Digraph& g_;
    const AutSearchOptions& opts_;
    uint64_t nodes_ = 0;
    std::vector<Coloring> base_;
    std::vector<std::vector<int>> base_shapes_;
    std::vector<int> base_vertex_, target_class_;
    std::vector<Perm> gens_;
    std::vector<int> gen_levels_;
    int prefix_len_ = 0;
    int required_image_ = 0;
};

} // namespace

AutSearchResult automorphism_group_digraph(const Digraph& g,
                                           const AutSearchOptions& opts) {
    return AutSearch(g, opts).run();
}

AutSearchResult automorphism_group(const CayleyDigraph& g,
                                   const AutSearchOptions& opts) {
    AutSearchOptions with_seeds = opts;
    with_seeds.seeds.push_back(right_multiplication(QElem{1, false}, *g.params));
    with_seeds.seeds.push_back(right_multiplication(QElem{0, true}, *g.params));
    return automorphism_group_digraph(g.adj, with_seeds);
}

namespace {

class BruteForce {
public:
    BruteForce(const Digraph& g, size_t collect_cap)
        : g_(g), collect_cap_(collect_cap) {
        if (g.n > 12)
            throw BudgetExceeded("bruteforce oracle: degree " +
                                 std::to_string(g.n) + " exceeds the 12-point cap");
        out_.resize(g.n);
        in_.resize(g.n);
        for (int v = 0; v < g.n; ++v) {
            out_[v] = g.out[v].words[0];
            in_[v] = g.in[v].words[0];
        }
    }

    PermGroup run() {
        img_.assign(g_.n, 0);
        extend(0, (uint64_t{1} << g_.n) - 1);
        return PermGroup::with_known_order(g_.n, std::move(collected_),
                                           BigCount::of(count_));
    }

private:
    void extend(int v, uint64_t unused) {
        if (v == g_.n) {
            ++count_;
            if (collected_.size() < collect_cap_) {
                std::vector<uint16_t> images(img_.begin(), img_.end());
                collected_.emplace_back(std::move(images));
            }
            return;
        }
        // u is a valid image of v iff adjacency to every assigned w matches.
        uint64_t cand = unused;
        for (int w = 0; w < v && cand; ++w) {
            cand &= (out_[v] >> w) & 1 ? in_[img_[w]] : ~in_[img_[w]];
            cand &= (in_[v] >> w) & 1 ? out_[img_[w]] : ~out_[img_[w]];
        }
        while (cand) {
            int u = __builtin_ctzll(cand);
            cand &= cand - 1;
            img_[v] = static_cast<uint8_t>(u);
            extend(v + 1, unused & ~(uint64_t{1} << u));
        }
    }

    const Digraph& g_;
    size_t collect_cap_;
    std::vector<uint64_t> out_, in_;
    std::vector<uint8_t> img_;
    std::vector<Perm> collected_;
    uint64_t count_ = 0;
};

} // namespace

PermGroup automorphism_group_bruteforce_digraph(const Digraph& g, size_t collect_cap) {
    return BruteForce(g, collect_cap).run();
}

PermGroup automorphism_group_bruteforce(const CayleyDigraph& g, size_t collect_cap) {
    return automorphism_group_bruteforce_digraph(g.adj, collect_cap);
}

} // namespace qci
