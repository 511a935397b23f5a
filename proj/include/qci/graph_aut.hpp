#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qci/cayley.hpp"
#include "qci/perm.hpp"

namespace qci {

// Vertex coloring with normalized class ids 0..num_classes-1 (ids assigned
// by lexicographic rank of the class signatures, so equal inputs and
// isomorphic colored graphs get corresponding ids).
struct Coloring {
    std::vector<int> color;
    int num_classes = 0;

    static Coloring uniform(int n) {
        return Coloring{std::vector<int>(n, 0), 1};
    }
    bool discrete() const { return num_classes == static_cast<int>(color.size()); }
    std::vector<int> class_sizes() const;
};

// Coarsest equitable refinement of `initial` w.r.t. per-class out- and
// in-neighbour counts, iterated to a fixed point.
Coloring refine(const Digraph& g, const Coloring& initial);

// `initial` with v moved to a fresh singleton class, then refined.
Coloring individualize_and_refine(const Digraph& g, const Coloring& initial, int v);

struct AutSearchOptions {
    uint64_t node_cap = 10'000'000;   // refinement nodes before BudgetExceeded
    std::vector<Perm> seeds;          // known automorphisms (validated on entry)
    size_t closure_cap = 1u << 20;    // materialization cap for the result group
};

struct AutSearchResult {
    PermGroup group;     // generators + exact order; closure on demand
    BigCount order;
    uint64_t node_count; // refinement nodes visited
};

// Full automorphism group by individualization-refinement backtracking.
//
// The base path individualizes the lowest-index vertex of the first
// non-singleton class until the coloring is discrete.  Level by level
// (deepest first) the orbit of the base vertex under the stabilizer of the
// earlier base vertices is counted exactly: members certified by already
// found generators are accepted without search, every other candidate gets
// an exhaustive first-automorphism subtree search.  The group order is the
// product of the orbit sizes; the generators found along the way form a
// strong generating set.  Every emitted generator is validated arc-exactly.
AutSearchResult automorphism_group_digraph(const Digraph& g,
                                           const AutSearchOptions& opts = {});

// Same engine with R(a), R(b) supplied as seed automorphisms.
AutSearchResult automorphism_group(const CayleyDigraph& g,
                                   const AutSearchOptions& opts = {});

// Hypothesis-free oracle: exhaustive backtracking over partial vertex maps
// with immediate arc-consistency pruning, no refinement.  Degree capped at
// 12.  The order is the exact leaf count; elements are collected while they
// fit `collect_cap`, beyond that only the order is reported.
PermGroup automorphism_group_bruteforce_digraph(const Digraph& g,
                                                size_t collect_cap = 1u << 16);
PermGroup automorphism_group_bruteforce(const CayleyDigraph& g,
                                        size_t collect_cap = 1u << 16);

} // namespace qci
