#pragma once

#include <optional>
#include <vector>

#include "qci/cayley.hpp"
#include "qci/graph_aut.hpp"
#include "qci/perm.hpp"
#include "qci/quaternion_aut.hpp"

namespace qci {

// Shared per-n context: the group, its automorphism group (structural for
// n >= 3, brute-force for n = 2) and the right regular representation.
// Immutable; safe to share across scan workers.
struct QuaternionContext {
    GroupParams params;
    PermGroup aut;              // Aut(Q_4n) on the 4n element indices
    PermGroup r_group;          // R(Q_4n)
    std::vector<Perm> r_perms;  // r_perms[g] = R(g), indexed by element index
    Perm r_a, r_b;

    explicit QuaternionContext(int n);
};

// Aut(G,S): the connection-set stabilizer inside Aut(Q_4n).
std::vector<Perm> aut_gs_perms(const QuaternionContext& ctx, uint64_t s_mask);
PermGroup aut_gs(const QuaternionContext& ctx, const ConnectionSet& s);

struct NormalityVerdict {
    bool is_normal = false;
    BigCount aut_order;           // |Aut(Gamma)| = 4n * |Aut(Gamma)_1|, exact
    uint64_t aut_gs_order = 0;
    std::optional<Perm> witness;  // a generator moving R(G) off itself
    uint64_t search_nodes = 0;
};

struct NormalityAnalysis {
    NormalityVerdict verdict;
    AutSearchResult search;       // full Aut(Gamma): generators + exact order
    std::vector<Perm> aut_gs;     // Aut(G,S)
};

// Both routes of the normality criterion are evaluated and must agree:
// (a) |Aut(Gamma)| = 4n * |Aut(G,S)|, (b) every Aut(Gamma) generator
// normalizes R(G).  Disagreement raises ConsistencyFailure.
NormalityAnalysis analyze_normality(const CayleyDigraph& g,
                                    const QuaternionContext& ctx,
                                    const AutSearchOptions& opts = {});

NormalityVerdict is_normal_cayley(const CayleyDigraph& g,
                                  const QuaternionContext& ctx,
                                  const AutSearchOptions& opts = {});

struct RegularSubgroupReport {
    std::vector<PermGroup> subgroups;            // regular, dicyclic of order 4n
    std::vector<std::vector<int>> conjugacy_classes;
    int contains_r_index = -1;                   // position of R(Q_4n)
};

// All regular subgroups of `a` carrying the dicyclic presentation, found by
// scanning presentation pairs (x, y) over the elements of `a`,
// deduplicated by element set and partitioned into conjugacy classes.
RegularSubgroupReport regular_subgroups(const PermGroup& a,
                                        const QuaternionContext& ctx,
                                        uint64_t pair_budget = 200'000'000);

// One conjugacy class of regular dicyclic subgroups.  For a normal digraph
// this is re-checked against the unique-subgroup reduction; the two views
// must agree.
bool is_ci_from_report(const RegularSubgroupReport& report, bool gamma_normal);

// Normal, and some regular dicyclic subgroup of Aut(Gamma) is non-normal.
bool is_nnn_from_report(const NormalityAnalysis& na, const PermGroup& full_aut,
                        const RegularSubgroupReport& report,
                        std::vector<int>* non_normal_indices = nullptr);

enum class Tri { no, yes, not_applicable };

struct NonNormalityConditions {
    Tri cond1 = Tri::no; // <beta_i> alpha_i meets Aut(G,S) for some odd part
    Tri cond2 = Tri::no; // coset-fixing clause (with its graph specialization)
    Tri cond3 = Tri::no; // graphs with n > 2: <sigma_a> eps alpha_{s+1} clause
    bool any_fired() const { return cond1 == Tri::yes || cond2 == Tri::yes || cond3 == Tri::yes; }
};

// Sufficient conditions for non-normality, each evaluated literally.  A
// true flag predicts a non-normal digraph (never the converse).
NonNormalityConditions lemma_nonnormality_conditions(const QuaternionContext& ctx,
                                                     uint64_t s_mask, Mode mode);

// Fixed points of a set of automorphisms (given as vertex perms) in Q_4n.
std::vector<int> fixed_point_indices(const std::vector<Perm>& l, const GroupParams& p);
std::vector<QElem> fixed_points(const std::vector<QAut>& l, const GroupParams& p);

// The non-normality predicate taking explicit L <= Aut(G,S) and K normal in
// Q_4n: checks the coset hypothesis (PreconditionFailed on violation), then
// the three sufficient clauses.
bool mainpro_predicate(const CayleyDigraph& g, const PermGroup& l,
                       const std::vector<int>& k_indices,
                       const QuaternionContext& ctx);

struct MainproApplication {
    int part_index = 0;
    int beta_power = 0;
    bool fired = false;
};

// Applies mainpro_predicate with the canonical choices L = <beta_i^r
// alpha_i>, K = <a_i^{p_i^{k_i-1}}> whenever the coset element stabilizes S.
std::vector<MainproApplication> mainpro_driver(const CayleyDigraph& g,
                                               const QuaternionContext& ctx);

struct SylowStructureResult {
    bool applicable = false;     // false when n is a power of 2 (s = 0)
    bool holds = true;
    std::vector<std::optional<int>> shifts; // r_i per odd part when found
};

// For a normal Cayley graph and a regular dicyclic subgroup H: each odd
// Sylow subgroup of H must equal <R(a_i) sigma_{a_i}^{r_i}> for some r_i.
SylowStructureResult sylow_structure_check(const CayleyDigraph& g,
                                           const PermGroup& h,
                                           const QuaternionContext& ctx);

} // namespace qci
