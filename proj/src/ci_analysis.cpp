#include "qci/ci_analysis.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace qci {

QuaternionContext::QuaternionContext(int n)
    : params(n),
      aut(full_automorphism_group(params)),
      r_group(right_regular_representation(params)) {
    aut.elements(); // materialize once, shared read-only afterwards
    r_perms.reserve(params.order());
    for (int g = 0; g < params.order(); ++g)
        r_perms.push_back(right_multiplication(params.element_at(g), params));
    r_a = r_perms[params.index_of(QElem{1, false})];
    r_b = r_perms[params.index_of(QElem{0, true})];
}

std::vector<Perm> aut_gs_perms(const QuaternionContext& ctx, uint64_t s_mask) {
    std::vector<Perm> out;
    for (const auto& a : ctx.aut.elements())
        if (apply_perm_to_mask(s_mask, a) == s_mask) out.push_back(a);
    return out;
}

PermGroup aut_gs(const QuaternionContext& ctx, const ConnectionSet& s) {
    return PermGroup::from_elements(ctx.params.order(),
                                    aut_gs_perms(ctx, s.mask(ctx.params)));
}

NormalityAnalysis analyze_normality(const CayleyDigraph& g,
                                    const QuaternionContext& ctx,
                                    const AutSearchOptions& opts) {
    NormalityAnalysis na;
    na.aut_gs = aut_gs_perms(ctx, g.conn.mask(ctx.params));
    na.search = automorphism_group(g, opts);

    const uint64_t expected =
        static_cast<uint64_t>(ctx.params.order()) * na.aut_gs.size();
    bool by_order = na.search.order.equals_u64(expected);

    // Second route: every generator of Aut(Gamma) normalizes R(G).
    const auto& r_elems = ctx.r_group.elements();
    auto in_r = [&](const Perm& p) {
        return std::binary_search(r_elems.begin(), r_elems.end(), p);
    };
    bool by_conjugation = true;
    std::optional<Perm> witness;
    for (const auto& gen : na.search.group.generators()) {
        if (!in_r(ctx.r_a.conjugated_by(gen)) || !in_r(ctx.r_b.conjugated_by(gen))) {
            by_conjugation = false;
            witness = gen;
            break;
        }
    }

    if (by_order != by_conjugation)
        throw ConsistencyFailure(
            "normality: order criterion and R-conjugation criterion disagree");

    na.verdict.is_normal = by_order;
    na.verdict.aut_order = na.search.order;
    na.verdict.aut_gs_order = na.aut_gs.size();
    na.verdict.witness = std::move(witness);
    na.verdict.search_nodes = na.search.node_count;
    return na;
}

NormalityVerdict is_normal_cayley(const CayleyDigraph& g,
                                  const QuaternionContext& ctx,
                                  const AutSearchOptions& opts) {
    return analyze_normality(g, ctx, opts).verdict;
}

RegularSubgroupReport regular_subgroups(const PermGroup& a,
                                        const QuaternionContext& ctx,
                                        uint64_t pair_budget) {
    const GroupParams& p = ctx.params;
    const int two_n = p.two_n();
    const auto& elems = a.elements();

    std::vector<const Perm*> x_candidates;
    for (const auto& e : elems)
        if (e.order() == static_cast<uint64_t>(two_n)) x_candidates.push_back(&e);

    if (static_cast<uint64_t>(x_candidates.size()) * elems.size() > pair_budget)
        throw BudgetExceeded("regular_subgroups: presentation pair scan over " +
                             std::to_string(x_candidates.size() * elems.size()) +
                             " pairs exceeds budget");

    RegularSubgroupReport report;
    std::map<std::vector<Perm>, int> seen; // element set -> index
    for (const Perm* x : x_candidates) {
        Perm xn = x->pow(p.n());
        Perm x_inv = x->inverse();
        for (const auto& y : elems) {
            if (y.then(y) != xn) continue;
            if (x->conjugated_by(y) != x_inv) continue;
            PermGroup h = closure({*x, y}, static_cast<size_t>(p.order()) + 1);
            if (!h.order().equals_u64(static_cast<uint64_t>(p.order()))) continue;
            if (!is_regular(h)) continue;
            auto key = h.elements();
            if (seen.emplace(std::move(key), report.subgroups.size()).second)
                report.subgroups.push_back(std::move(h));
        }
    }

    // R(Q_4n) must be among them whenever it lies inside `a`.
    const auto& r_elems = ctx.r_group.elements();
    for (size_t i = 0; i < report.subgroups.size(); ++i)
        if (report.subgroups[i].elements() == r_elems)
            report.contains_r_index = static_cast<int>(i);

    // Conjugacy classes within `a`.
    std::vector<bool> assigned(report.subgroups.size(), false);
    for (size_t i = 0; i < report.subgroups.size(); ++i) {
        if (assigned[i]) continue;
        std::vector<int> cls{static_cast<int>(i)};
        assigned[i] = true;
        for (size_t j = i + 1; j < report.subgroups.size(); ++j) {
            if (assigned[j]) continue;
            if (are_conjugate_subgroups(report.subgroups[i], report.subgroups[j], a)) {
                cls.push_back(static_cast<int>(j));
                assigned[j] = true;
            }
        }
        report.conjugacy_classes.push_back(std::move(cls));
    }
    return report;
}

bool is_ci_from_report(const RegularSubgroupReport& report, bool gamma_normal) {
    bool by_classes = report.conjugacy_classes.size() == 1;
    if (gamma_normal) {
        // Normal case: R(G) is normal, hence self-conjugate; CI must mean
        // it is the only regular dicyclic subgroup.
        bool by_uniqueness = report.subgroups.size() == 1;
        if (by_classes != by_uniqueness)
            throw ConsistencyFailure("is_ci: class count and uniqueness reduction "
                                     "disagree on a normal digraph");
    }
    return by_classes;
}

bool is_nnn_from_report(const NormalityAnalysis& na, const PermGroup& full_aut,
                        const RegularSubgroupReport& report,
                        std::vector<int>* non_normal_indices) {
    if (!na.verdict.is_normal) return false;
    bool found = false;
    for (size_t i = 0; i < report.subgroups.size(); ++i) {
        if (!is_normal_in(report.subgroups[i], full_aut)) {
            found = true;
            if (non_normal_indices)
                non_normal_indices->push_back(static_cast<int>(i));
        }
    }
    return found;
}

namespace {

// Does `aut_elem` fix every coset of <a^r> in C_2n setwise?
bool fixes_cosets_of(const Perm& aut_elem, int r, const GroupParams& p) {
    int g = static_cast<int>(std::gcd(static_cast<long long>(r),
                                      static_cast<long long>(p.two_n())));
    for (int j = 0; j < p.two_n(); ++j) {
        int image = aut_elem[p.index_of(QElem{j, false})];
        QElem im = p.element_at(image);
        if (im.has_b)
            throw ConsistencyFailure("coset check: automorphism moved <a> off itself");
        int diff = ((im.exp_a - j) % p.two_n() + p.two_n()) % p.two_n();
        if (diff % g != 0) return false;
    }
    return true;
}

bool stabilizes_mask(const Perm& perm, uint64_t mask) {
    return apply_perm_to_mask(mask, perm) == mask;
}

} // namespace

NonNormalityConditions lemma_nonnormality_conditions(const QuaternionContext& ctx,
                                                     uint64_t s_mask, Mode mode) {
    const GroupParams& p = ctx.params;
    NonNormalityConditions out;
    const int s = p.s();

    // (1): <beta_i> alpha_i meets Aut(G,S) for some odd part with k_i >= 2.
    for (int i = 0; i < s && out.cond1 != Tri::yes; ++i) {
        const auto& part = p.primes()[i];
        if (part.exponent < 2) continue;
        QAut a_i = alpha(i, p);
        QAut b_i = beta(i, p);
        QAut cur = a_i;
        for (long long r = 0; r < part.prime; ++r) {
            if (stabilizes_mask(cur.as_perm(p), s_mask)) {
                out.cond1 = Tri::yes;
                break;
            }
            cur = b_i.then(cur, p);
        }
    }

    // (2) general clause: some nontrivial alpha in Aut(C_2n) and nontrivial
    // sigma_{a^r}, both stabilizing S, with alpha fixing every coset of
    // <a^r> in C_2n.
    {
        std::vector<int> sigma_rs;
        for (int r = 1; r < p.two_n(); ++r)
            if (stabilizes_mask(sigma(p.a_pow(r), p).as_perm(p), s_mask))
                sigma_rs.push_back(r);
        if (!sigma_rs.empty()) {
            for (const auto& a : ctx.aut.elements()) {
                if (a.is_identity()) continue;
                if (a[p.index_of(p.b())] != p.index_of(p.b())) continue; // want Aut(C_2n)
                if (a[p.index_of(QElem{1, false})] >= p.two_n()) continue;
                if (!stabilizes_mask(a, s_mask)) continue;
                for (int r : sigma_rs) {
                    if (fixes_cosets_of(a, r, p)) {
                        out.cond2 = Tri::yes;
                        break;
                    }
                }
                if (out.cond2 == Tri::yes) break;
            }
        }
    }
    // (2) graph specialization: <sigma_a> alpha_{s+1} meets Aut(G,S).
    if (out.cond2 != Tri::yes && mode == Mode::graph &&
        p.primes().back().exponent >= 2) {
        QAut a_last = alpha(s, p);
        for (int j = 0; j < p.two_n(); ++j) {
            QAut cand = sigma(p.a_pow(j), p).then(a_last, p);
            if (stabilizes_mask(cand.as_perm(p), s_mask)) {
                out.cond2 = Tri::yes;
                break;
            }
        }
    }

    // (3): graphs with n > 2 and alpha_{s+1} defined.
    if (mode != Mode::graph || p.n() <= 2 || p.primes().back().exponent < 2) {
        out.cond3 = Tri::not_applicable;
    } else {
        QAut tail = epsilon_all(p).then(alpha(s, p), p);
        for (int j = 0; j < p.two_n(); ++j) {
            QAut cand = sigma(p.a_pow(j), p).then(tail, p);
            if (stabilizes_mask(cand.as_perm(p), s_mask)) {
                out.cond3 = Tri::yes;
                break;
            }
        }
    }
    return out;
}

std::vector<int> fixed_point_indices(const std::vector<Perm>& l, const GroupParams& p) {
    std::vector<int> out;
    for (int g = 0; g < p.order(); ++g) {
        bool fixed = true;
        for (const auto& perm : l)
            if (perm[g] != g) { fixed = false; break; }
        if (fixed) out.push_back(g);
    }
    return out;
}

std::vector<QElem> fixed_points(const std::vector<QAut>& l, const GroupParams& p) {
    std::vector<Perm> perms;
    perms.reserve(l.size());
    for (const auto& a : l) perms.push_back(a.as_perm(p));
    std::vector<QElem> out;
    for (int g : fixed_point_indices(perms, p)) out.push_back(p.element_at(g));
    return out;
}

namespace {

bool is_subgroup_indices(const std::vector<int>& idx, const GroupParams& p) {
    std::vector<bool> in(p.order(), false);
    for (int g : idx) in[g] = true;
    if (!in[0]) return false;
    for (int g : idx)
        for (int h : idx)
            if (!in[p.mul_idx(g, h)]) return false;
    return true;
}

} // namespace

bool mainpro_predicate(const CayleyDigraph& g, const PermGroup& l,
                       const std::vector<int>& k_indices,
                       const QuaternionContext& ctx) {
    const GroupParams& p = ctx.params;
    const uint64_t s_mask = g.conn.mask(p);

    // L must be a nontrivial subgroup of Aut(G,S).
    if (l.order_u64() <= 1)
        throw PreconditionFailed("mainpro: L is trivial");
    std::vector<Perm> ags = aut_gs_perms(ctx, s_mask);
    std::sort(ags.begin(), ags.end());
    for (const auto& e : l.elements())
        if (!std::binary_search(ags.begin(), ags.end(), e))
            throw PreconditionFailed("mainpro: L is not contained in Aut(G,S)");

    // K must be normal in Q_4n.
    if (!is_subgroup_indices(k_indices, p))
        throw PreconditionFailed("mainpro: K is not a subgroup");
    std::vector<bool> in_k(p.order(), false);
    for (int k : k_indices) in_k[k] = true;
    for (int gen : {p.index_of(QElem{1, false}), p.index_of(p.b())})
        for (int k : k_indices)
            if (!in_k[p.mul_idx(p.mul_idx(p.inv_idx(gen), k), gen)])
                throw PreconditionFailed("mainpro: K is not normal in Q_4n");

    // Coset hypothesis: every right coset Kg is fixed pointwise by L or is
    // a single L-orbit.
    const auto& l_elems = l.elements();
    std::vector<bool> covered(p.order(), false);
    for (int g0 = 0; g0 < p.order(); ++g0) {
        if (covered[g0]) continue;
        std::vector<int> coset;
        for (int k : k_indices) coset.push_back(p.mul_idx(k, g0));
        std::sort(coset.begin(), coset.end());
        for (int c : coset) covered[c] = true;

        bool pointwise = true;
        for (int c : coset)
            for (const auto& e : l_elems)
                if (e[c] != c) { pointwise = false; break; }
        if (pointwise) continue;

        // Orbit of g0 under L must be exactly the coset.
        std::vector<int> orbit{g0};
        std::vector<bool> in_orbit(p.order(), false);
        in_orbit[g0] = true;
        for (size_t i = 0; i < orbit.size(); ++i)
            for (const auto& e : l_elems) {
                int im = e[orbit[i]];
                if (!in_orbit[im]) { in_orbit[im] = true; orbit.push_back(im); }
            }
        std::sort(orbit.begin(), orbit.end());
        if (orbit != coset)
            throw PreconditionFailed("mainpro: coset neither fixed pointwise nor an L-orbit");
    }

    // Fixed points of L form a subgroup; index decides the clauses.
    std::vector<int> f = fixed_point_indices(l_elems, p);
    if (!is_subgroup_indices(f, p))
        throw ConsistencyFailure("mainpro: F_G(L) is not a subgroup");
    uint64_t index = static_cast<uint64_t>(p.order()) / f.size();

    if (index > 2) return true;
    if (index != 2) return false;

    std::vector<bool> in_f(p.order(), false);
    for (int x : f) in_f[x] = true;

    // (2): g outside F and k in K with k^g != k^-1.
    for (int g0 = 0; g0 < p.order(); ++g0) {
        if (in_f[g0]) continue;
        for (int k : k_indices) {
            int conj = p.mul_idx(p.mul_idx(p.inv_idx(g0), k), g0);
            if (conj != p.inv_idx(k)) return true;
        }
    }

    // (3): nontrivial gamma in Aut(G,S) with different fixed-point set
    // fixing every coset of K setwise.
    std::vector<int> f_sorted = f;
    for (const auto& gamma : ags) {
        if (gamma.is_identity()) continue;
        std::vector<int> fg = fixed_point_indices({gamma}, p);
        if (fg == f_sorted) continue;
        bool fixes_all_cosets = true;
        for (int g0 = 0; g0 < p.order() && fixes_all_cosets; ++g0) {
            // gamma(g0) must lie in K*g0
            int im = gamma[g0];
            bool in_coset = false;
            for (int k : k_indices)
                if (p.mul_idx(k, g0) == im) { in_coset = true; break; }
            if (!in_coset) fixes_all_cosets = false;
        }
        if (fixes_all_cosets) return true;
    }
    return false;
}

std::vector<MainproApplication> mainpro_driver(const CayleyDigraph& g,
                                               const QuaternionContext& ctx) {
    const GroupParams& p = ctx.params;
    const uint64_t s_mask = g.conn.mask(p);
    std::vector<MainproApplication> out;
    for (int i = 0; i < p.s(); ++i) {
        const auto& part = p.primes()[i];
        if (part.exponent < 2) continue;
        QAut a_i = alpha(i, p);
        QAut b_i = beta(i, p);
        for (long long r = 0; r < part.prime; ++r) {
            QAut elem = b_i.pow(r, p).then(a_i, p);
            if (!stabilizes_mask(elem.as_perm(p), s_mask)) continue;
            PermGroup l = closure({elem.as_perm(p)}, static_cast<size_t>(part.prime) + 1);
            // K = <a_i^{p_i^{k_i-1}}>, the subgroup of order p_i in part i.
            std::vector<int> k_indices;
            long long step = part.crt_unit * (part.power / part.prime);
            for (long long t = 0; t < part.prime; ++t)
                k_indices.push_back(p.index_of(p.a_pow(step * t)));
            MainproApplication app;
            app.part_index = i;
            app.beta_power = static_cast<int>(r);
            app.fired = mainpro_predicate(g, l, k_indices, ctx);
            out.push_back(app);
        }
    }
    return out;
}

SylowStructureResult sylow_structure_check(const CayleyDigraph& g,
                                           const PermGroup& h,
                                           const QuaternionContext& ctx) {
    const GroupParams& p = ctx.params;
    if (!g.conn.symmetric)
        throw PreconditionFailed("sylow_structure_check: graph mode required");
    SylowStructureResult res;
    if (p.s() == 0) return res; // n a power of 2: nothing to check
    res.applicable = true;
    for (int i = 0; i < p.s(); ++i) {
        const auto& part = p.primes()[i];
        PermGroup hp = sylow_subgroup(h, part.prime);
        Perm r_ai = ctx.r_perms[p.index_of(p.a_pow(part.crt_unit))];
        Perm sigma_ai = sigma(p.a_pow(part.crt_unit), p).as_perm(p);
        std::optional<int> found;
        for (long long r = 0; r < part.power; ++r) {
            Perm gen = r_ai.then(sigma_ai.pow(r));
            PermGroup cyc = closure({gen}, static_cast<size_t>(part.power) * 2);
            if (cyc.elements() == hp.elements()) {
                found = static_cast<int>(r);
                break;
            }
        }
        res.shifts.push_back(found);
        if (!found) res.holds = false;
    }
    return res;
}

} // namespace qci
