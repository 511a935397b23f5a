#include "qci/nnn_construction.hpp"

#include <algorithm>

namespace qci {

NnnFamilyInstance build_nnn_instance(int n, const QuaternionContext& ctx) {
    if (n < 6 || n % 2 != 0)
        throw InvalidN("nnn construction: n must be even and >= 6, got " +
                       std::to_string(n));
    const GroupParams& p = ctx.params;
    if (p.n() != n)
        throw PreconditionFailed("nnn construction: context built for different n");

    std::vector<QElem> members{
        p.a_pow(1),
        p.a_pow(n - 1),
        p.b(),
        q_mul(p.a_pow(n / 2), p.b(), p),
        q_mul(p.a_pow(n), p.b(), p),
        q_mul(p.a_pow(3 * n / 2), p.b(), p),
    };
    ConnectionSet s = ConnectionSet::from_elements(std::move(members), p);
    if (s.members.size() != 6)
        throw ConsistencyFailure("nnn construction: |S| != 6");

    // S1 = {a, a^{n-1}} meets its inverse set nowhere; S2 = Mb is symmetric.
    QElem a1 = p.a_pow(1), a2 = p.a_pow(n - 1);
    if (q_inv(a1, p) == a1 || q_inv(a1, p) == a2 || q_inv(a2, p) == a2)
        throw ConsistencyFailure("nnn construction: S1 unexpectedly symmetric");
    for (int j : {0, n / 2, n, 3 * n / 2}) {
        QElem e = q_mul(p.a_pow(j), p.b(), p);
        QElem inv = q_inv(e, p);
        bool found = false;
        for (int jj : {0, n / 2, n, 3 * n / 2})
            if (inv == q_mul(p.a_pow(jj), p.b(), p)) found = true;
        if (!found)
            throw ConsistencyFailure("nnn construction: S2 not inverse-closed");
    }

    NnnFamilyInstance inst{
        n,
        std::move(s),
        theta(n - 1, p),              // alpha: a -> a^{n-1}, b -> b
        sigma(p.a_pow(n / 2), p),     // beta
        Perm{}, Perm{},
    };
    if (inst.alpha.order(p) != 2)
        throw ConsistencyFailure("nnn construction: o(alpha) != 2");
    if (inst.beta.order(p) != 4)
        throw ConsistencyFailure("nnn construction: o(beta) != 4");

    const uint64_t mask = inst.s.mask(p);
    if (apply_perm_to_mask(mask, inst.alpha.as_perm(p)) != mask ||
        apply_perm_to_mask(mask, inst.beta.as_perm(p)) != mask)
        throw ConsistencyFailure("nnn construction: alpha/beta do not stabilize S");

    Perm r_ab = ctx.r_perms[p.index_of(q_mul(p.a_pow(1), p.b(), p))];
    inst.h_gen_x = r_ab.then(inst.alpha.as_perm(p));
    inst.h_gen_y = ctx.r_b;
    return inst;
}

namespace {

std::string group_shape_of_order8(const PermGroup& g) {
    // Distinguishes Z4xZ2 from D8 at order 8: the first is abelian.
    bool abelian = true;
    const auto& elems = g.elements();
    for (const auto& x : elems) {
        for (const auto& y : elems)
            if (x.then(y) != y.then(x)) { abelian = false; break; }
        if (!abelian) break;
    }
    std::vector<uint64_t> orders;
    for (const auto& e : elems) orders.push_back(e.order());
    std::sort(orders.begin(), orders.end());
    if (abelian && orders == std::vector<uint64_t>{1, 2, 2, 2, 4, 4, 4, 4})
        return "Z4xZ2";
    if (!abelian && orders == std::vector<uint64_t>{1, 2, 2, 2, 2, 2, 4, 4})
        return "D8";
    return "other";
}

} // namespace

NnnVerification verify_nnn_instance(const NnnFamilyInstance& inst,
                                    const QuaternionContext& ctx,
                                    const AutSearchOptions& opts) {
    const GroupParams& p = ctx.params;
    const int n = inst.n;
    NnnVerification out;
    auto clause = [&](const std::string& name, bool pass, std::string detail = "") {
        out.clauses.push_back({name, pass, std::move(detail)});
    };

    CayleyDigraph gamma = build_cayley(p, inst.s);
    NormalityAnalysis na = analyze_normality(gamma, ctx, opts);

    // (1) |Aut| = 32n and the element sets agree with <R, alpha, beta>.
    bool order_ok = na.search.order.equals_u64(static_cast<uint64_t>(32) * n);
    PermGroup claimed = closure({ctx.r_a, ctx.r_b, inst.alpha.as_perm(p),
                                 inst.beta.as_perm(p)},
                                static_cast<size_t>(64) * n);
    bool set_ok = order_ok && claimed.elements() == na.search.group.elements();
    clause("aut_order_32n_and_generated_by_R_alpha_beta", order_ok && set_ok,
           "|Aut| = " + na.search.order.str());
    out.aut_order = order_ok ? static_cast<uint64_t>(32) * n : 0;

    // (2) normal.
    clause("normal", na.verdict.is_normal);

    // (3) H regular of order 4n.
    PermGroup h = closure({inst.h_gen_x, inst.h_gen_y},
                          static_cast<size_t>(p.order()) * 2);
    bool h_regular = h.order().equals_u64(static_cast<uint64_t>(p.order())) &&
                     is_regular(h);
    clause("H_regular_of_order_4n", h_regular,
           "|H| = " + h.order().str());

    // (4) dicyclic presentation.
    clause("H_iso_to_Q4n", iso_to_quaternion(h, p).has_value());

    // (5) H not normal in Aut(Gamma).
    bool h_not_normal = false;
    if (na.verdict.is_normal)
        h_not_normal = !is_normal_in(h, na.search.group);
    clause("H_not_normal_in_aut", h_not_normal);

    // (6) (R(ab)alpha)^2 = R(a^2).
    clause("x_squared_is_R_a2",
           inst.h_gen_x.then(inst.h_gen_x) ==
               ctx.r_perms[p.index_of(p.a_pow(2))]);

    // (7) o(R(ab)alpha) = 2n.
    clause("x_order_2n", inst.h_gen_x.order() == static_cast<uint64_t>(2 * n),
           "o(x) = " + std::to_string(inst.h_gen_x.order()));

    // (8) x^{R(b)} = x^{-1}.
    clause("x_conjugated_by_Rb_is_x_inverse",
           inst.h_gen_x.conjugated_by(inst.h_gen_y) == inst.h_gen_x.inverse());

    // (9) the S2 layer splits into n/2 complete bipartite K_{4,4} blocks on
    // M = <a^{n/2}> cosets.
    {
        std::vector<QElem> s2;
        for (const auto& e : inst.s.members)
            if (e.has_b) s2.push_back(e);
        CayleyDigraph gamma2 = build_cayley(p, ConnectionSet::from_elements(s2, p));
        bool blocks_ok = s2.size() == 4;
        uint64_t seen_arcs = 0;
        for (int i = 0; i < n / 2 && blocks_ok; ++i) {
            VertexSet ma, mba;
            for (int t = 0; t < 4; ++t) {
                // M a^i and M b a^i with M = <a^{n/2}>
                QElem m = p.a_pow(static_cast<long long>(t) * (n / 2));
                ma.set(p.index_of(q_mul(m, p.a_pow(i), p)));
                mba.set(p.index_of(q_mul(q_mul(m, p.b(), p), p.a_pow(i), p)));
            }
            Digraph fwd = induced_between(gamma2, ma, mba);
            Digraph bwd = induced_between(gamma2, mba, ma);
            Digraph inside_a = induced(gamma2, ma);
            Digraph inside_b = induced(gamma2, mba);
            if (fwd.arc_count() != 16 || bwd.arc_count() != 16 ||
                inside_a.arc_count() != 0 || inside_b.arc_count() != 0)
                blocks_ok = false;
            seen_arcs += fwd.arc_count() + bwd.arc_count();
        }
        // The blocks must also exhaust the layer.
        if (blocks_ok && seen_arcs != gamma2.adj.arc_count()) blocks_ok = false;
        clause("S2_layer_is_disjoint_K44_blocks", blocks_ok);
    }

    // <alpha,beta> shape dichotomy by the parity of n/2.
    PermGroup ab = closure({inst.alpha.as_perm(p), inst.beta.as_perm(p)}, 16);
    out.alpha_beta_shape = group_shape_of_order8(ab);
    bool shape_ok = ab.order_u64() == 8 &&
                    out.alpha_beta_shape ==
                        ((n / 2) % 2 == 0 ? std::string("D8") : std::string("Z4xZ2"));
    clause("alpha_beta_group_shape", shape_ok, out.alpha_beta_shape);

    out.all_pass = std::all_of(out.clauses.begin(), out.clauses.end(),
                               [](const VerificationClause& c) { return c.pass; });
    return out;
}

} // namespace qci
