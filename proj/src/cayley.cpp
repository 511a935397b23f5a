#include "qci/cayley.hpp"

#include <algorithm>
#include <sstream>

namespace qci {

int VertexSet::count() const {
    int c = 0;
    for (uint64_t w : words) c += __builtin_popcountll(w);
    return c;
}

VertexSet VertexSet::operator&(const VertexSet& o) const {
    VertexSet r;
    for (int i = 0; i < 4; ++i) r.words[i] = words[i] & o.words[i];
    return r;
}

VertexSet VertexSet::operator|(const VertexSet& o) const {
    VertexSet r;
    for (int i = 0; i < 4; ++i) r.words[i] = words[i] | o.words[i];
    return r;
}

uint64_t Digraph::arc_count() const {
    uint64_t c = 0;
    for (const auto& row : out) c += row.count();
    return c;
}

bool Digraph::is_symmetric() const {
    for (int u = 0; u < n; ++u)
        if (!(out[u] == in[u])) return false;
    return true;
}

uint64_t ConnectionSet::mask(const GroupParams& p) const {
    uint64_t m = 0;
    for (const auto& e : members) m |= uint64_t{1} << p.index_of(e);
    return m;
}

ConnectionSet ConnectionSet::from_mask(uint64_t mask, const GroupParams& p) {
    std::vector<QElem> elems;
    for (int v = 0; v < p.order(); ++v)
        if ((mask >> v) & 1) elems.push_back(p.element_at(v));
    return from_elements(std::move(elems), p);
}

ConnectionSet ConnectionSet::from_elements(std::vector<QElem> elems, const GroupParams& p) {
    ConnectionSet s;
    std::sort(elems.begin(), elems.end(), [&](QElem x, QElem y) {
        return p.index_of(x) < p.index_of(y);
    });
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    s.members = std::move(elems);
    s.symmetric = true;
    for (const auto& e : s.members) {
        QElem inv = q_inv(e, p);
        if (!std::binary_search(s.members.begin(), s.members.end(), inv,
                                [&](QElem x, QElem y) {
                                    return p.index_of(x) < p.index_of(y);
                                })) {
            s.symmetric = false;
            break;
        }
    }
    return s;
}

std::vector<std::string> ConnectionSet::serialized(const GroupParams& p) const {
    std::vector<std::string> out;
    out.reserve(members.size());
    for (const auto& e : members) out.push_back(p.to_string(e));
    return out;
}

ConnectionSet ConnectionSet::parse(const std::string& csv, const GroupParams& p) {
    std::vector<QElem> elems;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.find_first_not_of(" \t") == std::string::npos) continue;
        elems.push_back(p.parse_element(token));
    }
    return from_elements(std::move(elems), p);
}

CayleyDigraph build_cayley(const GroupParams& p, const ConnectionSet& s) {
    for (const auto& e : s.members)
        if (e == p.identity())
            throw IdentityInS("build_cayley: identity in connection set");
    CayleyDigraph g;
    g.params = &p;
    g.conn = s;
    g.adj = Digraph(p.order());
    for (int v = 0; v < p.order(); ++v)
        for (const auto& e : s.members)
            g.adj.add_arc(v, p.mul_idx(p.index_of(e), v)); // arc (g, sg)
    return g;
}

bool is_connected(const CayleyDigraph& g) {
    const GroupParams& p = *g.params;
    // Subgroup generated by S.
    std::vector<bool> in_sub(p.order(), false);
    std::vector<int> stack;
    in_sub[0] = true;
    stack.push_back(0);
    int sub_count = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& e : g.conn.members) {
            int prod = p.mul_idx(v, p.index_of(e));
            if (!in_sub[prod]) { in_sub[prod] = true; ++sub_count; stack.push_back(prod); }
        }
    }
    bool by_subgroup = sub_count == p.order();

    // Reachability from the identity vertex along out-arcs.
    std::vector<bool> seen(p.order(), false);
    seen[0] = true;
    stack.push_back(0);
    int reach = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        g.adj.out[v].for_each([&](int u) {
            if (!seen[u]) { seen[u] = true; ++reach; stack.push_back(u); }
        });
    }
    bool by_reach = reach == p.order();

    if (by_subgroup != by_reach)
        throw ConsistencyFailure("is_connected: closure and reachability disagree");
    return by_reach;
}

Digraph induced(const CayleyDigraph& g, const VertexSet& x) {
    Digraph d(g.degree());
    for (int u = 0; u < g.degree(); ++u) {
        if (!x.test(u)) continue;
        (g.adj.out[u] & x).for_each([&](int v) { d.add_arc(u, v); });
    }
    return d;
}

Digraph induced_between(const CayleyDigraph& g, const VertexSet& x, const VertexSet& y) {
    Digraph d(g.degree());
    for (int u = 0; u < g.degree(); ++u) {
        if (!x.test(u)) continue;
        (g.adj.out[u] & y).for_each([&](int v) { d.add_arc(u, v); });
    }
    return d;
}

uint64_t ScanSpace::element_mask(uint64_t scan_index) const {
    uint64_t m = 0;
    for (int b = 0; b < free_bits; ++b)
        if ((scan_index >> b) & 1) m |= class_masks[b];
    return m;
}

ScanSpace make_scan_space(const GroupParams& p, Mode mode) {
    if (p.order() > 63)
        throw BudgetExceeded("scan space: 4n exceeds the 63-bit mask limit");
    ScanSpace s;
    s.mode = mode;
    if (mode == Mode::digraph) {
        for (int v = 1; v < p.order(); ++v)
            s.class_masks.push_back(uint64_t{1} << v);
    } else {
        std::vector<bool> used(p.order(), false);
        for (int v = 1; v < p.order(); ++v) {
            if (used[v]) continue;
            int w = p.inv_idx(v);
            used[v] = used[w] = true;
            uint64_t m = (uint64_t{1} << v) | (uint64_t{1} << w);
            s.class_masks.push_back(m);
        }
    }
    s.free_bits = static_cast<int>(s.class_masks.size());
    if (s.free_bits > 40)
        throw BudgetExceeded("scan space: 2^" + std::to_string(s.free_bits) +
                             " sets is beyond any desk-scale budget");
    return s;
}

uint64_t apply_perm_to_mask(uint64_t mask, const Perm& perm) {
    uint64_t out = 0;
    while (mask) {
        int v = __builtin_ctzll(mask);
        out |= uint64_t{1} << perm[v];
        mask &= mask - 1;
    }
    return out;
}

uint64_t canonical_mask(uint64_t mask, const std::vector<Perm>& aut_perms) {
    uint64_t best = mask;
    for (const auto& a : aut_perms)
        best = std::min(best, apply_perm_to_mask(mask, a));
    return best;
}

uint64_t orbit_size(uint64_t mask, const std::vector<Perm>& aut_perms) {
    std::vector<uint64_t> images;
    images.reserve(aut_perms.size());
    for (const auto& a : aut_perms) images.push_back(apply_perm_to_mask(mask, a));
    std::sort(images.begin(), images.end());
    images.erase(std::unique(images.begin(), images.end()), images.end());
    return images.size();
}

void enumerate_connection_sets(const GroupParams& p, Mode mode, bool dedup,
                               const std::vector<Perm>& aut_perms,
                               const std::function<void(uint64_t, uint64_t)>& fn) {
    ScanSpace space = make_scan_space(p, mode);
    const uint64_t total = uint64_t{1} << space.free_bits;
    for (uint64_t idx = 0; idx < total; ++idx) {
        uint64_t mask = space.element_mask(idx);
        if (dedup) {
            if (canonical_mask(mask, aut_perms) != mask) continue;
            fn(mask, orbit_size(mask, aut_perms));
        } else {
            fn(mask, 1);
        }
    }
}

} // namespace qci
