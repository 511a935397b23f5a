#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qci/perm.hpp"
#include "qci/quaternion.hpp"

namespace qci {

// Fixed-width vertex set; degrees here never exceed 256.
struct VertexSet {
    std::array<uint64_t, 4> words{};

    void set(int v) { words[v >> 6] |= uint64_t{1} << (v & 63); }
    void reset(int v) { words[v >> 6] &= ~(uint64_t{1} << (v & 63)); }
    bool test(int v) const { return (words[v >> 6] >> (v & 63)) & 1; }
    int count() const;
    VertexSet operator&(const VertexSet& o) const;
    VertexSet operator|(const VertexSet& o) const;
    friend bool operator==(const VertexSet&, const VertexSet&) = default;
    template <typename F> void for_each(F&& f) const {
        for (int w = 0; w < 4; ++w) {
            uint64_t bits = words[w];
            while (bits) {
                int v = (w << 6) + __builtin_ctzll(bits);
                f(v);
                bits &= bits - 1;
            }
        }
    }
};

// Plain directed graph on n vertices with bitset adjacency both ways.
struct Digraph {
    int n = 0;
    std::vector<VertexSet> out, in;

    explicit Digraph(int vertices = 0) : n(vertices), out(vertices), in(vertices) {}
    void add_arc(int u, int v) { out[u].set(v); in[v].set(u); }
    bool arc(int u, int v) const { return out[u].test(v); }
    uint64_t arc_count() const;
    bool is_symmetric() const; // (u,v) iff (v,u)
};

enum class Mode { digraph, graph };

struct ConnectionSet {
    std::vector<QElem> members; // sorted by element index, identity excluded
    bool symmetric = false;     // S = S^-1

    uint64_t mask(const GroupParams& p) const; // bit per element index
    static ConnectionSet from_mask(uint64_t mask, const GroupParams& p);
    static ConnectionSet from_elements(std::vector<QElem> elems, const GroupParams& p);
    std::vector<std::string> serialized(const GroupParams& p) const;
    static ConnectionSet parse(const std::string& csv, const GroupParams& p);
};

struct CayleyDigraph {
    const GroupParams* params = nullptr;
    ConnectionSet conn;
    Digraph adj;

    int degree() const { return adj.n; }
};

// Vertex g gets an out-arc to sg for every s in S; identity in S rejected.
CayleyDigraph build_cayley(const GroupParams& p, const ConnectionSet& s);

// <S> = Q_4n, decided both by subgroup closure and by reachability from
// the identity vertex; the two must agree (ConsistencyFailure otherwise).
bool is_connected(const CayleyDigraph& g);

// Induced subdigraph on X (arcs inside X only; other vertices isolated,
// membership returned alongside).
Digraph induced(const CayleyDigraph& g, const VertexSet& x);
// Arcs from X to Y only.
Digraph induced_between(const CayleyDigraph& g, const VertexSet& x, const VertexSet& y);

// ---- Connection-set enumeration -----------------------------------------

// Free choices of a scan: digraph mode has one bit per non-identity
// element; graph mode one bit per inverse-closed class ({a^n} plus pairs).
struct ScanSpace {
    Mode mode;
    int free_bits;                           // scan iterates 2^free_bits masks
    std::vector<uint64_t> class_masks;       // element-mask per free bit
    uint64_t element_mask(uint64_t scan_index) const;
};

ScanSpace make_scan_space(const GroupParams& p, Mode mode);

// Orbit of an element-mask under a set of group-automorphism perms.
uint64_t canonical_mask(uint64_t mask, const std::vector<Perm>& aut_perms);
uint64_t orbit_size(uint64_t mask, const std::vector<Perm>& aut_perms);
uint64_t apply_perm_to_mask(uint64_t mask, const Perm& perm);

// Streams every connection set of the given mode (dedup keeps one
// lexicographically-least representative per Aut(Q_4n)-orbit of the
// incidence mask, read least index first).  The callback receives the
// element mask and the orbit weight (1 when dedup is off).
// Throws BudgetExceeded when the space exceeds 2^40 sets.
void enumerate_connection_sets(const GroupParams& p, Mode mode, bool dedup,
                               const std::vector<Perm>& aut_perms,
                               const std::function<void(uint64_t mask, uint64_t weight)>& fn);

} // namespace qci
