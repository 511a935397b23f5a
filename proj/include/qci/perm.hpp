#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qci/errors.hpp"
#include "qci/quaternion.hpp"

namespace qci {

// Exact element count with saturation far above anything enumerable here.
// Orders of materialized groups always fit u64; symmetric groups on a few
// dozen points do not, so the automorphism engine reports through this.
struct BigCount {
    unsigned __int128 value = 1;
    bool saturated = false;

    static BigCount one() { return BigCount{}; }
    static BigCount of(uint64_t v) { return BigCount{v, false}; }

    void mul(uint64_t m);
    bool fits_u64() const { return !saturated && value <= ~uint64_t{0}; }
    uint64_t as_u64() const;
    std::string str() const; // decimal, "overflow" when saturated
    bool equals_u64(uint64_t v) const { return !saturated && value == v; }

    friend bool operator==(const BigCount& a, const BigCount& b) {
        return a.saturated == b.saturated && (a.saturated || a.value == b.value);
    }
};

// Bijection of {0,...,degree-1}; images[v] is the image of v.
// Composition convention project-wide: apply the left factor first,
// (p*q)[v] = q[p[v]].
struct Perm {
    std::vector<uint16_t> images;

    Perm() = default;
    explicit Perm(std::vector<uint16_t> img) : images(std::move(img)) {}
    static Perm identity(int degree);

    int degree() const { return static_cast<int>(images.size()); }
    uint16_t operator[](int v) const { return images[v]; }
    bool is_identity() const;

    Perm then(const Perm& q) const; // this first, then q
    Perm inverse() const;
    Perm pow(long long e) const;
    Perm conjugated_by(const Perm& g) const; // g^-1 * this * g
    uint64_t order() const;                  // lcm of cycle lengths

    friend bool operator==(const Perm&, const Perm&) = default;
    friend auto operator<=>(const Perm&, const Perm&) = default;
};

Perm compose(const Perm& p, const Perm& q); // apply p first

struct PermHash {
    size_t operator()(const Perm& p) const;
};

// A permutation group given by generators.  The element closure is
// enumerated on demand (explicit breadth-first products, no stabilizer
// chains); groups whose exact order is known at construction may skip
// materialization entirely.
class PermGroup {
public:
    PermGroup() = default;
    static PermGroup trivial(int degree);
    // Generators only; order discovered on materialization.
    static PermGroup from_generators(int degree, std::vector<Perm> gens,
                                     size_t cap = kDefaultCap);
    // Generators plus externally established exact order (automorphism
    // engine).  Materialization stays available while the order fits cap.
    static PermGroup with_known_order(int degree, std::vector<Perm> gens,
                                      BigCount order, size_t cap = kDefaultCap);
    // A closure already in hand (e.g. a filtered subgroup); verified closed.
    static PermGroup from_elements(int degree, std::vector<Perm> elems);

    int degree() const { return degree_; }
    const std::vector<Perm>& generators() const { return generators_; }

    BigCount order() const;
    uint64_t order_u64() const; // throws CapExceeded if order does not fit

    bool materialized() const { return !elements_.empty(); }
    const std::vector<Perm>& elements() const; // sorted; materializes
    bool contains(const Perm& p) const;        // materializes

    // Sorted element list as a comparable fingerprint.
    const std::vector<Perm>& fingerprint() const { return elements(); }

private:
    static constexpr size_t kDefaultCap = 1u << 20;

    void materialize() const;

    int degree_ = 0;
    std::vector<Perm> generators_;
    size_t cap_ = kDefaultCap;
    mutable std::optional<BigCount> order_;
    mutable std::vector<Perm> elements_; // sorted when non-empty
};

// Breadth-first product closure of gens; throws CapExceeded past cap.
PermGroup closure(const std::vector<Perm>& gens, size_t cap);

// Transitive with order equal to degree (equivalently transitive with
// trivial point stabilizers).
bool is_regular(const PermGroup& g);

bool is_transitive(const PermGroup& g);

// True iff h^g = h for all g in big.  Requires small <= big as element
// sets (ContainmentViolated otherwise).  Generator-level conjugation is
// checked first, then re-verified over the full closure of small.
bool is_normal_in(const PermGroup& small, const PermGroup& big);

// A Sylow p-subgroup found by greedy closure over p-elements; order is
// verified to be the exact maximal p-power dividing |g|.
PermGroup sylow_subgroup(const PermGroup& g, long long prime);

// Exhaustive conjugacy test over the elements of ambient.
bool are_conjugate_subgroups(const PermGroup& h1, const PermGroup& h2,
                             const PermGroup& ambient);

// Does h carry the dicyclic presentation of order 4n?  Searches for a pair
// (x, y) with o(x) = 2n, y^2 = x^n, x^y = x^-1; |h| must be 4n.
std::optional<std::pair<Perm, Perm>> iso_to_quaternion(const PermGroup& h,
                                                       const GroupParams& p);

// Right multiplication R(g): x -> xg on element indices.
Perm right_multiplication(QElem g, const GroupParams& p);
// R(G) as a group, generated by R(a), R(b).
PermGroup right_regular_representation(const GroupParams& p);

} // namespace qci
