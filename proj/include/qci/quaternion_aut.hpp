#pragma once

#include <optional>
#include <vector>

#include "qci/perm.hpp"
#include "qci/quaternion.hpp"

namespace qci {

// An automorphism of the order-4n dicyclic group, determined by the images
// of a and b.  Construction validates that the extension to the whole group
// is a bijective homomorphism; the induced vertex permutation is
// materialized lazily.
class QAut {
public:
    QAut(QElem image_a, QElem image_b, const GroupParams& p);

    QElem image_a() const { return image_a_; }
    QElem image_b() const { return image_b_; }

    QElem apply(QElem g, const GroupParams& p) const;
    QAut then(const QAut& other, const GroupParams& p) const; // this first
    QAut inverse(const GroupParams& p) const;
    QAut pow(long long e, const GroupParams& p) const;
    bool is_identity() const;
    int order(const GroupParams& p) const;

    const Perm& as_perm(const GroupParams& p) const;

    friend bool operator==(const QAut& x, const QAut& y) {
        return x.image_a_ == y.image_a_ && x.image_b_ == y.image_b_;
    }

private:
    QElem image_a_, image_b_;
    mutable std::optional<Perm> perm_;
};

QAut identity_aut(const GroupParams& p);

// sigma_x: a -> a, b -> xb, for x in <a>.
QAut sigma(QElem x, const GroupParams& p);

// theta_t: a -> a^t, b -> b, for t a unit mod 2n.
QAut theta(long long t, const GroupParams& p);

// alpha_i: multiplies the i-th part generator by the unique subgroup of
// order p_i, fixing every other part and b.  Defined only when k_i >= 2.
QAut alpha(int part_index, const GroupParams& p);

// beta_i = sigma_{a_i^{p_i^{k_i-1}}}; has order p_i for every part.
QAut beta(int part_index, const GroupParams& p);

// epsilon_j: inverts part j, fixes the other parts and b.
QAut epsilon(int part_index, const GroupParams& p);

// epsilon = epsilon_1 ... epsilon_{s+1}: x -> x^-1 and xb -> x^-1 b.
QAut epsilon_all(const GroupParams& p);

struct AutGroupStructure {
    QAut sigma_a;
    std::vector<QAut> aut_c2n_generators;
    PermGroup full_group; // acting on the 4n element indices
};

// Aut(Q_4n) = <sigma_a> x| Aut(C_2n) for n >= 3, with Aut(C_2n) generated
// per prime part: a primitive root for odd parts, inversion for the 2-part
// with k = 2, inversion plus x -> x^5 for k >= 3.  Closure order is
// asserted equal to 2n * phi(2n).  Throws UnsupportedN for n = 2.
AutGroupStructure aut_structural(const GroupParams& p);

// Brute-force oracle: every pair (image_a, image_b) with o(image_a) = 2n,
// image_b outside <a> and the defining relations preserved, closed under
// composition.  Works for all n >= 2, including n = 2 where the structural
// decomposition does not apply.
PermGroup aut_brute(const GroupParams& p, size_t cap = 1u << 20);

// Aut(Q_4n): structural for n >= 3, brute-force for n = 2.
PermGroup full_automorphism_group(const GroupParams& p);

// Hol(Q_4n) = R(Q_4n) x| Aut(Q_4n) as a permutation group on 4n points.
PermGroup holomorph(const GroupParams& p, size_t cap = 1u << 20);

// Smallest primitive root modulo p^k (p odd prime).
long long smallest_primitive_root(long long prime_power, long long prime);

} // namespace qci
