#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qci/errors.hpp"

namespace qci {

// Element of the dicyclic group of order 4n in normal form a^exp_a * b^has_b,
// with exp_a reduced into [0, 2n).  Equality is field equality.
struct QElem {
    int exp_a = 0;
    bool has_b = false;

    friend bool operator==(const QElem&, const QElem&) = default;
    friend auto operator<=>(const QElem&, const QElem&) = default;
};

struct PrimePart {
    long long prime = 0;     // p_i, strictly decreasing across parts, last is 2
    int exponent = 0;        // k_i >= 1
    long long power = 0;     // q_i = p_i^k_i
    long long crt_unit = 0;  // e_i in [0,2n): e_i = 1 mod q_i, = 0 mod 2n/q_i
    int part_gen_exp = 0;    // a_i = a^part_gen_exp, of order q_i
};

// Exponents (in terms of a) of the prime-power components of an element of
// the cyclic subgroup <a>.  parts[i] lies in <a_i> and has p_i-power order;
// the exponents sum to the original exponent mod 2n.
struct PartDecomposition {
    std::vector<int> parts;
};

// Everything fixed by the choice of n: the presentation parameters, the
// prime factorization of 2n together with the CRT data for the part
// decomposition, and cached multiplication/inverse/order tables.
// Immutable after construction; safe to share across threads.
class GroupParams {
public:
    // n >= 2; max_n guards the exhaustive closures downstream (default 64).
    explicit GroupParams(int n, int max_n = 64);

    int n() const { return n_; }
    int two_n() const { return two_n_; }
    int order() const { return order_; }
    const std::vector<PrimePart>& primes() const { return primes_; }
    // Number of odd prime parts; primes()[s()] is the 2-part.
    int s() const { return static_cast<int>(primes_.size()) - 1; }

    // Stable bijection onto {0,...,4n-1}: index(g) = exp_a + 2n*has_b.
    int index_of(QElem g) const { return g.exp_a + two_n_ * (g.has_b ? 1 : 0); }
    QElem element_at(int idx) const {
        return QElem{idx % two_n_, idx >= two_n_};
    }

    QElem identity() const { return QElem{0, false}; }
    QElem a_pow(long long e) const {
        return QElem{static_cast<int>(((e % two_n_) + two_n_) % two_n_), false};
    }
    QElem b() const { return QElem{0, true}; }

    int mul_idx(int g, int h) const { return mul_table_[g * order_ + h]; }
    int inv_idx(int g) const { return inv_table_[g]; }
    int order_of_idx(int g) const { return order_table_[g]; }

    long long euler_phi_two_n() const { return phi_two_n_; }

    std::string to_string(QElem g) const;
    QElem parse_element(const std::string& token) const;

private:
    int n_, two_n_, order_;
    std::vector<PrimePart> primes_;
    long long phi_two_n_ = 1;
    std::vector<int> mul_table_, inv_table_, order_table_;
};

// Product in normal form:
//   (i,0)(k,l) = (i+k, l)
//   (i,1)(k,0) = (i-k, 1)
//   (i,1)(k,1) = (i-k+n, 0)
QElem q_mul(QElem g, QElem h, const GroupParams& p);

// (i,0)^-1 = (-i,0); (i,1)^-1 = (i+n,1)
QElem q_inv(QElem g, const GroupParams& p);

// Least m >= 1 with g^m = 1.  Every element outside <a> has order 4.
int q_order(QElem g, const GroupParams& p);

// CRT decomposition of an element of <a> into its prime-power parts.
// Rejects elements with has_b.
PartDecomposition part_decompose(QElem x, const GroupParams& p);

// Recombine a decomposition back into the element of <a> it came from.
QElem part_recombine(const PartDecomposition& d, const GroupParams& p);

// a^n, the only element of order 2.
QElem unique_involution(const GroupParams& p);

} // namespace qci
