#include "qci/quaternion_aut.hpp"

#include <algorithm>
#include <numeric>

namespace qci {

namespace {

long long mod_pos(long long v, long long m) { return ((v % m) + m) % m; }

// Does <x, y> exhaust the group?  Plain index-space closure.
bool pair_generates(int xi, int yi, const GroupParams& p) {
    std::vector<bool> in(p.order(), false);
    std::vector<int> stack;
    in[0] = true;
    stack.push_back(0);
    int count = 1;
    while (!stack.empty()) {
        int g = stack.back();
        stack.pop_back();
        for (int h : {xi, yi}) {
            int prod = p.mul_idx(g, h);
            if (!in[prod]) { in[prod] = true; ++count; stack.push_back(prod); }
        }
    }
    return count == p.order();
}

// Whether (A, B) extends to an automorphism: o(A) = 2n, B^2 = A^n,
// A^B = A^-1, and the pair generates.  Von Dyck then gives a surjective
// endomorphism, which is bijective by finiteness.
bool valid_image_pair(int ai, int bi, const GroupParams& p) {
    if (p.order_of_idx(ai) != p.two_n()) return false;
    int an = 0;
    for (int i = 0; i < p.n(); ++i) an = p.mul_idx(an, ai);
    if (p.mul_idx(bi, bi) != an) return false;
    int conj = p.mul_idx(p.mul_idx(p.inv_idx(bi), ai), bi);
    if (conj != p.inv_idx(ai)) return false;
    return pair_generates(ai, bi, p);
}

Perm perm_from_image_pair(int ai, int bi, const GroupParams& p) {
    // phi(a^i b^j) = A^i B^j, built incrementally.
    std::vector<uint16_t> img(p.order());
    int apow = 0; // A^i
    for (int i = 0; i < p.two_n(); ++i) {
        img[p.index_of(QElem{i, false})] = static_cast<uint16_t>(apow);
        img[p.index_of(QElem{i, true})] = static_cast<uint16_t>(p.mul_idx(apow, bi));
        apow = p.mul_idx(apow, ai);
    }
    return Perm(std::move(img));
}

} // namespace

QAut::QAut(QElem image_a, QElem image_b, const GroupParams& p)
    : image_a_(image_a), image_b_(image_b) {
    if (!valid_image_pair(p.index_of(image_a), p.index_of(image_b), p))
        throw PreconditionFailed("QAut: images " + p.to_string(image_a) + ", " +
                                 p.to_string(image_b) +
                                 " do not extend to an automorphism");
}

QElem QAut::apply(QElem g, const GroupParams& p) const {
    return p.element_at(as_perm(p)[p.index_of(g)]);
}

const Perm& QAut::as_perm(const GroupParams& p) const {
    if (!perm_)
        perm_ = perm_from_image_pair(p.index_of(image_a_), p.index_of(image_b_), p);
    return *perm_;
}

QAut QAut::then(const QAut& other, const GroupParams& p) const {
    return QAut(other.apply(image_a_, p), other.apply(image_b_, p), p);
}

QAut QAut::inverse(const GroupParams& p) const {
    const Perm inv = as_perm(p).inverse();
    return QAut(p.element_at(inv[p.index_of(QElem{1, false})]),
                p.element_at(inv[p.index_of(QElem{0, true})]), p);
}

QAut QAut::pow(long long e, const GroupParams& p) const {
    QAut base = e < 0 ? inverse(p) : *this;
    if (e < 0) e = -e;
    QAut acc = identity_aut(p);
    while (e > 0) {
        if (e & 1) acc = acc.then(base, p);
        base = base.then(base, p);
        e >>= 1;
    }
    return acc;
}

bool QAut::is_identity() const {
    return image_a_ == QElem{1, false} && image_b_ == QElem{0, true};
}

int QAut::order(const GroupParams& p) const {
    QAut cur = *this;
    int ord = 1;
    while (!cur.is_identity()) {
        cur = cur.then(*this, p);
        ++ord;
        if (ord > 4 * p.order())
            throw ConsistencyFailure("QAut::order: runaway iteration");
    }
    return ord;
}

QAut identity_aut(const GroupParams& p) {
    return QAut(QElem{1, false}, QElem{0, true}, p);
}

QAut sigma(QElem x, const GroupParams& p) {
    if (x.has_b)
        throw PreconditionFailed("sigma: x must lie in <a>");
    return QAut(QElem{1, false}, q_mul(x, p.b(), p), p);
}

QAut theta(long long t, const GroupParams& p) {
    if (std::gcd(mod_pos(t, p.two_n()), static_cast<long long>(p.two_n())) != 1)
        throw PreconditionFailed("theta: exponent not a unit mod 2n");
    return QAut(p.a_pow(t), p.b(), p);
}

namespace {

// Exponent map acting as e on part i and trivially elsewhere.
long long part_local_exponent(const GroupParams& p, int part_index, long long e) {
    const auto& part = p.primes().at(part_index);
    // t = e mod q_i, t = 1 mod 2n/q_i
    long long t = mod_pos(e, part.power) * part.crt_unit +
                  mod_pos(1 - part.crt_unit, p.two_n());
    return mod_pos(t, p.two_n());
}

} // namespace

QAut alpha(int part_index, const GroupParams& p) {
    const auto& part = p.primes().at(part_index);
    if (part.exponent < 2)
        throw PartExponentTooSmall("alpha: part " + std::to_string(part_index) +
                                   " has k_i = 1");
    long long e = part.power / part.prime + 1; // p_i^{k_i-1} + 1
    return theta(part_local_exponent(p, part_index, e), p);
}

QAut beta(int part_index, const GroupParams& p) {
    const auto& part = p.primes().at(part_index);
    long long exp = part.crt_unit * (part.power / part.prime);
    return sigma(p.a_pow(exp), p);
}

QAut epsilon(int part_index, const GroupParams& p) {
    return theta(part_local_exponent(p, part_index, -1), p);
}

QAut epsilon_all(const GroupParams& p) {
    return theta(p.two_n() - 1, p);
}

long long smallest_primitive_root(long long prime_power, long long prime) {
    long long phi = (prime_power / prime) * (prime - 1);
    for (long long g = 2; g < prime_power; ++g) {
        if (std::gcd(g, prime_power) != 1) continue;
        long long cur = g % prime_power, ord = 1;
        while (cur != 1) {
            cur = (cur * g) % prime_power;
            ++ord;
        }
        if (ord == phi) return g;
    }
    throw ConsistencyFailure("no primitive root found mod " +
                             std::to_string(prime_power));
}

AutGroupStructure aut_structural(const GroupParams& p) {
    if (p.n() < 3)
        throw UnsupportedN("aut_structural: requires n >= 3 (use aut_brute)");

    AutGroupStructure s{sigma(QElem{1, false}, p), {}, {}};

    for (int i = 0; i < static_cast<int>(p.primes().size()); ++i) {
        const auto& part = p.primes()[i];
        if (part.prime != 2) {
            long long g = smallest_primitive_root(part.power, part.prime);
            s.aut_c2n_generators.push_back(theta(part_local_exponent(p, i, g), p));
        } else if (part.exponent == 2) {
            s.aut_c2n_generators.push_back(epsilon(i, p));
        } else if (part.exponent >= 3) {
            s.aut_c2n_generators.push_back(epsilon(i, p));
            s.aut_c2n_generators.push_back(theta(part_local_exponent(p, i, 5), p));
        }
        // k = 1 on the 2-part: Aut(C_2) is trivial, no generator.
    }

    std::vector<Perm> gens{s.sigma_a.as_perm(p)};
    for (const auto& t : s.aut_c2n_generators) gens.push_back(t.as_perm(p));
    PermGroup full = closure(gens, 1u << 20);
    uint64_t expected =
        static_cast<uint64_t>(p.two_n()) * static_cast<uint64_t>(p.euler_phi_two_n());
    if (full.order_u64() != expected)
        throw ConsistencyFailure("aut_structural: order " +
                                 std::to_string(full.order_u64()) +
                                 " != 2n*phi(2n) = " + std::to_string(expected));
    s.full_group = std::move(full);
    return s;
}

PermGroup aut_brute(const GroupParams& p, size_t cap) {
    std::vector<Perm> found;
    for (int ai = 0; ai < p.order(); ++ai) {
        if (p.order_of_idx(ai) != p.two_n()) continue;
        for (int bi = p.two_n(); bi < p.order(); ++bi) {
            if (!valid_image_pair(ai, bi, p)) continue;
            found.push_back(perm_from_image_pair(ai, bi, p));
        }
    }
    if (found.empty())
        throw ConsistencyFailure("aut_brute: no automorphisms found");
    return closure(found, cap);
}

PermGroup full_automorphism_group(const GroupParams& p) {
    if (p.n() == 2) return aut_brute(p);
    return aut_structural(p).full_group;
}

PermGroup holomorph(const GroupParams& p, size_t cap) {
    PermGroup aut = full_automorphism_group(p);
    std::vector<Perm> gens{right_multiplication(QElem{1, false}, p),
                           right_multiplication(p.b(), p)};
    for (const auto& g : aut.generators()) gens.push_back(g);
    PermGroup hol = closure(gens, cap);
    uint64_t expected = static_cast<uint64_t>(p.order()) * aut.order_u64();
    if (hol.order_u64() != expected)
        throw ConsistencyFailure("holomorph: order " + std::to_string(hol.order_u64()) +
                                 " != 4n*|Aut| = " + std::to_string(expected));
    return hol;
}

} // namespace qci
