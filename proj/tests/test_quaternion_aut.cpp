#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "qci/quaternion_aut.hpp"

using namespace qci;

TEST_CASE("sigma family") {
    GroupParams p(6);

    CHECK(sigma(p.identity(), p).is_identity());
    CHECK_THROWS_AS(sigma(p.b(), p), PreconditionFailed);

    // sigma_{a^n} fixes <a> pointwise and maps a^i b to its inverse.
    QAut s_an = sigma(p.a_pow(p.n()), p);
    for (int i = 0; i < p.two_n(); ++i) {
        CHECK(s_an.apply(QElem{i, false}, p) == QElem{i, false});
        CHECK(s_an.apply(QElem{i, true}, p) == q_inv(QElem{i, true}, p));
    }

    // o(sigma_a) = 2n at n = 4.
    GroupParams p4(4);
    CHECK(sigma(p4.a_pow(1), p4).order(p4) == 8);

    // Homomorphism property of the induced permutation, all pairs, n <= 6.
    for (int n : {2, 3, 6}) {
        GroupParams q(n);
        QAut s = sigma(q.a_pow(1), q);
        const Perm& perm = s.as_perm(q);
        for (int g = 0; g < q.order(); ++g)
            for (int h = 0; h < q.order(); ++h)
                REQUIRE(perm[q.mul_idx(g, h)] == q.mul_idx(perm[g], perm[h]));
    }
}

TEST_CASE("alpha of each repeated part") {
    // n = 9: 2n = 18 = 3^2 * 2, alpha_1 sends a_1 to a_1^4.
    GroupParams p9(9);
    QAut a1 = alpha(0, p9);
    QElem part_gen = p9.a_pow(p9.primes()[0].crt_unit);
    QElem expect = p9.identity();
    for (int i = 0; i < 4; ++i) expect = q_mul(expect, part_gen, p9);
    CHECK(a1.apply(part_gen, p9) == expect);
    CHECK(a1.apply(p9.b(), p9) == p9.b());
    CHECK(a1.order(p9) == 3);
    CHECK(a1.pow(3, p9).is_identity());

    // k = 1 parts reject alpha.
    CHECK_THROWS_AS(alpha(1, p9), PartExponentTooSmall); // 2-part has k = 1

    // n = 4: 2n = 8 = 2^3, alpha sends a to a^5.
    GroupParams p4(4);
    QAut a = alpha(0, p4);
    CHECK(a.apply(QElem{1, false}, p4) == QElem{5, false});
    CHECK(a.apply(p4.b(), p4) == p4.b());
    CHECK(a.order(p4) == 2);
}

TEST_CASE("beta of every part") {
    GroupParams p9(9);
    // beta fixes a, has order p_i.
    for (int i = 0; i < 2; ++i) {
        QAut b_i = beta(i, p9);
        CHECK(b_i.apply(QElem{1, false}, p9) == QElem{1, false});
        CHECK(b_i.order(p9) == p9.primes()[i].prime);
    }

    // n = 2: 2n = 4 = 2^2, beta_{s+1} sends b to a^2 b.
    GroupParams p2(2);
    QAut b = beta(0, p2);
    CHECK(b.apply(p2.b(), p2) == QElem{2, true});
}

TEST_CASE("epsilon family") {
    // n odd: k_{s+1} = 1 and epsilon_{s+1} is the identity.
    GroupParams p3(3);
    CHECK(epsilon(1, p3).is_identity());

    for (int n : {2, 3, 6, 9}) {
        GroupParams p(n);
        QAut e = epsilon_all(p);
        CHECK(e.pow(2, p).is_identity());
        for (int i = 0; i < p.two_n(); ++i) {
            CHECK(e.apply(QElem{i, false}, p) == q_inv(QElem{i, false}, p));
            // (xb)^eps = x^-1 b
            QElem xb{i, true};
            QElem expect = q_mul(q_inv(QElem{i, false}, p), p.b(), p);
            CHECK(e.apply(xb, p) == expect);
        }
        // epsilon is the product of the per-part inversions.
        QAut prod = identity_aut(p);
        for (int j = 0; j <= p.s(); ++j) prod = prod.then(epsilon(j, p), p);
        CHECK(prod == e);
    }
}

TEST_CASE("structural automorphism group") {
    CHECK_THROWS_AS(aut_structural(GroupParams(2)), UnsupportedN);

    GroupParams p3(3);
    CHECK(aut_structural(p3).full_group.order_u64() == 12);
    GroupParams p4(4);
    CHECK(aut_structural(p4).full_group.order_u64() == 32);
    GroupParams p6(6);
    CHECK(aut_structural(p6).full_group.order_u64() == 48);

    // <sigma_a> is normal in Aut(Q_4n).
    for (int n : {3, 4, 6}) {
        GroupParams p(n);
        AutGroupStructure s = aut_structural(p);
        PermGroup ker = closure({s.sigma_a.as_perm(p)}, 1000);
        CHECK(ker.order_u64() == static_cast<uint64_t>(p.two_n()));
        CHECK(is_normal_in(ker, s.full_group));
    }
}

TEST_CASE("brute force oracle matches") {
    GroupParams p2(2);
    PermGroup aut8 = aut_brute(p2);
    CHECK(aut8.order_u64() == 24);
    CHECK(aut8.contains(Perm::identity(8)));

    for (int n : {3, 4, 5}) {
        GroupParams p(n);
        CHECK(aut_brute(p).elements() == aut_structural(p).full_group.elements());
    }
}

TEST_CASE("sigma conjugation by theta") {
    // sigma_x^theta = sigma_{x^theta} over the Aut(C_2n) generators, n <= 6.
    for (int n : {3, 4, 5, 6}) {
        GroupParams p(n);
        AutGroupStructure s = aut_structural(p);
        for (const auto& th : s.aut_c2n_generators) {
            for (int j = 0; j < p.two_n(); ++j) {
                QElem x{j, false};
                Perm lhs = sigma(x, p).as_perm(p).conjugated_by(th.as_perm(p));
                Perm rhs = sigma(th.apply(x, p), p).as_perm(p);
                REQUIRE(lhs == rhs);
            }
        }
    }
}

TEST_CASE("parts commute") {
    // Automorphisms supported on distinct parts commute, n <= 6.
    for (int n : {3, 6}) {
        GroupParams p(n);
        int parts = p.s() + 1;
        // Collect per-part automorphism sets: the full Aut(C_{q_i}) image in
        // Aut(Q_4n) plus <sigma_{a_i}>.
        std::vector<std::vector<Perm>> theta_side(parts), sigma_side(parts);
        for (int i = 0; i < parts; ++i) {
            const auto& part = p.primes()[i];
            for (long long t = 0; t < part.power; ++t) {
                if (std::gcd(t, part.power) != 1) continue;
                // exponent map: t on part i, 1 elsewhere
                long long e = t * part.crt_unit + (1 - part.crt_unit);
                long long em = ((e % p.two_n()) + p.two_n()) % p.two_n();
                theta_side[i].push_back(theta(em, p).as_perm(p));
            }
            QAut s_ai = sigma(p.a_pow(part.crt_unit), p);
            for (long long k = 0; k < part.power; ++k)
                sigma_side[i].push_back(s_ai.pow(k, p).as_perm(p));
        }
        for (int i = 0; i < parts; ++i)
            for (int j = 0; j < parts; ++j) {
                if (i == j) continue;
                for (const auto& x : theta_side[i]) {
                    for (const auto& y : theta_side[j])
                        REQUIRE(x.then(y) == y.then(x));
                    for (const auto& y : sigma_side[j])
                        REQUIRE(x.then(y) == y.then(x));
                }
            }
    }
}

TEST_CASE("holomorph") {
    GroupParams p3(3);
    PermGroup hol = holomorph(p3);
    CHECK(hol.order_u64() == 144);

    PermGroup rq = right_regular_representation(p3);
    CHECK(is_normal_in(rq, hol));

    // sigma_c^{R(z)} = R(c) sigma_c for c = a, z = b at n = 4.
    GroupParams p4(4);
    Perm sc = sigma(p4.a_pow(1), p4).as_perm(p4);
    Perm rz = right_multiplication(p4.b(), p4);
    Perm rc = right_multiplication(p4.a_pow(1), p4);
    CHECK(sc.conjugated_by(rz) == rc.then(sc));

    // The same identity for every c in <a> and z outside it, n <= 6.
    for (int n : {2, 3, 5, 6}) {
        GroupParams p(n);
        for (int c = 0; c < p.two_n(); ++c) {
            Perm sigma_c = sigma(p.a_pow(c), p).as_perm(p);
            Perm r_c = right_multiplication(p.a_pow(c), p);
            Perm expect = r_c.then(sigma_c);
            for (int z = 0; z < p.two_n(); ++z) {
                Perm r_z = right_multiplication(QElem{z, true}, p);
                REQUIRE(sigma_c.conjugated_by(r_z) == expect);
            }
        }
    }
}
