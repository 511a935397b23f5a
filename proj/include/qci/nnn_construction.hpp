#pragma once

#include <string>
#include <vector>

#include "qci/ci_analysis.hpp"

namespace qci {

// The six-element NNN digraph family: S = {a, a^{n-1}, b, a^{n/2}b, a^n b,
// a^{3n/2}b} for even n >= 6, together with the stabilizer automorphisms
// alpha: a -> a^{n-1}, b -> b and beta = sigma_{a^{n/2}} and the regular
// subgroup generated by R(ab)alpha and R(b).
struct NnnFamilyInstance {
    int n;
    ConnectionSet s;
    QAut alpha;   // order 2, in Aut(G,S)
    QAut beta;    // order 4, in Aut(G,S)
    Perm h_gen_x; // R(ab) alpha
    Perm h_gen_y; // R(b)
};

// Builds and validates an instance; InvalidN for odd n or n < 6.
NnnFamilyInstance build_nnn_instance(int n, const QuaternionContext& ctx);

struct VerificationClause {
    std::string name;
    bool pass;
    std::string detail;
};

struct NnnVerification {
    std::vector<VerificationClause> clauses;
    bool all_pass = false;
    uint64_t aut_order = 0;
    std::string alpha_beta_shape; // "Z4xZ2" or "D8" by the parity of n/2
};

// Machine-checks every constituent claim of the construction:
//  (1) |Aut(Gamma)| = 32n and Aut(Gamma) equals <R(a), R(b), alpha, beta>
//  (2) Gamma is normal
//  (3) H = <R(ab)alpha, R(b)> is regular of order 4n
//  (4) H carries the dicyclic presentation
//  (5) H is not normal in Aut(Gamma)
//  (6) (R(ab)alpha)^2 = R(a^2)
//  (7) o(R(ab)alpha) = 2n
//  (8) (R(ab)alpha)^{R(b)} = (R(ab)alpha)^{-1}
//  (9) the b-side layer is a disjoint union of n/2 complete bipartite
//      K_{4,4} blocks on <a^{n/2}> cosets
// plus the <alpha,beta> isomorphism type dichotomy by the parity of n/2.
NnnVerification verify_nnn_instance(const NnnFamilyInstance& inst,
                                    const QuaternionContext& ctx,
                                    const AutSearchOptions& opts = {});

} // namespace qci
