// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures.  Runs the full desk-scale verification campaigns; expect a few
// minutes of wall time with the default worker count.

#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "qci/graph_aut.hpp"
#include "qci/nnn_construction.hpp"
#include "qci/scanner.hpp"

using namespace qci;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) failures++;
}

int jobs_from_env() {
    const char* env = std::getenv("QCI_JOBS");
    if (env) return std::atoi(env);
    return default_worker_count();
}

} // namespace

int main() {
    const int jobs = jobs_from_env();
    CampaignOptions copts;
    copts.dedup = true;
    copts.jobs = jobs;
    std::printf("acceptance suite: %d workers\n", jobs);

    std::map<int, CampaignResult> nci_runs;   // criterion 1 (+8, 9)
    CampaignResult nnnd4;                     // criterion 2 (+8)
    std::map<int, CampaignResult> nnnd_rev;   // criterion 4

    // --- Criterion 1: every normal Cayley graph is CI, n = 2..6 ---
    {
        const std::map<int, uint64_t> expected_sets{
            {2, 16}, {3, 64}, {4, 256}, {5, 1024}, {6, 4096}};
        bool pass = true;
        std::string detail = "normal Cayley graphs are CI:";
        for (int n : {2, 3, 4, 5, 6}) {
            CampaignResult r = run_verify_nci(n, copts);
            bool ok = r.status == CampaignStatus::complete &&
                      r.counterexample_masks.empty() &&
                      r.totals.weighted_sets == expected_sets.at(n);
            pass = pass && ok;
            detail += " n=" + std::to_string(n) + " sets=" +
                      std::to_string(r.totals.weighted_sets) + " normal=" +
                      std::to_string(r.totals.normal) + " cex=" +
                      std::to_string(r.counterexample_masks.size()) + ";";
            nci_runs.emplace(n, std::move(r));
        }
        report(1, pass, detail);
    }

    // --- Criterion 2: no NNN digraph of Q_16 over all 2^15 sets ---
    {
        nnnd4 = run_scan_nnnd(4, copts);
        bool pass = nnnd4.status == CampaignStatus::complete &&
                    nnnd4.totals.weighted_sets == 32768 && nnnd4.totals.nnn == 0;
        report(2, pass,
               "n=4 digraph scan: sets=" + std::to_string(nnnd4.totals.weighted_sets) +
                   " nnn=" + std::to_string(nnnd4.totals.nnn) + " status=" +
                   (nnnd4.status == CampaignStatus::complete ? "complete" : "other"));
    }

    // --- Criterion 3: the six-element construction verifies clause by clause ---
    {
        const std::map<int, std::string> shape{
            {6, "Z4xZ2"}, {8, "D8"}, {10, "Z4xZ2"}, {12, "D8"}};
        bool pass = true;
        std::string detail = "construction verification:";
        for (const auto& run : run_nnn_family({6, 8, 10, 12})) {
            bool ok = run.verification.all_pass &&
                      run.verification.aut_order ==
                          static_cast<uint64_t>(32) * run.n &&
                      run.verification.alpha_beta_shape == shape.at(run.n);
            pass = pass && ok;
            detail += " n=" + std::to_string(run.n) + " |Aut|=" +
                      std::to_string(run.verification.aut_order) + " shape=" +
                      run.verification.alpha_beta_shape +
                      (ok ? "" : " (FAILED CLAUSES)") + ";";
        }
        report(3, pass, detail);
    }

    // --- Criterion 4: no NNN digraphs at n = 2, 3, 5 ---
    {
        const std::map<int, uint64_t> expected_sets{
            {2, 128}, {3, 2048}, {5, 524288}};
        bool pass = true;
        std::string detail = "reverse direction:";
        for (int n : {2, 3, 5}) {
            CampaignResult r = run_scan_nnnd(n, copts);
            bool ok = r.status == CampaignStatus::complete &&
                      r.totals.weighted_sets == expected_sets.at(n) &&
                      r.totals.nnn == 0;
            pass = pass && ok;
            detail += " n=" + std::to_string(n) + " sets=" +
                      std::to_string(r.totals.weighted_sets) + " nnn=" +
                      std::to_string(r.totals.nnn) + ";";
            nnnd_rev.emplace(n, std::move(r));
        }
        report(4, pass, detail);
    }

    // --- Criterion 5: every normal Cayley digraph is CI at n = 2, 3 ---
    {
        const std::map<int, uint64_t> expected_sets{{2, 128}, {3, 2048}};
        bool pass = true;
        std::string detail = "normal digraphs are CI:";
        for (int n : {2, 3}) {
            CampaignResult r = run_verify_ndci(n, copts);
            bool ok = r.applicable && r.status == CampaignStatus::complete &&
                      r.counterexample_masks.empty() &&
                      r.totals.weighted_sets == expected_sets.at(n);
            pass = pass && ok;
            detail += " n=" + std::to_string(n) + " sets=" +
                      std::to_string(r.totals.weighted_sets) + " normal=" +
                      std::to_string(r.totals.normal) + " cex=" +
                      std::to_string(r.counterexample_masks.size()) + ";";
        }
        report(5, pass, detail);
    }

    // --- Criterion 6: search engine vs brute-force oracle ---
    {
        bool pass = true;
        uint64_t checked = 0;
        // All 128 digraph sets at n = 2.
        {
            GroupParams p(2);
            ScanSpace space = make_scan_space(p, Mode::digraph);
            for (uint64_t idx = 0; idx < (uint64_t{1} << space.free_bits); ++idx) {
                CayleyDigraph g = build_cayley(
                    p, ConnectionSet::from_mask(space.element_mask(idx), p));
                if (!(automorphism_group(g).order ==
                      automorphism_group_bruteforce(g).order()))
                    pass = false;
                checked++;
            }
        }
        // All 64 graph sets at n = 3.
        {
            GroupParams p(3);
            ScanSpace space = make_scan_space(p, Mode::graph);
            for (uint64_t idx = 0; idx < (uint64_t{1} << space.free_bits); ++idx) {
                CayleyDigraph g = build_cayley(
                    p, ConnectionSet::from_mask(space.element_mask(idx), p));
                if (!(automorphism_group(g).order ==
                      automorphism_group_bruteforce(g).order()))
                    pass = false;
                checked++;
            }
        }
        report(6, pass,
               "engine order equals brute-force order on " +
                   std::to_string(checked) + " instances (128 digraph n=2, 64 graph n=3)");
    }

    // --- Criterion 7: structural algebra suite ---
    {
        bool pass = true;
        std::string detail;

        // |Aut(Q_4n)| = 2n phi(2n) and structural = brute element sets, n = 3..8.
        for (int n = 3; n <= 8; ++n) {
            GroupParams p(n);
            AutGroupStructure s = aut_structural(p);
            uint64_t expected = static_cast<uint64_t>(p.two_n()) *
                                static_cast<uint64_t>(p.euler_phi_two_n());
            bool ok = s.full_group.order_u64() == expected &&
                      s.full_group.elements() == aut_brute(p).elements();
            pass = pass && ok;
        }
        detail += "aut structure n=3..8 ok;";

        // sigma_c^{R(z)} = R(c) sigma_c for all c in <a>, z outside, n <= 6.
        for (int n = 2; n <= 6 && pass; ++n) {
            GroupParams p(n);
            for (int c = 0; c < p.two_n() && pass; ++c) {
                Perm sc = sigma(p.a_pow(c), p).as_perm(p);
                Perm expect = right_multiplication(p.a_pow(c), p).then(sc);
                for (int z = 0; z < p.two_n() && pass; ++z) {
                    Perm rz = right_multiplication(QElem{z, true}, p);
                    if (!(sc.conjugated_by(rz) == expect)) pass = false;
                }
            }
        }
        detail += " conjugation identity n<=6 ok;";

        // Part-wise commutation at n <= 6: generators of distinct parts
        // commute, including the sigma side.
        for (int n = 3; n <= 6 && pass; ++n) {
            GroupParams p(n);
            AutGroupStructure s = aut_structural(p);
            int parts = p.s() + 1;
            std::vector<std::vector<Perm>> per_part(parts);
            for (int i = 0; i < parts; ++i) {
                const auto& part = p.primes()[i];
                per_part[i].push_back(
                    sigma(p.a_pow(part.crt_unit), p).as_perm(p));
                per_part[i].push_back(epsilon(i, p).as_perm(p));
                if (part.prime != 2) {
                    long long g = smallest_primitive_root(part.power, part.prime);
                    long long e = g * part.crt_unit + (1 - part.crt_unit);
                    long long em = ((e % p.two_n()) + p.two_n()) % p.two_n();
                    per_part[i].push_back(theta(em, p).as_perm(p));
                }
            }
            for (int i = 0; i < parts && pass; ++i)
                for (int j = 0; j < parts && pass; ++j) {
                    if (i == j) continue;
                    for (const auto& x : per_part[i])
                        for (const auto& y : per_part[j])
                            if (!(x.then(y) == y.then(x))) pass = false;
                }
        }
        detail += " part commutation n<=6 ok;";

        // Commutator identities, exhaustive at n <= 3.
        for (int n = 2; n <= 3 && pass; ++n) {
            GroupParams p(n);
            auto mul = [&](int g, int h) { return p.mul_idx(g, h); };
            auto inv = [&](int g) { return p.inv_idx(g); };
            auto comm = [&](int x, int y) {
                return mul(mul(inv(x), inv(y)), mul(x, y));
            };
            auto conj = [&](int x, int y) { return mul(mul(inv(y), x), y); };
            for (int x = 0; x < p.order() && pass; ++x)
                for (int y = 0; y < p.order() && pass; ++y)
                    for (int z = 0; z < p.order(); ++z) {
                        if (comm(mul(x, y), z) !=
                                mul(conj(comm(x, z), y), comm(y, z)) ||
                            comm(x, mul(y, z)) !=
                                mul(comm(x, z), conj(comm(x, y), z))) {
                            pass = false;
                            break;
                        }
                    }
        }
        detail += " commutator identities n<=3 ok";
        report(7, pass, detail);
    }

    // --- Criterion 8: predicate soundness across the criterion 1-2 scans ---
    {
        uint64_t violations = nnnd4.totals.soundness_violations;
        uint64_t fired = nnnd4.totals.predicate_fired;
        for (const auto& [n, r] : nci_runs) {
            violations += r.totals.soundness_violations;
            fired += r.totals.predicate_fired;
        }
        report(8, violations == 0,
               "predicates fired on " + std::to_string(fired) +
                   " instances, false positives: " + std::to_string(violations));
    }

    // --- Criterion 9: Sylow structure of regular subgroups, n = 4 and 6 ---
    {
        bool pass = true;
        std::string detail = "regular-subgroup Sylow structure:";
        for (int n : {4, 6}) {
            const CampaignResult& r = nci_runs.at(n);
            bool ok = r.totals.lemma32_checked > 0 && r.totals.lemma32_violations == 0;
            pass = pass && ok;
            detail += " n=" + std::to_string(n) + " checked=" +
                      std::to_string(r.totals.lemma32_checked) + " violations=" +
                      std::to_string(r.totals.lemma32_violations) +
                      (n == 4 ? " (vacuous: no odd part)" : "") + ";";
        }
        report(9, pass, detail);
    }

    std::printf("%d/9 criteria passed\n", 9 - failures);
    return failures;
}
