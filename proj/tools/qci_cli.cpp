#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qci/scanner.hpp"

namespace {

using namespace qci;

int status_to_exit(CampaignStatus s) {
    switch (s) {
        case CampaignStatus::complete: return 0;
        case CampaignStatus::counterexample: return 1;
        default: return 2;
    }
}

void print_campaign(const CampaignResult& r) {
    std::cout << r.summary().dump(2) << "\n";
}

std::string default_out_dir() {
    const char* env = std::getenv("QCI_OUT_DIR");
    return env ? env : "";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cayley digraph toolkit for dicyclic groups of order 4n: "
                 "automorphism groups, normality, CI and NNN verdicts, and "
                 "exhaustive verification campaigns with JSON certificates."};
    app.require_subcommand(1);

    // Shared campaign flags.
    std::string dedup = "on";
    int jobs = default_worker_count();
    uint64_t node_cap = 10'000'000;
    std::string out_dir = default_out_dir();
    bool resume = false;
    auto add_campaign_flags = [&](CLI::App* cmd) {
        cmd->add_option("--dedup", dedup, "Orbit dedup: on|off")->default_str("on");
        cmd->add_option("--jobs", jobs, "Worker threads");
        cmd->add_option("--node-cap", node_cap, "Search node cap per instance");
        cmd->add_option("--out", out_dir, "Certificate/summary output directory "
                        "(default: $QCI_OUT_DIR)");
        cmd->add_flag("--resume", resume, "Reuse certificates already in --out");
    };

    std::vector<int> n_list;
    int n_single = 0;
    std::string s_spec, mode_str = "digraph";
    bool lemma41_only = false;

    CLI::App* verify_nci = app.add_subcommand(
        "verify-nci", "Exhaustive graph-mode scan: every normal Cayley graph must be CI");
    verify_nci->add_option("--n-list", n_list, "Values of n")->required()->delimiter(',');
    add_campaign_flags(verify_nci);

    CLI::App* scan_nnnd = app.add_subcommand(
        "scan-nnnd", "Exhaustive digraph-mode scan counting NNN digraphs");
    scan_nnnd->add_option("--n", n_single, "Value of n")->required();
    scan_nnnd->add_flag("--lemma41-only", lemma41_only,
                        "Analyze only the six-element construction set");
    add_campaign_flags(scan_nnnd);

    CLI::App* verify_ndci = app.add_subcommand(
        "verify-ndci", "Digraph-mode scan: every normal Cayley digraph must be CI "
                       "(applicable for n = 2 and odd n)");
    verify_ndci->add_option("--n-list", n_list, "Values of n")->required()->delimiter(',');
    add_campaign_flags(verify_ndci);

    CLI::App* lemma41 = app.add_subcommand(
        "lemma41", "Verify the six-element NNN digraph construction clause by clause");
    lemma41->add_option("--n-list", n_list, "Even n >= 6")->required()->delimiter(',');
    lemma41->add_option("--node-cap", node_cap, "Search node cap per instance");

    CLI::App* single = app.add_subcommand(
        "single", "Full certificate for one connection set");
    single->add_option("--n", n_single, "Value of n")->required();
    single->add_option("--s", s_spec, "Connection set, e.g. \"a,a^5,b,a^3*b\"")->required();
    single->add_option("--mode", mode_str, "digraph|graph")->default_str("digraph");
    single->add_option("--node-cap", node_cap, "Search node cap");
    single->add_option("--out", out_dir, "Output directory for the certificate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    CampaignOptions copts;
    copts.dedup = dedup != "off";
    copts.jobs = jobs;
    copts.node_cap = node_cap;
    copts.out_dir = out_dir;
    copts.resume = resume;

    try {
        if (verify_nci->parsed()) {
            int exit_code = 0;
            for (int n : n_list) {
                CampaignResult r = run_verify_nci(n, copts);
                print_campaign(r);
                exit_code = std::max(exit_code, status_to_exit(r.status));
            }
            return exit_code;
        }
        if (scan_nnnd->parsed()) {
            CampaignResult r = run_scan_nnnd(n_single, copts, lemma41_only);
            print_campaign(r);
            return status_to_exit(r.status);
        }
        if (verify_ndci->parsed()) {
            int exit_code = 0;
            for (int n : n_list) {
                CampaignResult r = run_verify_ndci(n, copts);
                print_campaign(r);
                if (!r.applicable)
                    std::cout << "n=" << n << ": NOT-APPLICABLE (classification "
                              << "covers n = 2 and odd n only)\n";
                exit_code = std::max(exit_code, status_to_exit(r.status));
            }
            return exit_code;
        }
        if (lemma41->parsed()) {
            bool all_pass = true;
            for (const auto& run : run_nnn_family(n_list, node_cap)) {
                std::cout << "n=" << run.n << "  |Aut| = " << run.verification.aut_order
                          << "  <alpha,beta> = " << run.verification.alpha_beta_shape
                          << "\n";
                for (const auto& c : run.verification.clauses) {
                    std::cout << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name;
                    if (!c.detail.empty()) std::cout << "  (" << c.detail << ")";
                    std::cout << "\n";
                }
                all_pass = all_pass && run.verification.all_pass;
            }
            return all_pass ? 0 : 1;
        }
        if (single->parsed()) {
            AnalysisOptions aopts;
            aopts.node_cap = node_cap;
            aopts.deep_ci_when_nonnormal = true;
            Mode mode = mode_str == "graph" ? Mode::graph : Mode::digraph;
            Certificate cert = run_single(n_single, s_spec, mode, aopts);
            std::cout << certificate_to_json(cert).dump(2) << "\n";
            return 0;
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SymmetryViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const IdentityInS& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const InvalidN& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 3;
}
