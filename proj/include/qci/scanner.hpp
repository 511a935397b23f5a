#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qci/ci_analysis.hpp"
#include "qci/nnn_construction.hpp"

namespace qci {

using json = nlohmann::json;

// One machine-checkable verdict record per analyzed connection set.
struct Certificate {
    int schema_version = 1;
    int n = 0;
    Mode mode = Mode::digraph;
    std::vector<std::string> connection_set;
    uint64_t mask = 0;

    bool connected = false;
    bool normal = false;
    std::optional<bool> ci; // unset when the CI analysis was not run
    bool nnn = false;

    std::string aut_order;          // exact decimal
    uint64_t aut_gs_order = 0;
    std::optional<int> regular_subgroup_count;
    std::optional<int> conjugacy_class_count;

    // Generator images of a non-normal regular subgroup (NNN witness).
    std::optional<std::vector<std::vector<int>>> non_normal_subgroup_generators;
    // A generator of Aut(Gamma) that moves R(G) off itself.
    std::optional<std::vector<int>> normality_witness;

    Tri lemma_cond1 = Tri::no, lemma_cond2 = Tri::no, lemma_cond3 = Tri::no;
    bool mainpro_fired = false;
    bool predicate_soundness_ok = true; // fired predicates imply non-normal
    std::optional<bool> lemma32_holds;  // normal graphs, when requested

    uint64_t search_nodes = 0;
    double elapsed_ms = 0.0;
};

json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const json& j);

struct AnalysisOptions {
    uint64_t node_cap = 10'000'000;
    bool deep_ci_when_nonnormal = false; // single-instance mode only
    bool check_lemma32 = false;          // graph-mode campaigns
};

// The full decision pipeline for one connection set.
Certificate analyze_mask(const QuaternionContext& ctx, uint64_t mask, Mode mode,
                         const AnalysisOptions& opts);

enum class CampaignStatus { complete = 0, counterexample = 1, incomplete = 2 };

struct CampaignTotals {
    uint64_t representatives = 0;
    uint64_t weighted_sets = 0;
    uint64_t connected = 0;   // weighted
    uint64_t normal = 0;      // weighted
    uint64_t normal_ci = 0;   // weighted
    uint64_t nnn = 0;         // weighted
    uint64_t predicate_fired = 0;
    uint64_t soundness_violations = 0;
    uint64_t lemma32_checked = 0;
    uint64_t lemma32_violations = 0;
    uint64_t budget_exceeded = 0;
    uint64_t loaded_from_cache = 0;
};

struct CampaignResult {
    std::string campaign;
    int n = 0;
    Mode mode = Mode::digraph;
    bool dedup = true;
    bool applicable = true; // verify-ndci outside its classification range
    CampaignTotals totals;
    std::vector<uint64_t> counterexample_masks;
    std::vector<json> counterexample_certificates;
    CampaignStatus status = CampaignStatus::complete;
    double wall_seconds = 0.0;

    json summary() const;
};

struct CampaignOptions {
    bool dedup = true;
    int jobs = 4;
    uint64_t node_cap = 10'000'000;
    std::string out_dir; // empty: no certificate files
    bool resume = false;
};

// Theorem campaigns.  Counterexample semantics per campaign:
//   verify-nci   : a normal Cayley graph that is not CI
//   scan-nnnd    : an NNN digraph at an n where the classification forbids it
//   verify-ndci  : a normal Cayley digraph that is not CI (n = 2 or n odd)
CampaignResult run_verify_nci(int n, const CampaignOptions& opts);
CampaignResult run_scan_nnnd(int n, const CampaignOptions& opts,
                             bool lemma41_set_only = false);
CampaignResult run_verify_ndci(int n, const CampaignOptions& opts);

// The construction verifier over a list of n.
struct NnnFamilyRun {
    int n;
    bool built;
    NnnVerification verification;
};
std::vector<NnnFamilyRun> run_nnn_family(const std::vector<int>& ns,
                                         uint64_t node_cap = 10'000'000);

// One certificate for one explicitly given connection set.
Certificate run_single(int n, const std::string& s_spec, Mode mode,
                       const AnalysisOptions& opts);

int default_worker_count();

} // namespace qci
