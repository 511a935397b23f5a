#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "qci/scanner.hpp"

using namespace qci;
namespace fs = std::filesystem;

TEST_CASE("single certificates") {
    AnalysisOptions opts;

    // The construction set at n = 6 is an NNN digraph.
    Certificate nnn = run_single(6, "a,a^5,b,a^3*b,a^6*b,a^9*b", Mode::digraph, opts);
    CHECK(nnn.connected);
    CHECK(nnn.normal);
    CHECK(nnn.nnn);

    // S = {a} at n = 2 is disconnected.
    Certificate disc = run_single(2, "a", Mode::digraph, opts);
    CHECK_FALSE(disc.connected);
    CHECK_FALSE(disc.nnn);

    // Graph mode rejects asymmetric sets; identity is rejected outright.
    CHECK_THROWS_AS(run_single(2, "a", Mode::graph, opts), SymmetryViolation);
    CHECK_THROWS_AS(run_single(2, "a^0", Mode::digraph, opts), IdentityInS);
    CHECK_THROWS_AS(run_single(2, "x", Mode::digraph, opts), ParseError);
}

TEST_CASE("certificate json round trip") {
    AnalysisOptions opts;
    Certificate cert = run_single(6, "a,a^5,b,a^3*b,a^6*b,a^9*b", Mode::digraph, opts);
    json j = certificate_to_json(cert);

    // Schema keys present.
    for (const char* key :
         {"schema_version", "n", "mode", "connection_set", "verdicts",
          "aut_order", "aut_gs_order", "regular_subgroup_count",
          "conjugacy_class_count", "witnesses", "predicate_flags",
          "diagnostics"})
        CHECK(j.contains(key));

    Certificate back = certificate_from_json(j);
    CHECK(back.n == cert.n);
    CHECK(back.mask == cert.mask);
    CHECK(back.normal == cert.normal);
    CHECK(back.nnn == cert.nnn);
    CHECK(back.ci == cert.ci);
    CHECK(back.aut_order == cert.aut_order);
    CHECK(back.connection_set == cert.connection_set);

    // Verdict invariants.
    CHECK((!cert.nnn || cert.normal));
    if (cert.normal && cert.ci && *cert.ci)
        CHECK(*cert.regular_subgroup_count == 1);
}

TEST_CASE("replay determinism") {
    AnalysisOptions opts;
    Certificate a = run_single(3, "a,b", Mode::digraph, opts);
    Certificate b = run_single(3, "a,b", Mode::digraph, opts);
    json ja = certificate_to_json(a), jb = certificate_to_json(b);
    ja["diagnostics"].erase("elapsed_ms");
    jb["diagnostics"].erase("elapsed_ms");
    CHECK(ja == jb);
}

TEST_CASE("verify-nci campaign at n = 2") {
    CampaignOptions opts;
    opts.dedup = false;
    opts.jobs = 2;
    CampaignResult r = run_verify_nci(2, opts);
    CHECK(r.status == CampaignStatus::complete);
    CHECK(r.totals.weighted_sets == 16);
    CHECK(r.counterexample_masks.empty());
    CHECK(r.totals.soundness_violations == 0);
}

TEST_CASE("verify-ndci campaign at n = 2 and inapplicable n = 4") {
    CampaignOptions opts;
    opts.dedup = false;
    opts.jobs = 2;
    CampaignResult r = run_verify_ndci(2, opts);
    CHECK(r.applicable);
    CHECK(r.status == CampaignStatus::complete);
    CHECK(r.totals.weighted_sets == 128);
    CHECK(r.counterexample_masks.empty());

    CampaignResult na = run_verify_ndci(4, opts);
    CHECK_FALSE(na.applicable);
    CHECK(na.status == CampaignStatus::complete);
}

TEST_CASE("dedup totals match the full scan") {
    // Weighted dedup totals must equal the plain totals at n = 2, in both
    // modes and for every aggregate verdict counter.
    for (bool graph : {false, true}) {
        CampaignOptions full_opts, dedup_opts;
        full_opts.dedup = false;
        full_opts.jobs = 2;
        dedup_opts.dedup = true;
        dedup_opts.jobs = 2;
        CampaignResult full, dedup;
        if (graph) {
            full = run_verify_nci(2, full_opts);
            dedup = run_verify_nci(2, dedup_opts);
        } else {
            full = run_verify_ndci(2, full_opts);
            dedup = run_verify_ndci(2, dedup_opts);
        }
        CHECK(full.totals.weighted_sets == dedup.totals.weighted_sets);
        CHECK(full.totals.connected == dedup.totals.connected);
        CHECK(full.totals.normal == dedup.totals.normal);
        CHECK(full.totals.normal_ci == dedup.totals.normal_ci);
        CHECK(full.totals.nnn == dedup.totals.nnn);
        CHECK(dedup.totals.representatives < full.totals.representatives);
    }
}

TEST_CASE("scan-nnnd targeted mode") {
    CampaignOptions opts;
    opts.jobs = 1;
    CampaignResult r = run_scan_nnnd(6, opts, /*lemma41_set_only=*/true);
    CHECK(r.status == CampaignStatus::complete); // NNN allowed at n = 6
    CHECK(r.totals.nnn == 1);
    CHECK(r.totals.representatives == 1);
}

TEST_CASE("campaign files and resume") {
    fs::path dir = fs::temp_directory_path() / "qci_test_campaign";
    fs::remove_all(dir);

    CampaignOptions opts;
    opts.dedup = true;
    opts.jobs = 2;
    opts.out_dir = dir.string();
    CampaignResult first = run_verify_nci(2, opts);
    CHECK(fs::exists(dir / "verify-nci_n2" / "summary.json"));
    CHECK(first.totals.loaded_from_cache == 0);

    size_t cert_files = 0;
    for (auto& entry : fs::directory_iterator(dir / "verify-nci_n2" / "certs"))
        if (entry.path().extension() == ".json") cert_files++;
    CHECK(cert_files == first.totals.representatives);

    // Resume reuses every certificate and reproduces the totals.
    opts.resume = true;
    CampaignResult second = run_verify_nci(2, opts);
    CHECK(second.totals.loaded_from_cache == second.totals.representatives);
    CHECK(second.totals.weighted_sets == first.totals.weighted_sets);
    CHECK(second.totals.normal == first.totals.normal);
    CHECK(second.totals.normal_ci == first.totals.normal_ci);

    fs::remove_all(dir);
}

TEST_CASE("lemma41 runner") {
    auto runs = run_nnn_family({6});
    REQUIRE(runs.size() == 1);
    CHECK(runs[0].verification.all_pass);
    CHECK_THROWS_AS(run_nnn_family({5}), InvalidN);
}
