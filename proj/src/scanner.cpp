#include "qci/scanner.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

namespace qci {

namespace fs = std::filesystem;

namespace {

std::string tri_str(Tri t) {
    switch (t) {
        case Tri::yes: return "yes";
        case Tri::no: return "no";
        default: return "not_applicable";
    }
}

Tri tri_parse(const std::string& s) {
    if (s == "yes") return Tri::yes;
    if (s == "no") return Tri::no;
    return Tri::not_applicable;
}

std::vector<int> perm_images(const Perm& p) {
    return std::vector<int>(p.images.begin(), p.images.end());
}

} // namespace

json certificate_to_json(const Certificate& c) {
    json j;
    j["schema_version"] = c.schema_version;
    j["n"] = c.n;
    j["mode"] = c.mode == Mode::graph ? "graph" : "digraph";
    j["connection_set"] = c.connection_set;
    j["mask"] = c.mask;
    j["verdicts"] = {
        {"connected", c.connected},
        {"normal", c.normal},
        {"ci", c.ci ? json(*c.ci) : json(nullptr)},
        {"nnn", c.nnn},
    };
    j["aut_order"] = c.aut_order;
    j["aut_gs_order"] = c.aut_gs_order;
    j["regular_subgroup_count"] =
        c.regular_subgroup_count ? json(*c.regular_subgroup_count) : json(nullptr);
    j["conjugacy_class_count"] =
        c.conjugacy_class_count ? json(*c.conjugacy_class_count) : json(nullptr);
    json witnesses;
    witnesses["non_normal_subgroup_generators"] =
        c.non_normal_subgroup_generators ? json(*c.non_normal_subgroup_generators)
                                         : json(nullptr);
    witnesses["normality_witness"] =
        c.normality_witness ? json(*c.normality_witness) : json(nullptr);
    j["witnesses"] = witnesses;
    j["predicate_flags"] = {
        {"lemma_cond1", tri_str(c.lemma_cond1)},
        {"lemma_cond2", tri_str(c.lemma_cond2)},
        {"lemma_cond3", tri_str(c.lemma_cond3)},
        {"mainpro_fired", c.mainpro_fired},
        {"soundness_ok", c.predicate_soundness_ok},
    };
    j["lemma32_holds"] = c.lemma32_holds ? json(*c.lemma32_holds) : json(nullptr);
    j["diagnostics"] = {
        {"search_nodes", c.search_nodes},
        {"elapsed_ms", c.elapsed_ms},
    };
    return j;
}

Certificate certificate_from_json(const json& j) {
    Certificate c;
    c.schema_version = j.at("schema_version").get<int>();
    c.n = j.at("n").get<int>();
    c.mode = j.at("mode").get<std::string>() == "graph" ? Mode::graph : Mode::digraph;
    c.connection_set = j.at("connection_set").get<std::vector<std::string>>();
    c.mask = j.at("mask").get<uint64_t>();
    const auto& v = j.at("verdicts");
    c.connected = v.at("connected").get<bool>();
    c.normal = v.at("normal").get<bool>();
    if (!v.at("ci").is_null()) c.ci = v.at("ci").get<bool>();
    c.nnn = v.at("nnn").get<bool>();
    c.aut_order = j.at("aut_order").get<std::string>();
    c.aut_gs_order = j.at("aut_gs_order").get<uint64_t>();
    if (!j.at("regular_subgroup_count").is_null())
        c.regular_subgroup_count = j.at("regular_subgroup_count").get<int>();
    if (!j.at("conjugacy_class_count").is_null())
        c.conjugacy_class_count = j.at("conjugacy_class_count").get<int>();
    const auto& w = j.at("witnesses");
    if (!w.at("non_normal_subgroup_generators").is_null())
        c.non_normal_subgroup_generators =
            w.at("non_normal_subgroup_generators").get<std::vector<std::vector<int>>>();
    if (!w.at("normality_witness").is_null())
        c.normality_witness = w.at("normality_witness").get<std::vector<int>>();
    const auto& f = j.at("predicate_flags");
    c.lemma_cond1 = tri_parse(f.at("lemma_cond1").get<std::string>());
    c.lemma_cond2 = tri_parse(f.at("lemma_cond2").get<std::string>());
    c.lemma_cond3 = tri_parse(f.at("lemma_cond3").get<std::string>());
    c.mainpro_fired = f.at("mainpro_fired").get<bool>();
    c.predicate_soundness_ok = f.at("soundness_ok").get<bool>();
    if (!j.at("lemma32_holds").is_null())
        c.lemma32_holds = j.at("lemma32_holds").get<bool>();
    const auto& d = j.at("diagnostics");
    c.search_nodes = d.at("search_nodes").get<uint64_t>();
    c.elapsed_ms = d.at("elapsed_ms").get<double>();
    return c;
}

Certificate analyze_mask(const QuaternionContext& ctx, uint64_t mask, Mode mode,
                         const AnalysisOptions& opts) {
    const auto t0 = std::chrono::steady_clock::now();
    const GroupParams& p = ctx.params;

    Certificate cert;
    cert.n = p.n();
    cert.mode = mode;
    cert.mask = mask;

    ConnectionSet s = ConnectionSet::from_mask(mask, p);
    if (mode == Mode::graph && !s.symmetric)
        throw SymmetryViolation("analyze: graph mode with asymmetric S");
    cert.connection_set = s.serialized(p);

    CayleyDigraph gamma = build_cayley(p, s);
    cert.connected = is_connected(gamma);

    AutSearchOptions search_opts;
    search_opts.node_cap = opts.node_cap;
    NormalityAnalysis na = analyze_normality(gamma, ctx, search_opts);
    cert.normal = na.verdict.is_normal;
    cert.aut_order = na.verdict.aut_order.str();
    cert.aut_gs_order = na.verdict.aut_gs_order;
    if (na.verdict.witness) cert.normality_witness = perm_images(*na.verdict.witness);
    cert.search_nodes = na.verdict.search_nodes;

    // Sufficient non-normality predicates, with the soundness cross-check:
    // a fired predicate on a normal digraph is an engine defect.
    NonNormalityConditions conds = lemma_nonnormality_conditions(ctx, mask, mode);
    cert.lemma_cond1 = conds.cond1;
    cert.lemma_cond2 = conds.cond2;
    cert.lemma_cond3 = conds.cond3;
    for (const auto& app : mainpro_driver(gamma, ctx))
        cert.mainpro_fired = cert.mainpro_fired || app.fired;
    if ((conds.any_fired() || cert.mainpro_fired) && cert.normal)
        cert.predicate_soundness_ok = false;

    bool run_ci = cert.normal;
    if (!cert.normal && opts.deep_ci_when_nonnormal &&
        na.verdict.aut_order.fits_u64() &&
        na.verdict.aut_order.as_u64() <= (1u << 14))
        run_ci = true;

    if (run_ci) {
        const PermGroup& full_aut = na.search.group;
        RegularSubgroupReport report = regular_subgroups(full_aut, ctx);
        cert.regular_subgroup_count = static_cast<int>(report.subgroups.size());
        cert.conjugacy_class_count = static_cast<int>(report.conjugacy_classes.size());
        cert.ci = is_ci_from_report(report, cert.normal);
        std::vector<int> non_normal_idx;
        cert.nnn = is_nnn_from_report(na, full_aut, report, &non_normal_idx);
        if (cert.nnn) {
            std::vector<std::vector<int>> gens;
            for (const auto& g : report.subgroups[non_normal_idx.front()].generators())
                gens.push_back(perm_images(g));
            cert.non_normal_subgroup_generators = std::move(gens);
        }
        if (cert.normal && mode == Mode::graph && opts.check_lemma32) {
            bool all_hold = true;
            for (const auto& h : report.subgroups) {
                SylowStructureResult r = sylow_structure_check(gamma, h, ctx);
                if (r.applicable && !r.holds) all_hold = false;
            }
            cert.lemma32_holds = all_hold;
        }
    }

    cert.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
    return cert;
}

int default_worker_count() {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 4;
    return static_cast<int>(hw > 8 ? 8 : hw);
}

namespace {

void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp);
        out << content;
    }
    fs::rename(tmp, path);
}

std::string mask_hex(uint64_t mask) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(mask));
    return buf;
}

struct CampaignSpec {
    std::string name;
    Mode mode;
    // Returns true when the certificate contradicts the expected theorem.
    bool (*is_counterexample)(const Certificate&, int n);
};

CampaignResult run_campaign(const CampaignSpec& spec, int n,
                            const CampaignOptions& opts, bool check_lemma32,
                            std::optional<uint64_t> only_mask = std::nullopt) {
    const auto t0 = std::chrono::steady_clock::now();

    QuaternionContext ctx(n);
    CampaignResult result;
    result.campaign = spec.name;
    result.n = n;
    result.mode = spec.mode;
    result.dedup = opts.dedup;

    // Materialize the representative list up front so workers can pull
    // indices from a shared atomic counter.
    std::vector<std::pair<uint64_t, uint64_t>> reps; // (mask, weight)
    if (only_mask) {
        reps.emplace_back(*only_mask, 1);
    } else {
        enumerate_connection_sets(ctx.params, spec.mode, opts.dedup,
                                  ctx.aut.elements(),
                                  [&](uint64_t mask, uint64_t weight) {
                                      reps.emplace_back(mask, weight);
                                  });
    }

    fs::path cert_dir;
    if (!opts.out_dir.empty()) {
        cert_dir = fs::path(opts.out_dir) /
                   (spec.name + "_n" + std::to_string(n)) / "certs";
        fs::create_directories(cert_dir);
    }

    AnalysisOptions aopts;
    aopts.node_cap = opts.node_cap;
    aopts.check_lemma32 = check_lemma32;

    std::atomic<size_t> next{0};
    std::mutex merge_mutex;
    CampaignTotals totals;
    std::vector<std::pair<uint64_t, json>> counterexamples;
    std::vector<uint64_t> failed_masks;

    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= reps.size()) return;
            auto [mask, weight] = reps[i];

            Certificate cert;
            bool from_cache = false;
            bool failed = false;
            fs::path cert_path;
            if (!cert_dir.empty()) cert_path = cert_dir / ("cert_" + mask_hex(mask) + ".json");

            if (opts.resume && !cert_path.empty() && fs::exists(cert_path)) {
                try {
                    std::ifstream in(cert_path);
                    json j;
                    in >> j;
                    cert = certificate_from_json(j);
                    from_cache = true;
                } catch (...) {
                    from_cache = false;
                }
            }
            if (!from_cache) {
                try {
                    cert = analyze_mask(ctx, mask, spec.mode, aopts);
                } catch (const BudgetExceeded&) {
                    failed = true;
                }
                if (!failed && !cert_path.empty())
                    write_atomic(cert_path, certificate_to_json(cert).dump(2));
            }

            std::lock_guard<std::mutex> lock(merge_mutex);
            totals.representatives++;
            totals.weighted_sets += weight;
            if (from_cache) totals.loaded_from_cache++;
            if (failed) {
                totals.budget_exceeded++;
                failed_masks.push_back(mask);
                continue;
            }
            if (cert.connected) totals.connected += weight;
            if (cert.normal) totals.normal += weight;
            if (cert.normal && cert.ci && *cert.ci) totals.normal_ci += weight;
            if (cert.nnn) totals.nnn += weight;
            if (cert.lemma_cond1 == Tri::yes || cert.lemma_cond2 == Tri::yes ||
                cert.lemma_cond3 == Tri::yes || cert.mainpro_fired)
                totals.predicate_fired++;
            if (!cert.predicate_soundness_ok) totals.soundness_violations++;
            if (cert.lemma32_holds) {
                totals.lemma32_checked++;
                if (!*cert.lemma32_holds) totals.lemma32_violations++;
            }
            if (spec.is_counterexample(cert, n))
                counterexamples.emplace_back(mask, certificate_to_json(cert));
        }
    };

    int jobs = opts.jobs > 0 ? opts.jobs : default_worker_count();
    if (jobs > 1) {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    } else {
        worker();
    }

    std::sort(counterexamples.begin(), counterexamples.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [mask, cert] : counterexamples) {
        result.counterexample_masks.push_back(mask);
        result.counterexample_certificates.push_back(std::move(cert));
    }
    std::sort(failed_masks.begin(), failed_masks.end());

    result.totals = totals;
    if (!result.counterexample_masks.empty())
        result.status = CampaignStatus::counterexample;
    else if (totals.budget_exceeded > 0 || totals.soundness_violations > 0)
        result.status = CampaignStatus::incomplete;
    else
        result.status = CampaignStatus::complete;
    result.wall_seconds = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - t0)
                              .count();

    if (!opts.out_dir.empty()) {
        fs::path summary_path = fs::path(opts.out_dir) /
                                (spec.name + "_n" + std::to_string(n)) /
                                "summary.json";
        write_atomic(summary_path, result.summary().dump(2));
    }
    return result;
}

bool nci_counterexample(const Certificate& c, int) {
    return c.normal && c.ci && !*c.ci;
}

bool nnnd_counterexample(const Certificate& c, int n) {
    // The classification admits NNN digraphs exactly for even n >= 6.
    bool allowed = n >= 6 && n % 2 == 0;
    return c.nnn && !allowed;
}

bool ndci_counterexample(const Certificate& c, int) {
    return c.normal && c.ci && !*c.ci;
}

} // namespace

json CampaignResult::summary() const {
    json j;
    j["campaign"] = campaign;
    j["n"] = n;
    j["mode"] = mode == Mode::graph ? "graph" : "digraph";
    j["dedup"] = dedup;
    j["applicable"] = applicable;
    j["totals"] = {
        {"representatives", totals.representatives},
        {"weighted_sets", totals.weighted_sets},
        {"connected", totals.connected},
        {"normal", totals.normal},
        {"normal_ci", totals.normal_ci},
        {"nnn", totals.nnn},
        {"predicate_fired", totals.predicate_fired},
        {"soundness_violations", totals.soundness_violations},
        {"lemma32_checked", totals.lemma32_checked},
        {"lemma32_violations", totals.lemma32_violations},
        {"budget_exceeded", totals.budget_exceeded},
        {"loaded_from_cache", totals.loaded_from_cache},
    };
    j["counterexample_masks"] = counterexample_masks;
    j["counterexample_certificates"] = counterexample_certificates;
    j["status"] = status == CampaignStatus::complete        ? "complete"
                  : status == CampaignStatus::counterexample ? "counterexample"
                                                              : "incomplete";
    j["wall_seconds"] = wall_seconds;
    return j;
}

CampaignResult run_verify_nci(int n, const CampaignOptions& opts) {
    CampaignSpec spec{"verify-nci", Mode::graph, nci_counterexample};
    return run_campaign(spec, n, opts, /*check_lemma32=*/true);
}

CampaignResult run_scan_nnnd(int n, const CampaignOptions& opts,
                             bool lemma41_set_only) {
    CampaignSpec spec{"scan-nnnd", Mode::digraph, nnnd_counterexample};
    std::optional<uint64_t> only;
    if (lemma41_set_only) {
        if (n < 6 || n % 2 != 0)
            throw InvalidN("scan-nnnd --lemma41-only: n must be even and >= 6");
        QuaternionContext ctx(n);
        NnnFamilyInstance inst = build_nnn_instance(n, ctx);
        only = inst.s.mask(ctx.params);
    }
    return run_campaign(spec, n, opts, /*check_lemma32=*/false, only);
}

CampaignResult run_verify_ndci(int n, const CampaignOptions& opts) {
    CampaignSpec spec{"verify-ndci", Mode::digraph, ndci_counterexample};
    // The digraph classification covers exactly n = 2 and odd n; outside
    // that range normal non-CI digraphs may legitimately exist.
    if (!(n == 2 || n % 2 == 1)) {
        CampaignResult r;
        r.campaign = spec.name;
        r.n = n;
        r.mode = spec.mode;
        r.dedup = opts.dedup;
        r.applicable = false;
        r.status = CampaignStatus::complete;
        return r;
    }
    return run_campaign(spec, n, opts, /*check_lemma32=*/false);
}

std::vector<NnnFamilyRun> run_nnn_family(const std::vector<int>& ns,
                                         uint64_t node_cap) {
    std::vector<NnnFamilyRun> out;
    for (int n : ns) {
        QuaternionContext ctx(n);
        NnnFamilyInstance inst = build_nnn_instance(n, ctx);
        AutSearchOptions opts;
        opts.node_cap = node_cap;
        out.push_back({n, true, verify_nnn_instance(inst, ctx, opts)});
    }
    return out;
}

Certificate run_single(int n, const std::string& s_spec, Mode mode,
                       const AnalysisOptions& opts) {
    QuaternionContext ctx(n);
    ConnectionSet s = ConnectionSet::parse(s_spec, ctx.params);
    for (const auto& e : s.members)
        if (e == ctx.params.identity())
            throw IdentityInS("single: identity in connection set");
    if (mode == Mode::graph && !s.symmetric)
        throw SymmetryViolation("single: graph mode requires S = S^-1");
    return analyze_mask(ctx, s.mask(ctx.params), mode, opts);
}

} // namespace qci
