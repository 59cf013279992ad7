#include "bothound/pipeline.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "bothound/dns_history.hpp"
#include "bothound/errors.hpp"
#include "bothound/intel.hpp"
#include "json.hpp"

namespace bothound {

namespace {

using nlohmann::json;

struct ProcessedRecord {
    std::size_t record_index = 0;
    std::optional<std::string> domain_key;
    std::optional<double> dga_score;
    FeatureVector vector;
};

std::string normalize_domain_key(const std::string& domain) {
    std::string key;
    key.reserve(domain.size());
    for (char c : domain) key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (!key.empty() && key.back() == '.') key.pop_back();
    return key;
}

std::string cluster_key(GridPos unit) {
    return "som:" + std::to_string(unit.row) + "," + std::to_string(unit.col);
}

Reputation to_reputation(IpVerdict v) {
    switch (v) {
        case IpVerdict::kUnknown: return Reputation::kUnknown;
        case IpVerdict::kClean: return Reputation::kClean;
        case IpVerdict::kSuspicious: return Reputation::kSuspicious;
        case IpVerdict::kMalicious: return Reputation::kMalicious;
    }
    return Reputation::kUnknown;
}

LinearModel obtain_model(const PipelineOptions& opts, const PipelineConfig& cfg,
                         const PublicSuffixList& suffixes) {
    if (opts.model_path) return load_model(*opts.model_path);
    if (!opts.train_model)
        throw InputError("no DGA model: pass a model file or request training");
    if (!opts.wordlist_path)
        throw InputError("training a DGA model needs a word list");

    const auto words = load_word_list(*opts.wordlist_path);
    const auto benign = generate_benign_domains(words, cfg.generated_benign, cfg.svm.seed);
    const auto dga = generate_dga_domains(cfg.generated_dga, cfg.svm.seed + 1);

    std::vector<DomainFeatures> samples;
    std::vector<int> labels;
    samples.reserve(benign.size() + dga.size());
    for (const auto& d : benign) {
        samples.push_back(extract_domain_features(d, suffixes));
        labels.push_back(-1);
    }
    for (const auto& d : dga) {
        samples.push_back(extract_domain_features(d, suffixes));
        labels.push_back(1);
    }
    return train_linear_svm(samples, labels, cfg.svm);
}

std::string render_text_report(const PipelineResult& r,
                               const std::vector<std::vector<NodeId>>& components) {
    std::ostringstream out;
    out << "bothound pipeline report\n";
    out << "records: " << r.records_ok << " ok, " << r.parse_error_count << " parse errors, "
        << r.skipped_lines << " skipped, " << r.feature_errors << " feature errors\n";
    std::size_t suspicious = 0;
    for (const auto& s : r.summaries) {
        if (s.suspicious) ++suspicious;
    }
    out << "components: " << r.summaries.size() << " total, " << suspicious
        << " suspicious\n";

    for (const auto& s : r.summaries) {
        out << '\n';
        out << (s.suspicious ? "[suspicious]" : "[ok]") << " component " << s.component_id
            << ": nodes=" << s.total_nodes() << " (ip="
            << s.node_counts[static_cast<std::size_t>(NodeKind::kIp)] << " domain="
            << s.node_counts[static_cast<std::size_t>(NodeKind::kDomain)] << " cluster="
            << s.node_counts[static_cast<std::size_t>(NodeKind::kCluster)] << " artifact="
            << s.node_counts[static_cast<std::size_t>(NodeKind::kArtifact)] << ")"
            << " dgaDomains=" << s.dga_domain_count << " sinkholeHits=" << s.sinkhole_hits
            << " fluxDomains=" << s.flux_domains << '\n';
        const auto& members = components[s.component_id];
        const std::size_t shown = std::min<std::size_t>(members.size(), 16);
        out << "  members:";
        for (std::size_t i = 0; i < shown; ++i) {
            out << ' ' << to_string(members[i].kind) << ':' << members[i].key;
        }
        if (shown < members.size()) out << " (+" << members.size() - shown << " more)";
        out << '\n';
    }
    return out.str();
}

std::string render_machine_report(const PipelineResult& r,
                                  const std::vector<std::vector<NodeId>>& components) {
    json doc;
    doc["records"] = {{"ok", r.records_ok},
                      {"parse_errors", r.parse_error_count},
                      {"skipped", r.skipped_lines},
                      {"feature_errors", r.feature_errors},
                      {"self_loop_records", r.self_loop_records}};
    json errors = json::array();
    for (const auto& e : r.parse_errors) {
        errors.push_back({{"line", e.line_no}, {"reason", e.reason}});
    }
    doc["parse_errors"] = std::move(errors);

    std::size_t suspicious = 0;
    json comps = json::array();
    for (const auto& s : r.summaries) {
        if (s.suspicious) ++suspicious;
        json members = json::array();
        for (const auto& id : components[s.component_id]) {
            members.push_back(to_string(id.kind) + ":" + id.key);
        }
        comps.push_back(
            {{"id", s.component_id},
             {"suspicious", s.suspicious},
             {"nodes",
              {{"ip", s.node_counts[static_cast<std::size_t>(NodeKind::kIp)]},
               {"domain", s.node_counts[static_cast<std::size_t>(NodeKind::kDomain)]},
               {"cluster", s.node_counts[static_cast<std::size_t>(NodeKind::kCluster)]},
               {"artifact", s.node_counts[static_cast<std::size_t>(NodeKind::kArtifact)]}}},
             {"dga_domains", s.dga_domain_count},
             {"sinkhole_hits", s.sinkhole_hits},
             {"flux_domains", s.flux_domains},
             {"members", std::move(members)}});
    }
    doc["components"] = std::move(comps);
    doc["summary"] = {{"components", r.summaries.size()}, {"suspicious", suspicious}};
    return doc.dump(2) + "\n";
}

}  // namespace

PipelineResult run_pipeline(const PipelineOptions& opts) {
    PipelineResult result;

    PipelineConfig cfg = opts.config_path ? PipelineConfig::from_file(*opts.config_path)
                                          : PipelineConfig{};
    if (opts.seed_override) {
        cfg.svm.seed = *opts.seed_override;
        cfg.som.seed = *opts.seed_override;
    }
    result.config = cfg;

    RecordFile records = read_record_file(opts.records_path);
    result.parse_error_count = records.errors.size();
    result.parse_errors = records.errors;
    result.skipped_lines = records.skipped;

    const PublicSuffixList suffixes = PublicSuffixList::load(opts.suffix_path);
    result.model = obtain_model(opts, cfg, suffixes);

    // Per-record features and DGA scores. Records whose domain cannot be
    // analyzed (empty effective name) are counted and dropped. Domains
    // that are IP literals are treated as having no domain at all.
    std::vector<ProcessedRecord> processed;
    processed.reserve(records.records.size());
    for (std::size_t i = 0; i < records.records.size(); ++i) {
        const TrafficRecord& r = records.records[i];
        ProcessedRecord p;
        p.record_index = i;

        DomainFeatures domain_features{};
        if (r.domain && !is_valid_ip(*r.domain)) {
            try {
                domain_features = extract_domain_features(*r.domain, suffixes);
            } catch (const InputError&) {
                ++result.feature_errors;
                continue;
            }
            p.domain_key = normalize_domain_key(*r.domain);
            p.dga_score = predict(result.model, domain_features).score;
        }
        p.vector = assemble_clustering_vector(domain_features, extract_uri_features(r.uri),
                                              extract_meta_features(r));
        processed.push_back(std::move(p));
    }
    result.records_ok = processed.size();

    // Scale and cluster. An empty record set short-circuits to an empty
    // graph; there is nothing to train or assign.
    std::vector<FeatureVector> vectors;
    vectors.reserve(processed.size());
    for (const auto& p : processed) vectors.push_back(p.vector);

    std::vector<ClusterAssignment> assignments;
    if (!processed.empty()) {
        if (opts.grid_path) {
            SavedGrid saved = load_grid(*opts.grid_path);
            result.grid = std::move(saved.grid);
            result.scaler = saved.scaler ? *saved.scaler : fit_scaler(vectors);
        } else if (opts.train_grid) {
            result.scaler = fit_scaler(vectors);
            std::vector<FeatureVector> scaled;
            scaled.reserve(vectors.size());
            for (const auto& v : vectors) scaled.push_back(apply_scaler(result.scaler, v));
            result.grid = train_som(init_grid(cfg.som, kFeatureCount), scaled);
        } else {
            throw InputError("no SOM grid: pass a grid file or request training");
        }

        std::vector<FeatureVector> scaled;
        scaled.reserve(vectors.size());
        for (const auto& v : vectors) scaled.push_back(apply_scaler(result.scaler, v));
        assignments = assign_clusters(result.grid, scaled);
    }

    const IntelStore intel =
        opts.intel_path ? load_intel_store(*opts.intel_path) : IntelStore{};
    const DnsHistoryStore history =
        opts.history_path ? DnsHistoryStore::load(*opts.history_path) : DnsHistoryStore{};

    // Graph assembly. NXDomain records contribute domain nodes and
    // nxdomainCount but never IP nodes or edges.
    KnowledgeGraph& graph = result.graph;
    std::map<std::string, std::int64_t> nx_counts;
    for (std::size_t i = 0; i < processed.size(); ++i) {
        const ProcessedRecord& p = processed[i];
        const TrafficRecord& r = records.records[p.record_index];

        std::optional<NodeId> domain_id;
        if (p.domain_key) {
            domain_id = NodeId{NodeKind::kDomain, *p.domain_key};
            NodeAnnotations a;
            a.dga_score = p.dga_score;
            graph.upsert_node(*domain_id, a);
            if (r.nxdomain) ++nx_counts[*p.domain_key];
        }

        std::optional<NodeId> dst_id;
        if (r.dst_ip) {
            dst_id = NodeId{NodeKind::kIp, *r.dst_ip};
            graph.upsert_node(*dst_id);
            if (r.src_ip == *r.dst_ip) {
                ++result.self_loop_records;
            } else {
                const NodeId src_id{NodeKind::kIp, r.src_ip};
                graph.upsert_node(src_id);
                graph.upsert_edge(src_id, dst_id.value(), Relation::kContacted);
            }
            if (domain_id) graph.upsert_edge(*domain_id, *dst_id, Relation::kResolvedTo);
        }

        const NodeId unit_id{NodeKind::kCluster, cluster_key(assignments[i].unit)};
        graph.upsert_node(unit_id);
        const NodeId member = domain_id ? *domain_id : dst_id.value();
        graph.upsert_edge(member, unit_id, Relation::kMemberOfCluster);
    }

    for (const auto& [key, count] : nx_counts) {
        NodeAnnotations a;
        a.nxdomain_count = count;
        graph.upsert_node(NodeId{NodeKind::kDomain, key}, a);
    }

    // Enrichment passes, in sorted node order.
    for (const Node& node : graph.nodes()) {
        if (node.id.kind == NodeKind::kIp) {
            const IpLookup hit = lookup_ip(intel, node.id.key);
            NodeAnnotations a;
            a.reputation = to_reputation(hit.verdict);
            a.sinkholed = hit.sinkholed;
            graph.upsert_node(node.id, a);
        } else if (node.id.kind == NodeKind::kDomain) {
            NodeAnnotations a;
            a.sinkholed = is_sinkholed(intel, node.id.key);
            if (history.has_domain(node.id.key)) {
                const std::int64_t end = history.latest_timestamp(node.id.key);
                const ChurnStats stats =
                    history.churn_stats(node.id.key, end - cfg.flux.window_seconds, end);
                a.flux_flagged = flux_verdict(node.id.key, stats, cfg.flux).flagged;
            }
            graph.upsert_node(node.id, a);
        }
    }

    for (const auto& [hash, targets] : intel.sample_indicators) {
        std::vector<NodeId> present;
        for (const auto& target : targets) {
            const auto id = graph.find_key(target);
            if (id && (id->kind == NodeKind::kIp || id->kind == NodeKind::kDomain))
                present.push_back(*id);
        }
        if (present.empty()) continue;
        const NodeId artifact{NodeKind::kArtifact, hash};
        try {
            graph.upsert_node(artifact);
            for (const auto& target : present)
                graph.upsert_edge(target, artifact, Relation::kDroppedBy);
        } catch (const std::invalid_argument& e) {
            throw InputError(std::string("intel artifact entry ") + hash + ": " + e.what());
        }
    }

    // Component summaries, suspicious first.
    const auto components = graph.connected_components();
    result.summaries = graph.component_summaries(cfg.rule);
    std::stable_sort(result.summaries.begin(), result.summaries.end(),
                     [](const ComponentSummary& a, const ComponentSummary& b) {
                         if (a.suspicious != b.suspicious) return a.suspicious;
                         return a.component_id < b.component_id;
                     });

    result.report_text = render_text_report(result, components);
    result.machine_report = render_machine_report(result, components);
    result.graph_export = export_structured(graph);
    return result;
}

}  // namespace bothound
