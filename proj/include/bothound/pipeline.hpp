#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bothound/config.hpp"
#include "bothound/dga.hpp"
#include "bothound/graph.hpp"
#include "bothound/record.hpp"
#include "bothound/som.hpp"

namespace bothound {

struct PipelineOptions {
    std::string records_path;
    std::string suffix_path;
    std::optional<std::string> model_path;
    std::optional<std::string> grid_path;
    std::optional<std::string> intel_path;
    std::optional<std::string> history_path;
    std::optional<std::string> config_path;
    std::optional<std::string> wordlist_path;  // needed with train_model
    bool train_model = false;  // train on generated corpora when no model file
    bool train_grid = false;   // fit scaler + train the map on this run's records
    std::optional<std::uint64_t> seed_override;  // replaces svm.seed and som.seed
};

struct PipelineResult {
    PipelineConfig config;
    std::size_t records_ok = 0;
    std::size_t parse_error_count = 0;
    std::size_t skipped_lines = 0;
    std::size_t feature_errors = 0;
    std::size_t self_loop_records = 0;
    std::vector<ParseError> parse_errors;

    LinearModel model;
    SomGrid grid;
    FeatureScaler scaler;
    KnowledgeGraph graph;
    std::vector<ComponentSummary> summaries;  // suspicious first, then by id

    std::string report_text;
    std::string machine_report;  // JSON
    std::string graph_export;    // structured line format
};

/// Full pass: ingest -> features -> DGA scoring -> scale -> SOM assignment
/// -> intel/flux enrichment -> knowledge graph -> component report.
/// Deterministic for fixed inputs and seeds. Per-record problems are
/// counted, not fatal; unreadable inputs throw InputError.
PipelineResult run_pipeline(const PipelineOptions& opts);

}  // namespace bothound
