#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "bothound/dga.hpp"
#include "bothound/dns_history.hpp"
#include "bothound/graph.hpp"
#include "bothound/som.hpp"

namespace bothound {

/// Tunables for the full pipeline, read from a "key = value" file.
/// Unknown keys are rejected so typos fail loudly.
struct PipelineConfig {
    TrainConfig svm;
    SomConfig som;
    FluxThresholds flux;
    SuspicionRule rule;
    std::size_t generated_benign = 2000;  // corpus sizes when training without files
    std::size_t generated_dga = 2000;

    static PipelineConfig from_file(const std::string& path);
    static PipelineConfig from_values(const std::map<std::string, std::string>& values);
};

/// "key = value" lines; blanks and "#" comments skipped.
std::map<std::string, std::string> read_key_value_file(const std::string& path);

}  // namespace bothound
