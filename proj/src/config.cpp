#include "bothound/config.hpp"

#include <charconv>
#include <fstream>

#include "bothound/errors.hpp"

namespace bothound {

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    std::size_t end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

std::int64_t to_int(const std::string& key, const std::string& value) {
    std::int64_t out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size())
        throw InputError("config key " + key + " expects an integer, got '" + value + "'");
    return out;
}

double to_real(const std::string& key, const std::string& value) {
    double out = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size())
        throw InputError("config key " + key + " expects a number, got '" + value + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw InputError("config key " + key + " expects true/false, got '" + value + "'");
}

}  // namespace

std::map<std::string, std::string> read_key_value_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path);

    std::map<std::string, std::string> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const std::size_t eq = stripped.find('=');
        if (eq == std::string::npos)
            throw InputError("config line " + std::to_string(line_no) +
                             " is not 'key = value': " + line);
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty() || value.empty())
            throw InputError("config line " + std::to_string(line_no) +
                             " has an empty key or value");
        out[key] = value;
    }
    return out;
}

PipelineConfig PipelineConfig::from_values(const std::map<std::string, std::string>& values) {
    PipelineConfig cfg;
    for (const auto& [key, value] : values) {
        if (key == "svm.lambda") cfg.svm.regularization = to_real(key, value);
        else if (key == "svm.epochs") cfg.svm.epochs = static_cast<int>(to_int(key, value));
        else if (key == "svm.learning_rate") cfg.svm.learning_rate = to_real(key, value);
        else if (key == "svm.seed") cfg.svm.seed = static_cast<std::uint64_t>(to_int(key, value));
        else if (key == "som.rows") cfg.som.rows = static_cast<int>(to_int(key, value));
        else if (key == "som.cols") cfg.som.cols = static_cast<int>(to_int(key, value));
        else if (key == "som.epochs") cfg.som.epochs = static_cast<int>(to_int(key, value));
        else if (key == "som.learning_rate") cfg.som.initial_learning_rate = to_real(key, value);
        else if (key == "som.radius") cfg.som.initial_radius = to_real(key, value);
        else if (key == "som.seed") cfg.som.seed = static_cast<std::uint64_t>(to_int(key, value));
        else if (key == "flux.ttl_max") cfg.flux.ttl_max = to_int(key, value);
        else if (key == "flux.min_distinct") cfg.flux.min_distinct = to_int(key, value);
        else if (key == "flux.min_ns_changes") cfg.flux.min_ns_changes = to_int(key, value);
        else if (key == "flux.window") cfg.flux.window_seconds = to_int(key, value);
        else if (key == "rule.min_sinkhole_hits") cfg.rule.min_sinkhole_hits = to_int(key, value);
        else if (key == "rule.min_dga_domains") cfg.rule.min_dga_domains = to_int(key, value);
        else if (key == "rule.dga_needs_ip") cfg.rule.dga_needs_ip = to_bool(key, value);
        else if (key == "rule.min_flux_domains") cfg.rule.min_flux_domains = to_int(key, value);
        else if (key == "rule.min_flux_dga_domains")
            cfg.rule.min_flux_dga_domains = to_int(key, value);
        else if (key == "gen.benign_count")
            cfg.generated_benign = static_cast<std::size_t>(to_int(key, value));
        else if (key == "gen.dga_count")
            cfg.generated_dga = static_cast<std::size_t>(to_int(key, value));
        else throw InputError("unknown config key: " + key);
    }
    return cfg;
}

PipelineConfig PipelineConfig::from_file(const std::string& path) {
    return from_values(read_key_value_file(path));
}

}  // namespace bothound
