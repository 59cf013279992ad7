#include "bothound/dga.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "bothound/errors.hpp"
#include "bothound/rng.hpp"
#include "json.hpp"

namespace bothound {

namespace {

using nlohmann::json;

double hinge_objective(const std::vector<std::vector<double>>& samples,
                       const std::vector<int>& labels, const std::vector<double>& w, double b,
                       double lambda) {
    double sq = 0.0;
    for (double wi : w) sq += wi * wi;
    double loss = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double score = b;
        for (std::size_t d = 0; d < w.size(); ++d) score += w[d] * samples[i][d];
        loss += std::max(0.0, 1.0 - labels[i] * score);
    }
    return 0.5 * lambda * sq + loss / static_cast<double>(samples.size());
}

bool all_finite(const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

LinearModel train_linear(const std::vector<std::vector<double>>& samples,
                         const std::vector<int>& labels, const TrainConfig& cfg,
                         std::vector<double>* objective_trace) {
    if (samples.size() != labels.size())
        throw std::invalid_argument("train_linear: samples/labels length mismatch");
    if (samples.empty()) throw std::invalid_argument("train_linear: empty training set");
    if (cfg.regularization <= 0 || cfg.epochs <= 0 || cfg.learning_rate <= 0)
        throw std::invalid_argument("train_linear: config values must be positive");

    const std::size_t n = samples.size();
    const std::size_t d = samples.front().size();
    std::int64_t positives = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (samples[i].size() != d)
            throw std::invalid_argument("train_linear: inconsistent sample dimensions");
        if (labels[i] != 1 && labels[i] != -1)
            throw std::invalid_argument("train_linear: labels must be +1 or -1");
        if (labels[i] == 1) ++positives;
    }
    if (positives == 0 || positives == static_cast<std::int64_t>(n))
        throw std::invalid_argument("degenerate training set: single-class input");

    std::vector<double> w(d, 0.0);
    double b = 0.0;
    double eta = cfg.learning_rate;
    const double lambda = cfg.regularization;

    Rng rng(cfg.seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);

    double best_objective = hinge_objective(samples, labels, w, b, lambda);
    if (objective_trace) objective_trace->push_back(best_objective);

    std::vector<double> w_checkpoint = w;
    double b_checkpoint = b;

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        deterministic_shuffle(order, rng);
        for (std::size_t idx : order) {
            const std::vector<double>& x = samples[idx];
            const int y = labels[idx];
            double score = b;
            for (std::size_t k = 0; k < d; ++k) score += w[k] * x[k];
            const double shrink = 1.0 - eta * lambda;
            if (y * score < 1.0) {
                for (std::size_t k = 0; k < d; ++k) w[k] = w[k] * shrink + eta * y * x[k];
                b += eta * y;
            } else {
                for (std::size_t k = 0; k < d; ++k) w[k] *= shrink;
            }
        }
        const double objective = hinge_objective(samples, labels, w, b, lambda);
        if (objective > best_objective) {
            // Step overshot: restore the last checkpoint and calm down.
            w = w_checkpoint;
            b = b_checkpoint;
            eta *= 0.5;
        } else {
            best_objective = objective;
            w_checkpoint = w;
            b_checkpoint = b;
        }
        if (objective_trace) objective_trace->push_back(best_objective);
    }

    LinearModel model;
    model.weights = std::move(w_checkpoint);
    model.bias = b_checkpoint;
    model.trained_positive = positives;
    model.trained_negative = static_cast<std::int64_t>(n) - positives;
    return model;
}

LinearModel train_linear_svm(const std::vector<DomainFeatures>& samples,
                             const std::vector<int>& labels, const TrainConfig& cfg,
                             std::vector<double>* objective_trace) {
    std::vector<std::vector<double>> rows;
    rows.reserve(samples.size());
    for (const auto& s : samples) {
        const auto values = domain_feature_values(s);
        rows.emplace_back(values.begin(), values.end());
    }
    return train_linear(rows, labels, cfg, objective_trace);
}

double decision_score(const LinearModel& m, const std::vector<double>& x) {
    if (x.size() != m.weights.size())
        throw std::invalid_argument("decision_score: feature/model schema mismatch");
    double score = m.bias;
    for (std::size_t i = 0; i < x.size(); ++i) score += m.weights[i] * x[i];
    return score;
}

Prediction predict(const LinearModel& m, const DomainFeatures& f) {
    const auto values = domain_feature_values(f);
    const double score = decision_score(m, std::vector<double>(values.begin(), values.end()));
    return Prediction{score > 0.0 ? DomainLabel::kDga : DomainLabel::kBenign, score};
}

EvalReport evaluate(const LinearModel& m, const std::vector<DomainFeatures>& samples,
                    const std::vector<int>& labels) {
    if (samples.size() != labels.size())
        throw std::invalid_argument("evaluate: samples/labels length mismatch");
    if (samples.empty()) throw std::invalid_argument("evaluate: empty evaluation set");

    EvalReport r;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const bool predicted_dga = predict(m, samples[i]).label == DomainLabel::kDga;
        const bool actual_dga = labels[i] == 1;
        if (predicted_dga && actual_dga) ++r.true_pos;
        else if (predicted_dga && !actual_dga) ++r.false_pos;
        else if (!predicted_dga && actual_dga) ++r.false_neg;
        else ++r.true_neg;
    }
    const double total = static_cast<double>(samples.size());
    r.accuracy = static_cast<double>(r.true_pos + r.true_neg) / total;
    if (r.true_pos + r.false_pos > 0)
        r.precision = static_cast<double>(r.true_pos) / static_cast<double>(r.true_pos + r.false_pos);
    if (r.true_pos + r.false_neg > 0)
        r.recall = static_cast<double>(r.true_pos) / static_cast<double>(r.true_pos + r.false_neg);
    if (r.precision && r.recall && *r.precision + *r.recall > 0)
        r.f1 = 2.0 * *r.precision * *r.recall / (*r.precision + *r.recall);
    return r;
}

void save_model(const LinearModel& m, const std::string& path) {
    if (m.weights.size() != kDomainFeatureCount)
        throw std::invalid_argument("save_model: weight count does not match feature schema");
    json obj;
    obj["schema_version"] = m.schema_version;
    obj["weights"] = m.weights;
    obj["bias"] = m.bias;
    obj["trained_positive"] = m.trained_positive;
    obj["trained_negative"] = m.trained_negative;

    std::ofstream out(path);
    if (!out) throw InputError("cannot write model file: " + path);
    out << obj.dump(2) << "\n";
}

LinearModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open model file: " + path);
    json obj;
    try {
        in >> obj;
    } catch (const json::parse_error& e) {
        throw InputError(std::string("corrupt model: ") + e.what());
    }

    LinearModel m;
    try {
        m.schema_version = obj.at("schema_version").get<int>();
        if (m.schema_version != kModelSchemaVersion)
            throw InputError("unsupported model schema version " +
                             std::to_string(m.schema_version));
        m.weights = obj.at("weights").get<std::vector<double>>();
        m.bias = obj.at("bias").get<double>();
        m.trained_positive = obj.at("trained_positive").get<std::int64_t>();
        m.trained_negative = obj.at("trained_negative").get<std::int64_t>();
    } catch (const json::exception& e) {
        throw InputError(std::string("corrupt model: ") + e.what());
    }
    if (m.weights.size() != kDomainFeatureCount)
        throw InputError("corrupt model: expected " + std::to_string(kDomainFeatureCount) +
                         " weights, found " + std::to_string(m.weights.size()));
    if (!all_finite(m.weights) || !std::isfinite(m.bias))
        throw InputError("corrupt model: non-finite parameters");
    return m;
}

std::vector<std::string> load_word_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open word list: " + path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::transform(line.begin(), line.end(), line.begin(),
                       [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
        words.push_back(line);
    }
    if (words.empty()) throw InputError("word list is empty: " + path);
    return words;
}

std::vector<std::string> load_domain_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open domain list: " + path);
    std::vector<std::string> domains;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        domains.push_back(line);
    }
    return domains;
}

std::vector<std::string> generate_benign_domains(const std::vector<std::string>& words,
                                                 std::size_t count, std::uint64_t seed) {
    if (words.empty()) throw std::invalid_argument("generate_benign_domains: empty word list");
    static const char* kTlds[] = {"com", "net", "org", "info", "io"};
    Rng rng(seed);
    std::vector<std::string> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::string name = words[uniform_index(rng, words.size())];
        if (uniform_index(rng, 100) < 70) {
            name += words[uniform_index(rng, words.size())];
        }
        name += '.';
        name += kTlds[uniform_index(rng, 5)];
        out.push_back(std::move(name));
    }
    return out;
}

std::vector<std::string> generate_dga_domains(std::size_t count, std::uint64_t seed) {
    static const char* kTlds[] = {"com", "net", "biz", "info", "ru"};
    Rng rng(seed);
    std::vector<std::string> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t len = 10 + uniform_index(rng, 11);  // 10..20
        std::string name;
        name.reserve(len + 4);
        for (std::size_t k = 0; k < len; ++k) {
            if (uniform_index(rng, 100) < 15) {
                name += static_cast<char>('0' + uniform_index(rng, 10));
            } else {
                name += static_cast<char>('a' + uniform_index(rng, 26));
            }
        }
        name += '.';
        name += kTlds[uniform_index(rng, 5)];
        out.push_back(std::move(name));
    }
    return out;
}

}  // namespace bothound
