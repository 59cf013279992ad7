#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bothound/features.hpp"

namespace bothound {

inline constexpr int kModelSchemaVersion = 1;

enum class DomainLabel { kBenign, kDga };

/// Trained maximum-margin linear classifier over the 11 domain features.
struct LinearModel {
    std::vector<double> weights;  // kDomainFeatureCount entries
    double bias = 0.0;
    int schema_version = kModelSchemaVersion;
    std::int64_t trained_positive = 0;
    std::int64_t trained_negative = 0;

    bool operator==(const LinearModel&) const = default;
};

struct TrainConfig {
    double regularization = 1e-3;
    int epochs = 40;
    double learning_rate = 0.5;
    std::uint64_t seed = 1;
};

struct Prediction {
    DomainLabel label = DomainLabel::kBenign;
    double score = 0.0;
};

struct EvalReport {
    std::int64_t true_pos = 0;
    std::int64_t false_pos = 0;
    std::int64_t true_neg = 0;
    std::int64_t false_neg = 0;
    std::optional<double> precision;  // absent when no positive predictions
    std::optional<double> recall;
    std::optional<double> f1;
    double accuracy = 0.0;
};

/// Subgradient descent on the primal L2-regularized hinge loss:
///   J(w,b) = lambda/2 * |w|^2 + mean_i max(0, 1 - y_i (w.x_i + b))
/// Sample order is reshuffled per epoch from the seeded generator. An
/// epoch that raises J is rolled back and the step size halved, so the
/// per-epoch objective trace is non-increasing. Deterministic per seed.
/// Labels are +1 (DGA) / -1 (benign); both classes must be present.
LinearModel train_linear(const std::vector<std::vector<double>>& samples,
                         const std::vector<int>& labels, const TrainConfig& cfg,
                         std::vector<double>* objective_trace = nullptr);

LinearModel train_linear_svm(const std::vector<DomainFeatures>& samples,
                             const std::vector<int>& labels, const TrainConfig& cfg,
                             std::vector<double>* objective_trace = nullptr);

double decision_score(const LinearModel& m, const std::vector<double>& x);

/// score = w.x + b; DGA iff score > 0 (ties classify benign).
Prediction predict(const LinearModel& m, const DomainFeatures& f);

EvalReport evaluate(const LinearModel& m, const std::vector<DomainFeatures>& samples,
                    const std::vector<int>& labels);

void save_model(const LinearModel& m, const std::string& path);
LinearModel load_model(const std::string& path);

// --- corpus helpers -------------------------------------------------------

/// Lowercased words, one per line, "#" comments allowed.
std::vector<std::string> load_word_list(const std::string& path);

/// Domains to train on, one per line, "#" comments and blanks skipped.
std::vector<std::string> load_domain_list(const std::string& path);

/// Word-composition benign-domain generator (1-2 dictionary words plus a
/// common TLD), deterministic per seed.
std::vector<std::string> generate_benign_domains(const std::vector<std::string>& words,
                                                 std::size_t count, std::uint64_t seed);

/// Seeded random-string generator standing in for DGA output.
std::vector<std::string> generate_dga_domains(std::size_t count, std::uint64_t seed);

}  // namespace bothound
