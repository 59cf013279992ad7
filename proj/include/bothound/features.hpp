#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bothound/record.hpp"

namespace bothound {

inline constexpr int kDomainFeatureCount = 11;
inline constexpr int kUriFeatureCount = 45;
inline constexpr int kMetaFeatureCount = 13;
inline constexpr int kFeatureCount = 69;
inline constexpr int kUriExtensionCount = 33;
inline constexpr int kFeatureSchemaVersion = 1;

/// Recognized URI extensions, in canonical flag order.
const std::array<std::string, kUriExtensionCount>& uri_extension_list();

/// Reply codes that get their own indicator, in canonical flag order.
const std::array<int, 5>& known_reply_codes();

/// Character-composition features of the effective (registered) part of
/// a domain name. All ratios are over the analyzed string: lowercased,
/// public suffix removed, dots dropped.
struct DomainFeatures {
    double consonant_ratio = 0.0;
    double consonant_vowel_ratio = 0.0;
    double domain_length = 0.0;  // analyzed length / 255
    double others_ratio = 0.0;
    double vocal_ratio = 0.0;
    double digit_ratio = 0.0;
    std::int64_t num_repeats_by_unigram = 0;
    std::int64_t num_repeats_by_bigram = 0;
    std::int64_t num_repeats_by_trigram = 0;
    std::int64_t num_repeats_by_tetragram = 0;
    int low_frequence_occurrence = 0;  // starts AND ends with a digit

    bool operator==(const DomainFeatures&) const = default;
};

struct UriFeatures {
    std::int64_t query_length = 0;
    std::int64_t query_argument_size = 0;
    std::int64_t uri_path_length = 0;
    std::int64_t uri_path_level_length = 0;
    std::int64_t uri_path_plus_length = 0;
    int uri_existence = 0;
    std::array<int, kUriExtensionCount> extension_flags{};
    int unknown_extension = 0;
    int unavailable_extension = 0;
    double consonant_ratio = 0.0;  // over the base name (last segment minus extension)
    double vocal_ratio = 0.0;
    double consonant_vowel_ratio = 0.0;
    std::int64_t extension_length = 0;

    bool operator==(const UriFeatures&) const = default;
};

struct MetaFeatures {
    std::int64_t packet_size = 0;
    int packet_size_inexistence = 0;
    std::array<int, 5> reply_code_flags{};  // 200, 301, 400, 404, 413
    int unknown_reply_code = 0;
    int inexistent_http_rcode = 0;
    std::array<int, 2> version_flags{};  // HTTP/1.0, HTTP/1.1
    int unknown_http_version = 0;
    int inexistent_http_version = 0;

    bool operator==(const MetaFeatures&) const = default;
};

/// Fixed-order numeric vector: domain features, then URI, then meta.
struct FeatureVector {
    std::vector<double> values;
    int schema_version = kFeatureSchemaVersion;

    bool operator==(const FeatureVector&) const = default;
};

/// Canonical name per vector position (shipped as docs/feature-order.md).
const std::array<std::string, kFeatureCount>& feature_names();

/// Minimal public-suffix list, one suffix per line, "#" comments allowed.
class PublicSuffixList {
public:
    PublicSuffixList() = default;
    explicit PublicSuffixList(std::vector<std::string> suffixes);

    static PublicSuffixList load(const std::string& path);

    /// Longest listed suffix matching the (lowercased, no trailing dot)
    /// name, or empty when none matches.
    std::string longest_match(const std::string& name) const;

    std::size_t size() const { return suffixes_.size(); }

private:
    std::vector<std::string> suffixes_;
};

/// Lowercases, strips one trailing dot, removes the longest matching
/// public suffix and drops remaining dots. Throws InputError when the
/// result is empty ("empty effective name").
std::string analyzed_domain_string(const std::string& domain, const PublicSuffixList& suffixes);

DomainFeatures extract_domain_features(const std::string& domain, const PublicSuffixList& suffixes);

/// Sum over distinct n-grams of (occurrences - 1), overlaps counted.
std::int64_t ngram_repeats(const std::string& s, int n);

UriFeatures extract_uri_features(const std::optional<std::string>& uri);

MetaFeatures extract_meta_features(const TrafficRecord& r);

FeatureVector assemble_clustering_vector(const DomainFeatures& d, const UriFeatures& u,
                                         const MetaFeatures& m);

std::array<double, kDomainFeatureCount> domain_feature_values(const DomainFeatures& d);

/// Per-feature z-score normalization fitted on training vectors.
/// Population standard deviation; constant features keep std 1 so the
/// scaled column is all zeros.
struct FeatureScaler {
    std::vector<double> mean;
    std::vector<double> stddev;

    bool operator==(const FeatureScaler&) const = default;
};

FeatureScaler fit_scaler(const std::vector<FeatureVector>& vectors);
FeatureVector apply_scaler(const FeatureScaler& s, const FeatureVector& v);

}  // namespace bothound
