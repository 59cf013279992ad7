#include "bothound/features.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

#include "bothound/errors.hpp"

namespace bothound {

namespace {

bool is_vowel(char c) {
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool is_ascii_letter(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_ascii_digit(char c) {
    return c >= '0' && c <= '9';
}

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

struct CharCounts {
    std::int64_t consonants = 0;
    std::int64_t vowels = 0;
    std::int64_t digits = 0;
    std::int64_t others = 0;
};

// Four-way partition: vowels, other ASCII letters, digits, everything else.
CharCounts count_classes(const std::string& s) {
    CharCounts c;
    for (char ch : s) {
        if (is_ascii_letter(ch)) {
            if (is_vowel(ch)) {
                ++c.vowels;
            } else {
                ++c.consonants;
            }
        } else if (is_ascii_digit(ch)) {
            ++c.digits;
        } else {
            ++c.others;
        }
    }
    return c;
}

// Vowel count guarded to 1 so vowel-free names stay finite.
double consonant_vowel(const CharCounts& c) {
    return static_cast<double>(c.consonants) /
           static_cast<double>(std::max<std::int64_t>(c.vowels, 1));
}

}  // namespace

const std::array<std::string, kUriExtensionCount>& uri_extension_list() {
    static const std::array<std::string, kUriExtensionCount> kList = {
        "exe",  "bat", "cmd",  "msi", "com", "drv", "js",  "css",  "dat", "ppt", "doc",
        "docx", "txt", "rtf",  "php", "cgi", "asp", "aspx", "html", "xhtml", "jsf",
        "dll",  "png", "jpg",  "bmp", "bin", "zip", "rar", "swf",  "scr", "wpad",
        "pac",  "ini"};
    return kList;
}

const std::array<int, 5>& known_reply_codes() {
    static const std::array<int, 5> kCodes = {200, 301, 400, 404, 413};
    return kCodes;
}

const std::array<std::string, kFeatureCount>& feature_names() {
    static const std::array<std::string, kFeatureCount> kNames = [] {
        std::array<std::string, kFeatureCount> names;
        int i = 0;
        names[i++] = "consonantRatio";
        names[i++] = "consonantVowelRatio";
        names[i++] = "domainLength";
        names[i++] = "othersRatio";
        names[i++] = "vocalRatio";
        names[i++] = "digitRatio";
        names[i++] = "numRepeatsByUniGram";
        names[i++] = "numRepeatsByBiGram";
        names[i++] = "numRepeatsByTriGram";
        names[i++] = "numRepeatsByTetraGram";
        names[i++] = "lowFrequenceOccurrence";
        names[i++] = "queryLength";
        names[i++] = "queryArgumentSize";
        names[i++] = "uriPathLength";
        names[i++] = "uriPathLevelLength";
        names[i++] = "uriPathPlusLength";
        names[i++] = "uriExistence";
        for (const auto& ext : uri_extension_list()) names[i++] = "extension." + ext;
        names[i++] = "unknownExtension";
        names[i++] = "unavailableExtension";
        names[i++] = "uriBaseConsonantRatio";
        names[i++] = "uriBaseVocalRatio";
        names[i++] = "uriBaseConsonantVowelRatio";
        names[i++] = "extensionLength";
        names[i++] = "packetSize";
        names[i++] = "packetSizeInexistence";
        for (int code : known_reply_codes()) names[i++] = "replyCode." + std::to_string(code);
        names[i++] = "unknownReplyCode";
        names[i++] = "inexistentHttpRCode";
        names[i++] = "httpVersion.1.0";
        names[i++] = "httpVersion.1.1";
        names[i++] = "unknownHttpVersion";
        names[i++] = "inexistentHttpVersion";
        return names;
    }();
    return kNames;
}

PublicSuffixList::PublicSuffixList(std::vector<std::string> suffixes) {
    suffixes_.reserve(suffixes.size());
    for (auto& s : suffixes) suffixes_.push_back(to_lower(std::move(s)));
}

PublicSuffixList PublicSuffixList::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open suffix list: " + path);
    std::vector<std::string> suffixes;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        suffixes.push_back(line);
    }
    return PublicSuffixList(std::move(suffixes));
}

std::string PublicSuffixList::longest_match(const std::string& name) const {
    std::string best;
    for (const auto& suffix : suffixes_) {
        if (suffix.size() > name.size()) continue;
        const bool whole = suffix.size() == name.size();
        if (!whole && name[name.size() - suffix.size() - 1] != '.') continue;
        if (name.compare(name.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
        if (suffix.size() > best.size()) best = suffix;
    }
    return best;
}

std::string analyzed_domain_string(const std::string& domain, const PublicSuffixList& suffixes) {
    if (domain.empty()) throw std::invalid_argument("domain is empty");
    if (domain.size() > 255) throw std::invalid_argument("domain exceeds 255 characters");

    std::string name = to_lower(domain);
    if (!name.empty() && name.back() == '.') name.pop_back();

    const std::string suffix = suffixes.longest_match(name);
    if (suffix.size() == name.size()) {
        name.clear();
    } else if (!suffix.empty()) {
        name.resize(name.size() - suffix.size() - 1);  // drop ".suffix"
    }

    std::string analyzed;
    analyzed.reserve(name.size());
    for (char c : name) {
        if (c != '.') analyzed.push_back(c);
    }
    if (analyzed.empty()) throw InputError("empty effective name: " + domain);
    return analyzed;
}

std::int64_t ngram_repeats(const std::string& s, int n) {
    if (n < 1) throw std::invalid_argument("ngram size must be >= 1");
    if (s.size() < static_cast<std::size_t>(n)) return 0;

    std::unordered_map<std::string_view, std::int64_t> counts;
    const std::string_view view(s);
    const std::size_t grams = s.size() - static_cast<std::size_t>(n) + 1;
    for (std::size_t i = 0; i < grams; ++i) {
        ++counts[view.substr(i, static_cast<std::size_t>(n))];
    }
    return static_cast<std::int64_t>(grams) - static_cast<std::int64_t>(counts.size());
}

DomainFeatures extract_domain_features(const std::string& domain,
                                       const PublicSuffixList& suffixes) {
    const std::string analyzed = analyzed_domain_string(domain, suffixes);
    const CharCounts counts = count_classes(analyzed);
    const double len = static_cast<double>(analyzed.size());

    DomainFeatures f;
    f.consonant_ratio = static_cast<double>(counts.consonants) / len;
    f.vocal_ratio = static_cast<double>(counts.vowels) / len;
    f.digit_ratio = static_cast<double>(counts.digits) / len;
    f.others_ratio = static_cast<double>(counts.others) / len;
    f.consonant_vowel_ratio = consonant_vowel(counts);
    f.domain_length = len / 255.0;
    f.num_repeats_by_unigram = ngram_repeats(analyzed, 1);
    f.num_repeats_by_bigram = ngram_repeats(analyzed, 2);
    f.num_repeats_by_trigram = ngram_repeats(analyzed, 3);
    f.num_repeats_by_tetragram = ngram_repeats(analyzed, 4);
    f.low_frequence_occurrence =
        (is_ascii_digit(analyzed.front()) && is_ascii_digit(analyzed.back())) ? 1 : 0;
    return f;
}

UriFeatures extract_uri_features(const std::optional<std::string>& uri) {
    UriFeatures f;
    if (!uri.has_value() || uri->empty()) {
        f.unavailable_extension = 1;
        return f;
    }

    const std::string& s = *uri;
    f.uri_existence = 1;

    const std::size_t hash = s.find('#');
    const std::size_t qmark = s.substr(0, hash == std::string::npos ? s.size() : hash).find('?');

    const std::string path = s.substr(0, std::min(qmark, hash));
    std::string query;
    if (qmark != std::string::npos) {
        const std::size_t query_end = hash == std::string::npos ? s.size() : hash;
        query = s.substr(qmark + 1, query_end - qmark - 1);
    }
    std::string fragment;
    if (hash != std::string::npos) fragment = s.substr(hash + 1);

    f.uri_path_length = static_cast<std::int64_t>(path.size());
    f.query_length = static_cast<std::int64_t>(query.size());
    f.uri_path_plus_length = f.uri_path_length +
                             (qmark == std::string::npos ? 0 : 1 + f.query_length) +
                             (hash == std::string::npos
                                  ? 0
                                  : 1 + static_cast<std::int64_t>(fragment.size()));

    if (!query.empty()) {
        f.query_argument_size = 1 + std::count(query.begin(), query.end(), '&');
    }

    // Non-empty "/"-separated segments; the last one carries the extension.
    std::string last_segment;
    std::size_t start = 0;
    while (start <= path.size()) {
        const std::size_t slash = path.find('/', start);
        const std::size_t end = slash == std::string::npos ? path.size() : slash;
        if (end > start) {
            ++f.uri_path_level_length;
            last_segment = path.substr(start, end - start);
        }
        if (slash == std::string::npos) break;
        start = slash + 1;
    }
    if (!path.empty() && path.back() == '/') last_segment.clear();

    std::string base = last_segment;
    const std::size_t dot = last_segment.rfind('.');
    if (dot == std::string::npos) {
        f.unavailable_extension = 1;
    } else {
        const std::string ext = to_lower(last_segment.substr(dot + 1));
        f.extension_length = static_cast<std::int64_t>(ext.size());
        base = last_segment.substr(0, dot);
        const auto& list = uri_extension_list();
        const auto it = std::find(list.begin(), list.end(), ext);
        if (it != list.end()) {
            f.extension_flags[static_cast<std::size_t>(it - list.begin())] = 1;
        } else {
            f.unknown_extension = 1;
        }
    }

    if (!base.empty()) {
        const CharCounts counts = count_classes(to_lower(base));
        const double len = static_cast<double>(base.size());
        f.consonant_ratio = static_cast<double>(counts.consonants) / len;
        f.vocal_ratio = static_cast<double>(counts.vowels) / len;
        f.consonant_vowel_ratio = consonant_vowel(counts);
    }
    return f;
}

MetaFeatures extract_meta_features(const TrafficRecord& r) {
    MetaFeatures f;
    if (r.packet_size.has_value()) {
        f.packet_size = *r.packet_size;
    } else {
        f.packet_size_inexistence = 1;
    }

    if (r.http_status.has_value()) {
        const auto& codes = known_reply_codes();
        const auto it = std::find(codes.begin(), codes.end(), *r.http_status);
        if (it != codes.end()) {
            f.reply_code_flags[static_cast<std::size_t>(it - codes.begin())] = 1;
        } else {
            f.unknown_reply_code = 1;
        }
    } else {
        f.inexistent_http_rcode = 1;
    }

    if (r.http_version.has_value()) {
        if (*r.http_version == "HTTP/1.0") {
            f.version_flags[0] = 1;
        } else if (*r.http_version == "HTTP/1.1") {
            f.version_flags[1] = 1;
        } else {
            f.unknown_http_version = 1;
        }
    } else {
        f.inexistent_http_version = 1;
    }
    return f;
}

std::array<double, kDomainFeatureCount> domain_feature_values(const DomainFeatures& d) {
    return {d.consonant_ratio,
            d.consonant_vowel_ratio,
            d.domain_length,
            d.others_ratio,
            d.vocal_ratio,
            d.digit_ratio,
            static_cast<double>(d.num_repeats_by_unigram),
            static_cast<double>(d.num_repeats_by_bigram),
            static_cast<double>(d.num_repeats_by_trigram),
            static_cast<double>(d.num_repeats_by_tetragram),
            static_cast<double>(d.low_frequence_occurrence)};
}

FeatureVector assemble_clustering_vector(const DomainFeatures& d, const UriFeatures& u,
                                         const MetaFeatures& m) {
    FeatureVector v;
    v.values.reserve(kFeatureCount);
    for (double x : domain_feature_values(d)) v.values.push_back(x);

    v.values.push_back(static_cast<double>(u.query_length));
    v.values.push_back(static_cast<double>(u.query_argument_size));
    v.values.push_back(static_cast<double>(u.uri_path_length));
    v.values.push_back(static_cast<double>(u.uri_path_level_length));
    v.values.push_back(static_cast<double>(u.uri_path_plus_length));
    v.values.push_back(static_cast<double>(u.uri_existence));
    for (int flag : u.extension_flags) v.values.push_back(static_cast<double>(flag));
    v.values.push_back(static_cast<double>(u.unknown_extension));
    v.values.push_back(static_cast<double>(u.unavailable_extension));
    v.values.push_back(u.consonant_ratio);
    v.values.push_back(u.vocal_ratio);
    v.values.push_back(u.consonant_vowel_ratio);
    v.values.push_back(static_cast<double>(u.extension_length));

    v.values.push_back(static_cast<double>(m.packet_size));
    v.values.push_back(static_cast<double>(m.packet_size_inexistence));
    for (int flag : m.reply_code_flags) v.values.push_back(static_cast<double>(flag));
    v.values.push_back(static_cast<double>(m.unknown_reply_code));
    v.values.push_back(static_cast<double>(m.inexistent_http_rcode));
    for (int flag : m.version_flags) v.values.push_back(static_cast<double>(flag));
    v.values.push_back(static_cast<double>(m.unknown_http_version));
    v.values.push_back(static_cast<double>(m.inexistent_http_version));
    return v;
}

FeatureScaler fit_scaler(const std::vector<FeatureVector>& vectors) {
    if (vectors.empty()) throw std::invalid_argument("fit_scaler needs at least one vector");
    const std::size_t dim = vectors.front().values.size();
    for (const auto& v : vectors) {
        if (v.values.size() != dim)
            throw std::invalid_argument("fit_scaler: dimension mismatch");
    }

    FeatureScaler s;
    s.mean.assign(dim, 0.0);
    s.stddev.assign(dim, 0.0);
    const double n = static_cast<double>(vectors.size());
    for (const auto& v : vectors) {
        for (std::size_t i = 0; i < dim; ++i) s.mean[i] += v.values[i];
    }
    for (std::size_t i = 0; i < dim; ++i) s.mean[i] /= n;
    for (const auto& v : vectors) {
        for (std::size_t i = 0; i < dim; ++i) {
            const double d = v.values[i] - s.mean[i];
            s.stddev[i] += d * d;
        }
    }
    for (std::size_t i = 0; i < dim; ++i) {
        s.stddev[i] = std::sqrt(s.stddev[i] / n);
        if (s.stddev[i] == 0.0) s.stddev[i] = 1.0;
    }
    return s;
}

FeatureVector apply_scaler(const FeatureScaler& s, const FeatureVector& v) {
    if (v.values.size() != s.mean.size())
        throw std::invalid_argument("apply_scaler: dimension mismatch");
    FeatureVector out;
    out.schema_version = v.schema_version;
    out.values.resize(v.values.size());
    for (std::size_t i = 0; i < v.values.size(); ++i) {
        out.values[i] = (v.values[i] - s.mean[i]) / s.stddev[i];
    }
    return out;
}

}  // namespace bothound
