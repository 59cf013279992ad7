#include "bothound/dns_history.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "bothound/errors.hpp"

namespace bothound {

namespace {

// Sort key; ttl deliberately excluded so a re-observed tuple with a
// different ttl counts as a duplicate.
auto observation_key(const DnsObservation& o) {
    return std::tie(o.timestamp, o.type, o.value);
}

void validate_observation(const DnsObservation& o) {
    if (o.domain.empty()) throw std::invalid_argument("observation has empty domain");
    if (o.value.empty()) throw std::invalid_argument("observation has empty value");
    if (o.ttl < 0) throw std::invalid_argument("observation has negative ttl");
}

}  // namespace

std::string to_string(DnsRecordType type) {
    switch (type) {
        case DnsRecordType::kA: return "A";
        case DnsRecordType::kAaaa: return "AAAA";
        case DnsRecordType::kNs: return "NS";
    }
    return "?";
}

DnsRecordType dns_record_type_from_string(const std::string& text) {
    if (text == "A") return DnsRecordType::kA;
    if (text == "AAAA") return DnsRecordType::kAaaa;
    if (text == "NS") return DnsRecordType::kNs;
    throw InputError("unknown DNS record type: " + text);
}

void DnsHistoryStore::record_observations(const std::vector<DnsObservation>& observations) {
    for (const auto& o : observations) {
        validate_observation(o);
        auto& list = by_domain_[o.domain];
        const auto pos = std::lower_bound(
            list.begin(), list.end(), o,
            [](const DnsObservation& a, const DnsObservation& b) {
                return observation_key(a) < observation_key(b);
            });
        if (pos != list.end() && observation_key(*pos) == observation_key(o)) continue;
        list.insert(pos, o);
    }
}

bool DnsHistoryStore::has_domain(const std::string& domain) const {
    return by_domain_.count(domain) > 0;
}

std::vector<std::string> DnsHistoryStore::domains() const {
    std::vector<std::string> out;
    out.reserve(by_domain_.size());
    for (const auto& [domain, _] : by_domain_) out.push_back(domain);
    return out;
}

const std::vector<DnsObservation>& DnsHistoryStore::observations(
    const std::string& domain) const {
    const auto it = by_domain_.find(domain);
    if (it == by_domain_.end()) throw std::runtime_error("no history for domain " + domain);
    return it->second;
}

std::size_t DnsHistoryStore::size() const {
    std::size_t total = 0;
    for (const auto& [_, list] : by_domain_) total += list.size();
    return total;
}

std::int64_t DnsHistoryStore::latest_timestamp(const std::string& domain) const {
    const auto& list = observations(domain);
    return list.back().timestamp;
}

ChurnStats DnsHistoryStore::churn_stats(const std::string& domain, std::int64_t window_start,
                                        std::int64_t window_end) const {
    if (window_start > window_end)
        throw std::invalid_argument("churn window is not well-ordered");
    const auto& list = observations(domain);

    ChurnStats stats;
    stats.window_start = window_start;
    stats.window_end = window_end;

    std::set<std::string> address_values;
    double ttl_sum = 0.0;

    // NS values grouped per timestamp; one change per differing group.
    std::set<std::string> prev_ns;
    std::set<std::string> cur_ns;
    std::int64_t cur_ns_ts = 0;
    bool have_prev = false;
    bool have_cur = false;

    auto flush_ns_group = [&]() {
        if (!have_cur) return;
        if (have_prev && cur_ns != prev_ns) ++stats.ns_changes;
        prev_ns = cur_ns;
        have_prev = true;
        cur_ns.clear();
        have_cur = false;
    };

    for (const auto& o : list) {
        if (o.timestamp < window_start || o.timestamp > window_end) continue;
        ++stats.observation_count;
        ttl_sum += static_cast<double>(o.ttl);
        if (o.type == DnsRecordType::kA || o.type == DnsRecordType::kAaaa) {
            address_values.insert(o.value);
        } else {
            if (have_cur && o.timestamp != cur_ns_ts) flush_ns_group();
            cur_ns.insert(o.value);
            cur_ns_ts = o.timestamp;
            have_cur = true;
        }
    }
    flush_ns_group();

    stats.distinct_values = static_cast<std::int64_t>(address_values.size());
    if (stats.observation_count > 0)
        stats.mean_ttl = ttl_sum / static_cast<double>(stats.observation_count);
    return stats;
}

DnsHistoryStore DnsHistoryStore::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open DNS history file: " + path);

    DnsHistoryStore store;
    std::vector<DnsObservation> batch;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream fields(line);
        DnsObservation o;
        std::string type_text;
        if (!(fields >> o.domain >> o.timestamp >> type_text >> o.value >> o.ttl))
            throw InputError("malformed DNS history line " + std::to_string(line_no) + ": " +
                             line);
        o.type = dns_record_type_from_string(type_text);
        if (o.ttl < 0)
            throw InputError("negative ttl on DNS history line " + std::to_string(line_no));
        batch.push_back(std::move(o));
    }
    store.record_observations(batch);
    return store;
}

void DnsHistoryStore::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write DNS history file: " + path);
    for (const auto& [domain, list] : by_domain_) {
        for (const auto& o : list) {
            out << domain << ' ' << o.timestamp << ' ' << to_string(o.type) << ' ' << o.value
                << ' ' << o.ttl << '\n';
        }
    }
}

FluxVerdict flux_verdict(const std::string& domain, const ChurnStats& stats,
                         const FluxThresholds& thresholds) {
    FluxVerdict v;
    v.domain = domain;

    const bool low_ttl = stats.mean_ttl <= static_cast<double>(thresholds.ttl_max);
    const bool churning = stats.distinct_values >= thresholds.min_distinct;
    v.flagged = low_ttl && churning;
    v.double_flux = v.flagged && stats.ns_changes >= thresholds.min_ns_changes;

    std::ostringstream reason;
    if (v.flagged) {
        reason << "meanTtl " << stats.mean_ttl << " <= " << thresholds.ttl_max
               << ", distinct " << stats.distinct_values << " >= " << thresholds.min_distinct;
        if (v.double_flux)
            reason << ", nsChanges " << stats.ns_changes << " >= " << thresholds.min_ns_changes;
    } else if (stats.observation_count == 0) {
        reason << "no observations in window";
    } else if (!low_ttl) {
        reason << "meanTtl " << stats.mean_ttl << " > " << thresholds.ttl_max;
    } else {
        reason << "distinct " << stats.distinct_values << " < " << thresholds.min_distinct;
    }
    v.reason = reason.str();
    return v;
}

}  // namespace bothound
