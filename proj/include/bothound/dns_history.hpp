#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bothound {

enum class DnsRecordType { kA, kAaaa, kNs };

std::string to_string(DnsRecordType type);
DnsRecordType dns_record_type_from_string(const std::string& text);

struct DnsObservation {
    std::string domain;
    std::int64_t timestamp = 0;
    DnsRecordType type = DnsRecordType::kA;
    std::string value;
    std::int64_t ttl = 0;

    bool operator==(const DnsObservation&) const = default;
};

/// Aggregates over one [window_start, window_end] slice of a domain's
/// history. distinct_values counts A/AAAA answers only; ns_changes counts
/// transitions of the per-timestamp NS value set.
struct ChurnStats {
    std::int64_t window_start = 0;
    std::int64_t window_end = 0;
    std::int64_t distinct_values = 0;
    std::int64_t observation_count = 0;
    double mean_ttl = 0.0;
    std::int64_t ns_changes = 0;
};

struct FluxThresholds {
    std::int64_t ttl_max = 300;
    std::int64_t min_distinct = 5;
    std::int64_t min_ns_changes = 2;
    std::int64_t window_seconds = 3600;
};

struct FluxVerdict {
    std::string domain;
    bool flagged = false;
    bool double_flux = false;
    std::string reason;
};

/// Historic DNS observations per domain, replayable from a line-delimited
/// log. Ingestion keeps observations sorted per domain and is idempotent
/// on the (domain, timestamp, type, value) tuple.
class DnsHistoryStore {
public:
    void record_observations(const std::vector<DnsObservation>& observations);

    bool has_domain(const std::string& domain) const;
    std::vector<std::string> domains() const;
    const std::vector<DnsObservation>& observations(const std::string& domain) const;
    std::size_t size() const;

    /// Latest observation timestamp for the domain; throws on unknown.
    std::int64_t latest_timestamp(const std::string& domain) const;

    ChurnStats churn_stats(const std::string& domain, std::int64_t window_start,
                           std::int64_t window_end) const;

    /// Line format: domain ts type value ttl. "#" comments allowed.
    static DnsHistoryStore load(const std::string& path);
    void save(const std::string& path) const;

private:
    std::map<std::string, std::vector<DnsObservation>> by_domain_;
};

/// flagged when mean TTL is at most ttl_max and the window saw at least
/// min_distinct A/AAAA values; double_flux needs min_ns_changes NS
/// rotations on top. Advisory only; CDNs also run low TTLs.
FluxVerdict flux_verdict(const std::string& domain, const ChurnStats& stats,
                         const FluxThresholds& thresholds);

}  // namespace bothound
