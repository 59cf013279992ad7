#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

namespace bothound {

enum class IpVerdict { kUnknown, kClean, kSuspicious, kMalicious };

std::string to_string(IpVerdict v);
IpVerdict ip_verdict_from_string(const std::string& text);

/// File-backed stand-in for the external reputation/sinkhole/sandbox
/// services. Lookups only ever echo what the file said; unknown keys are
/// "unknown", never fabricated.
struct IntelStore {
    std::map<std::string, IpVerdict> ip_verdicts;
    std::set<std::string> sinkholed;  // IPs and domains
    std::map<std::string, std::vector<std::string>> sample_indicators;  // hash -> targets
};

/// Line formats: "rep IP verdict", "sink KEY", "sample HASH target...".
/// "#" comments and blank lines allowed. Malformed lines report their
/// line number.
IntelStore load_intel_store(const std::string& path);

struct IpLookup {
    IpVerdict verdict = IpVerdict::kUnknown;
    bool sinkholed = false;
};

IpLookup lookup_ip(const IntelStore& store, const std::string& ip);

bool is_sinkholed(const IntelStore& store, const std::string& key);

/// Domains/IPs associated with an artifact hash; empty for unknown hashes.
std::vector<std::string> lookup_artifact(const IntelStore& store, const std::string& hash);

}  // namespace bothound
