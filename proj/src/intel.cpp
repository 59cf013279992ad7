#include "bothound/intel.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "bothound/errors.hpp"

namespace bothound {

std::string to_string(IpVerdict v) {
    switch (v) {
        case IpVerdict::kUnknown: return "unknown";
        case IpVerdict::kClean: return "clean";
        case IpVerdict::kSuspicious: return "suspicious";
        case IpVerdict::kMalicious: return "malicious";
    }
    return "unknown";
}

IpVerdict ip_verdict_from_string(const std::string& text) {
    if (text == "unknown") return IpVerdict::kUnknown;
    if (text == "clean") return IpVerdict::kClean;
    if (text == "suspicious") return IpVerdict::kSuspicious;
    if (text == "malicious") return IpVerdict::kMalicious;
    throw InputError("unknown reputation verdict: " + text);
}

IntelStore load_intel_store(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open intel file: " + path);

    IntelStore store;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;

        std::istringstream fields(line);
        std::string kind;
        fields >> kind;
        const std::string where = " on intel line " + std::to_string(line_no);

        if (kind == "rep") {
            std::string ip, verdict, extra;
            if (!(fields >> ip >> verdict) || (fields >> extra))
                throw InputError("malformed rep entry" + where + ": " + line);
            try {
                store.ip_verdicts[ip] = ip_verdict_from_string(verdict);
            } catch (const InputError& e) {
                throw InputError(std::string(e.what()) + where);
            }
        } else if (kind == "sink") {
            std::string key, extra;
            if (!(fields >> key) || (fields >> extra))
                throw InputError("malformed sink entry" + where + ": " + line);
            store.sinkholed.insert(key);
        } else if (kind == "sample") {
            std::string hash;
            if (!(fields >> hash))
                throw InputError("malformed sample entry" + where + ": " + line);
            std::string target;
            auto& targets = store.sample_indicators[hash];
            std::size_t added = 0;
            while (fields >> target) {
                if (std::find(targets.begin(), targets.end(), target) == targets.end())
                    targets.push_back(target);
                ++added;
            }
            if (added == 0)
                throw InputError("sample entry without targets" + where + ": " + line);
        } else {
            throw InputError("unknown intel entry kind '" + kind + "'" + where);
        }
    }
    return store;
}

IpLookup lookup_ip(const IntelStore& store, const std::string& ip) {
    IpLookup result;
    const auto it = store.ip_verdicts.find(ip);
    if (it != store.ip_verdicts.end()) result.verdict = it->second;
    result.sinkholed = store.sinkholed.count(ip) > 0;
    return result;
}

bool is_sinkholed(const IntelStore& store, const std::string& key) {
    return store.sinkholed.count(key) > 0;
}

std::vector<std::string> lookup_artifact(const IntelStore& store, const std::string& hash) {
    const auto it = store.sample_indicators.find(hash);
    if (it == store.sample_indicators.end()) return {};
    return it->second;
}

}  // namespace bothound
