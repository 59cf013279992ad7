#include "bothound/record.hpp"

#include <arpa/inet.h>

#include <cctype>
#include <fstream>

#include "bothound/errors.hpp"
#include "json.hpp"

namespace bothound {

namespace {

using nlohmann::json;

bool is_blank(const std::string& line) {
    for (char c : line) {
        if (!std::isspace(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

bool looks_like_domain(const std::string& s) {
    if (s.empty() || s.size() > 255) return false;
    for (char c : s) {
        if (std::iscntrl(static_cast<unsigned char>(c)) ||
            std::isspace(static_cast<unsigned char>(c))) {
            return false;
        }
    }
    return true;
}

std::optional<std::string> take_string(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    if (!it->is_string()) throw InputError(std::string(key) + " is not a string");
    return it->get<std::string>();
}

std::optional<std::int64_t> take_int(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) return std::nullopt;
    if (!it->is_number_integer()) throw InputError(std::string(key) + " is not an integer");
    return it->get<std::int64_t>();
}

}  // namespace

ParseOutcome ParseOutcome::make_record(TrafficRecord r) {
    ParseOutcome out;
    out.kind = Kind::kRecord;
    out.record = std::move(r);
    return out;
}

ParseOutcome ParseOutcome::make_skip() {
    ParseOutcome out;
    out.kind = Kind::kSkip;
    return out;
}

ParseOutcome ParseOutcome::make_error(std::size_t line_no, std::string reason) {
    ParseOutcome out;
    out.kind = Kind::kError;
    out.error = ParseError{line_no, std::move(reason)};
    return out;
}

bool is_valid_ip(const std::string& text) {
    unsigned char buf[sizeof(in6_addr)];
    return inet_pton(AF_INET, text.c_str(), buf) == 1 ||
           inet_pton(AF_INET6, text.c_str(), buf) == 1;
}

std::optional<std::string> validate_record(const TrafficRecord& r) {
    if (r.timestamp < 0) return "negative timestamp";
    if (r.src_ip.empty()) return "missing srcIp";
    if (!r.dst_ip.has_value() && !r.domain.has_value()) return "missing dstIp/domain";
    if (r.nxdomain && r.dst_ip.has_value()) return "nxdomain has dstIp";
    if (r.packet_size.has_value() && *r.packet_size < 0) return "negative packetSize";
    return std::nullopt;
}

ParseOutcome parse_record_line(const std::string& line, std::size_t line_no) {
    if (is_blank(line)) return ParseOutcome::make_skip();
    std::size_t first = line.find_first_not_of(" \t");
    if (first != std::string::npos && line[first] == '#') return ParseOutcome::make_skip();

    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& e) {
        return ParseOutcome::make_error(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) return ParseOutcome::make_error(line_no, "line is not a JSON object");

    TrafficRecord r;
    try {
        auto ts = take_int(obj, "ts");
        if (!ts) return ParseOutcome::make_error(line_no, "missing ts");
        r.timestamp = *ts;

        auto src = take_string(obj, "src");
        if (!src) return ParseOutcome::make_error(line_no, "missing src");
        r.src_ip = *src;

        r.dst_ip = take_string(obj, "dst");
        r.domain = take_string(obj, "domain");
        r.uri = take_string(obj, "uri");
        r.http_version = take_string(obj, "version");
        if (auto status = take_int(obj, "status"))
            r.http_status = static_cast<int>(*status);
        r.packet_size = take_int(obj, "size");
        auto nx = obj.find("nx");
        if (nx != obj.end()) {
            if (!nx->is_boolean()) return ParseOutcome::make_error(line_no, "nx is not a boolean");
            r.nxdomain = nx->get<bool>();
        }
    } catch (const InputError& e) {
        return ParseOutcome::make_error(line_no, e.what());
    }

    if (!is_valid_ip(r.src_ip))
        return ParseOutcome::make_error(line_no, "src is not a valid IP: " + r.src_ip);
    if (r.dst_ip && !is_valid_ip(*r.dst_ip))
        return ParseOutcome::make_error(line_no, "dst is not a valid IP: " + *r.dst_ip);
    if (r.domain && !looks_like_domain(*r.domain))
        return ParseOutcome::make_error(line_no, "malformed domain");

    if (auto violation = validate_record(r))
        return ParseOutcome::make_error(line_no, *violation);
    return ParseOutcome::make_record(std::move(r));
}

std::string serialize_record(const TrafficRecord& r) {
    json obj;
    obj["ts"] = r.timestamp;
    obj["src"] = r.src_ip;
    if (r.dst_ip) obj["dst"] = *r.dst_ip;
    if (r.domain) obj["domain"] = *r.domain;
    if (r.uri) obj["uri"] = *r.uri;
    if (r.http_status) obj["status"] = *r.http_status;
    if (r.http_version) obj["version"] = *r.http_version;
    if (r.packet_size) obj["size"] = *r.packet_size;
    if (r.nxdomain) obj["nx"] = true;
    return obj.dump();
}

RecordFile read_record_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open record file: " + path);

    RecordFile out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        ParseOutcome outcome = parse_record_line(line, line_no);
        switch (outcome.kind) {
            case ParseOutcome::Kind::kRecord:
                out.records.push_back(std::move(*outcome.record));
                break;
            case ParseOutcome::Kind::kSkip:
                ++out.skipped;
                break;
            case ParseOutcome::Kind::kError:
                out.errors.push_back(std::move(*outcome.error));
                break;
        }
    }
    return out;
}

}  // namespace bothound
