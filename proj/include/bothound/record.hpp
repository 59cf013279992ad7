#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bothound {

/// One observed communication event from a traffic/DNS log.
struct TrafficRecord {
    std::int64_t timestamp = 0;
    std::string src_ip;
    std::optional<std::string> dst_ip;
    std::optional<std::string> domain;
    std::optional<std::string> uri;
    std::optional<int> http_status;
    std::optional<std::string> http_version;
    std::optional<std::int64_t> packet_size;
    bool nxdomain = false;

    bool operator==(const TrafficRecord&) const = default;
};

struct ParseError {
    std::size_t line_no = 0;
    std::string reason;
};

/// Result of parsing one input line: a record, a skipped line (blank or
/// "#" comment), or an error carrying the line number and reason.
struct ParseOutcome {
    enum class Kind { kRecord, kSkip, kError };

    Kind kind = Kind::kSkip;
    std::optional<TrafficRecord> record;
    std::optional<ParseError> error;

    static ParseOutcome make_record(TrafficRecord r);
    static ParseOutcome make_skip();
    static ParseOutcome make_error(std::size_t line_no, std::string reason);
};

ParseOutcome parse_record_line(const std::string& line, std::size_t line_no);

/// Empty result means every record invariant holds; otherwise the first
/// violated invariant is named.
std::optional<std::string> validate_record(const TrafficRecord& r);

/// One-line JSON form that parse_record_line accepts back unchanged.
std::string serialize_record(const TrafficRecord& r);

bool is_valid_ip(const std::string& text);

struct RecordFile {
    std::vector<TrafficRecord> records;
    std::vector<ParseError> errors;
    std::size_t skipped = 0;
};

/// Reads a line-delimited record file. Throws InputError if the file
/// cannot be opened; per-line problems are collected, not thrown.
RecordFile read_record_file(const std::string& path);

}  // namespace bothound
