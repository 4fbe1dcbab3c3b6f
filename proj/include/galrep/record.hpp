#pragma once

#include <string>
#include <vector>

#include "galrep/twistdedup.hpp"

namespace galrep {

inline constexpr u32 kRecordSchemaVersion = 1;

/// One serialized enumeration outcome. Round-trips losslessly through the
/// line-delimited JSON format (one self-contained record per line, UTF-8,
/// sorted keys, integers only).
struct ClassRecord {
    u32 rep_weight = 0;
    u32 m = 0;
    std::vector<u32> modulus;
    std::vector<std::pair<u32, std::vector<u32>>> values;
    std::vector<u32> member_weights;
    u64 orbit_count = 0;

    bool operator==(const ClassRecord& o) const = default;
};

struct ResultRecord {
    u32 schema_version = kRecordSchemaVersion;
    u32 p = 0;
    u32 num_classes = 0;
    u64 total = 0;
    std::vector<ClassRecord> classes;

    bool operator==(const ResultRecord& o) const = default;
};

ResultRecord make_record(const EnumerationResult& result);

/// Single-line JSON, no trailing newline. Deterministic byte output.
std::string to_json_line(const ResultRecord& record);

/// Parse one record line; throws std::invalid_argument on malformed input.
ResultRecord parse_json_line(const std::string& line);

}  // namespace galrep
