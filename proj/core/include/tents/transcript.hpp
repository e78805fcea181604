#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tents {

inline constexpr const char* kEffortKindTokens = "tokens";
inline constexpr const char* kEffortKindLatency = "latency";

inline constexpr const char* kFailureTransport = "TRANSPORT_ERROR";
inline constexpr const char* kFailureParse = "PARSE_ERROR";

/// One agent attempt, as persisted to the JSONL transcript. Records are
/// immutable once written; the transcript is the sole input to analysis.
struct AttemptRecord {
    std::string model;
    std::string instance_id;
    int rows = 0;
    int cols = 0;
    std::int64_t problem_size = 0;
    std::int64_t seed = 0;
    int attempt_index = 0;
    std::string prompt;
    std::string response;

    bool parse_ok = false;
    std::string parse_error;  // "" when parse_ok

    bool valid = false;
    std::vector<std::string> violations;

    std::optional<std::int64_t> prompt_tokens;
    std::optional<std::int64_t> completion_tokens;
    std::optional<std::int64_t> reasoning_tokens;
    double latency_ms = 0.0;

    double effort_value = 0.0;
    std::string effort_kind;  // "tokens" when counts are known, else "latency"

    std::string timestamp;  // ISO 8601 UTC
    std::string finish_reason;
    std::string failure_code;  // "", TRANSPORT_ERROR or PARSE_ERROR
    bool success = false;      // parse ok AND grid valid
};

std::string record_to_json(const AttemptRecord& record);
AttemptRecord record_from_json(const std::string& line);  // throws std::invalid_argument

/// Loads a JSONL transcript. Blank lines are skipped; malformed lines throw.
std::vector<AttemptRecord> load_transcript(const std::string& path);

std::string utc_timestamp_now();

}  // namespace tents
