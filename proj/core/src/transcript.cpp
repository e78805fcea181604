#include "tents/transcript.hpp"

#include <ctime>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace tents {

namespace {

using nlohmann::json;

json optional_int(const std::optional<std::int64_t>& v) {
    if (v) return *v;
    return nullptr;
}

std::optional<std::int64_t> int_or_null(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<std::int64_t>();
}

}  // namespace

std::string record_to_json(const AttemptRecord& r) {
    json j;
    j["model"] = r.model;
    j["instance_id"] = r.instance_id;
    j["rows"] = r.rows;
    j["cols"] = r.cols;
    j["problem_size"] = r.problem_size;
    j["seed"] = r.seed;
    j["attempt_index"] = r.attempt_index;
    j["prompt"] = r.prompt;
    j["response"] = r.response;
    j["parse_outcome"] = {{"ok", r.parse_ok}, {"error", r.parse_error}};
    j["validation_report"] = {{"valid", r.valid}, {"violations", r.violations}};
    j["prompt_tokens"] = optional_int(r.prompt_tokens);
    j["completion_tokens"] = optional_int(r.completion_tokens);
    j["reasoning_tokens"] = optional_int(r.reasoning_tokens);
    j["latency_ms"] = r.latency_ms;
    j["effort_value"] = r.effort_value;
    j["effort_kind"] = r.effort_kind;
    j["timestamp"] = r.timestamp;
    j["finish_reason"] = r.finish_reason;
    j["failure_code"] = r.failure_code;
    j["success"] = r.success;
    return j.dump();
}

AttemptRecord record_from_json(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("record: invalid JSON: ") + e.what());
    }
    try {
        AttemptRecord r;
        r.model = j.at("model").get<std::string>();
        r.instance_id = j.at("instance_id").get<std::string>();
        r.rows = j.at("rows").get<int>();
        r.cols = j.at("cols").get<int>();
        r.problem_size = j.at("problem_size").get<std::int64_t>();
        r.seed = j.at("seed").get<std::int64_t>();
        r.attempt_index = j.at("attempt_index").get<int>();
        r.prompt = j.at("prompt").get<std::string>();
        r.response = j.at("response").get<std::string>();
        r.parse_ok = j.at("parse_outcome").at("ok").get<bool>();
        r.parse_error = j.at("parse_outcome").at("error").get<std::string>();
        r.valid = j.at("validation_report").at("valid").get<bool>();
        r.violations =
            j.at("validation_report").at("violations").get<std::vector<std::string>>();
        r.prompt_tokens = int_or_null(j, "prompt_tokens");
        r.completion_tokens = int_or_null(j, "completion_tokens");
        r.reasoning_tokens = int_or_null(j, "reasoning_tokens");
        r.latency_ms = j.at("latency_ms").get<double>();
        r.effort_value = j.at("effort_value").get<double>();
        r.effort_kind = j.at("effort_kind").get<std::string>();
        r.timestamp = j.at("timestamp").get<std::string>();
        r.finish_reason = j.at("finish_reason").get<std::string>();
        r.failure_code = j.at("failure_code").get<std::string>();
        r.success = j.at("success").get<bool>();
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("record: bad field: ") + e.what());
    }
}

std::vector<AttemptRecord> load_transcript(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open transcript: " + path);
    std::vector<AttemptRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        records.push_back(record_from_json(line));
    }
    return records;
}

std::string utc_timestamp_now() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

}  // namespace tents
