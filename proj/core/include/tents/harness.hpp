#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tents/codec.hpp"
#include "tents/grid.hpp"
#include "tents/transcript.hpp"

namespace tents {

// Built-in agents run without any network and are addressed by endpoint:
//   builtin:oracle  solves with the deductive solver (enumeration fallback)
//   builtin:random  uniform cells from {0,2,3} off-tree, seeded per attempt
inline constexpr const char* kBuiltinOracle = "builtin:oracle";
inline constexpr const char* kBuiltinRandom = "builtin:random";

struct ModelConfig {
    std::string name;
    std::string endpoint;  // builtin:* or a chat-completions URL
    std::string auth_env;  // env var holding the bearer credential; never logged
    std::string reasoning_effort = "default";  // low | medium | high | default
    int max_output_tokens = 0;                 // 0 = provider default
    double temperature = 0.0;
    int timeout_seconds = 120;
    int max_retries = 3;

    double requests_per_minute = 0.0;  // 0 = unlimited
    int backoff_base_ms = 1000;        // exponential backoff on throttling
    // Whether the provider's completion_tokens already includes reasoning
    // tokens (OpenAI-style usage). When false and reasoning tokens are
    // reported, they are added to the effort value.
    bool reasoning_in_completion = true;
    ParsePolicy parse_policy = ParsePolicy::Lenient;
};

struct AgentReply {
    bool transport_ok = true;
    std::string transport_error;
    std::string text;
    std::string finish_reason;
    std::optional<std::int64_t> prompt_tokens;
    std::optional<std::int64_t> completion_tokens;
    std::optional<std::int64_t> reasoning_tokens;
    double latency_ms = 0.0;
};

class Agent {
  public:
    virtual ~Agent() = default;
    virtual AgentReply respond(const PuzzleInstance& instance,
                               const std::string& prompt) = 0;
};

bool is_builtin(const ModelConfig& config);

/// Builds the agent for a config: a built-in one, or an HTTP chat-completions
/// client. Throws std::invalid_argument for an unknown builtin: endpoint.
std::unique_ptr<Agent> make_agent(const ModelConfig& config);

/// One single-turn attempt: build the prompt, ask the agent, parse and
/// validate the answer, account for effort. Transport failures and parse
/// failures become records too, never exceptions.
AttemptRecord run_attempt(const ModelConfig& config,
                          const PuzzleInstance& instance, Agent& agent,
                          int attempt_index = 0);

struct RunMatrix {
    std::vector<ModelConfig> models;
    std::vector<std::pair<int, int>> shapes;  // (rows, cols)
    int trials = 10;
    Difficulty difficulty = Difficulty::Easy;
    std::int64_t base_seed = 0;
    int parallelism = 4;
    std::string transcript_path;
};

/// Default shapes: squares from 2x2 through 15x15.
std::vector<std::pair<int, int>> default_shapes();

RunMatrix matrix_from_json(const std::string& text);  // throws std::invalid_argument
std::string matrix_to_json(const RunMatrix& matrix);

struct RunSummary {
    int total = 0;      // |models| x |shapes| x trials
    int executed = 0;   // attempts actually run
    int skipped = 0;    // already present in the transcript
    int succeeded = 0;  // among executed
    int transport_failures = 0;
    std::map<std::string, int> failure_counts;  // by failure/violation code
};

/// Runs every (model, shape, trial) cell not already present in the
/// transcript. Instances are generated from the base seed, so every model
/// sees identical puzzles. Attempts run with bounded parallelism; records
/// are appended whole-line through a single writer. With dry_run, only
/// builtin: models are allowed (std::invalid_argument otherwise).
RunSummary run_matrix(const RunMatrix& matrix, bool dry_run = false);

/// The seed handed to the generator for a given matrix cell.
std::int64_t instance_seed(std::int64_t base_seed, int rows, int cols, int trial);

}  // namespace tents
