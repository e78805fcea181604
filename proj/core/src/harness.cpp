#include "tents/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#ifdef TENTS_HTTPS
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include "httplib.h"

#include "tents/generator.hpp"
#include "tents/rng.hpp"
#include "tents/solver.hpp"
#include "tents/validate.hpp"

namespace tents {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Built-in agents have no provider usage metadata; they report a synthetic
// token count of ceil(bytes / 4) so offline transcripts still carry a
// size-dependent effort signal.
std::int64_t synthetic_tokens(const std::string& text) {
    return static_cast<std::int64_t>((text.size() + 3) / 4);
}

std::string grid_as_array_text(const Grid& grid) {
    std::string out = "[";
    for (int r = 0; r < grid.rows; ++r) {
        if (r) out += ",";
        out += "[";
        for (int c = 0; c < grid.cols; ++c) {
            if (c) out += ",";
            out += std::to_string(static_cast<int>(grid.at(r, c)));
        }
        out += "]";
    }
    out += "]";
    return out;
}

class OracleAgent : public Agent {
  public:
    AgentReply respond(const PuzzleInstance& instance, const std::string&) override {
        const auto start = Clock::now();
        AgentReply reply;
        auto solved = solve_deductive(instance, Difficulty::Tricky);
        if (solved.status == SolveStatus::Solved) {
            reply.text = grid_as_array_text(solved.grid);
        } else {
            auto found = enumerate_solutions(instance, 1);
            if (!found.solutions.empty())
                reply.text = grid_as_array_text(found.solutions.front());
            else
                reply.text = "no solution found";
        }
        reply.finish_reason = "stop";
        reply.completion_tokens = synthetic_tokens(reply.text);
        reply.prompt_tokens = 0;
        reply.latency_ms = ms_since(start);
        return reply;
    }
};

class RandomAgent : public Agent {
  public:
    explicit RandomAgent(std::string model_name) : model_name_(std::move(model_name)) {}

    AgentReply respond(const PuzzleInstance& instance, const std::string&) override {
        const auto start = Clock::now();
        // Seeded from (instance, model) so reruns produce identical answers.
        std::mt19937 rng =
            seeded_rng(fnv1a64(instance.id) ^ mix64(fnv1a64(model_name_)));
        Grid guess = instance.grid;
        static constexpr CellState choices[] = {CellState::Empty, CellState::Tent,
                                                CellState::Grass};
        for (CellState& s : guess.cells)
            if (s != CellState::Tree) s = choices[uniform_below(rng, 3)];
        AgentReply reply;
        reply.text = grid_as_array_text(guess);
        reply.finish_reason = "stop";
        reply.completion_tokens = synthetic_tokens(reply.text);
        reply.prompt_tokens = 0;
        reply.latency_ms = ms_since(start);
        return reply;
    }

  private:
    std::string model_name_;
};

struct SplitUrl {
    std::string base;  // scheme://host[:port]
    std::string path;  // leading slash
};

SplitUrl split_url(const std::string& endpoint) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos)
        throw std::invalid_argument("endpoint must be builtin:* or scheme://host/path: " +
                                    endpoint);
    const auto path_start = endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {endpoint, "/"};
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

class HttpAgent : public Agent {
  public:
    explicit HttpAgent(ModelConfig config) : cfg_(std::move(config)) {}

    AgentReply respond(const PuzzleInstance&, const std::string& prompt) override {
        AgentReply reply;

        std::string credential;
        if (!cfg_.auth_env.empty()) {
            const char* value = std::getenv(cfg_.auth_env.c_str());
            if (!value || !*value) {
                reply.transport_ok = false;
                reply.transport_error =
                    "credential environment variable not set: " + cfg_.auth_env;
                return reply;
            }
            credential = value;
        }

        SplitUrl url;
        try {
            url = split_url(cfg_.endpoint);
        } catch (const std::invalid_argument& e) {
            reply.transport_ok = false;
            reply.transport_error = e.what();
            return reply;
        }

        json body;
        body["model"] = cfg_.name;
        body["messages"] = json::array({{{"role", "user"}, {"content", prompt}}});
        body["temperature"] = cfg_.temperature;
        if (cfg_.max_output_tokens > 0) body["max_tokens"] = cfg_.max_output_tokens;
        if (cfg_.reasoning_effort != "default" && !cfg_.reasoning_effort.empty())
            body["reasoning_effort"] = cfg_.reasoning_effort;
        const std::string payload = body.dump();

        httplib::Client client(url.base);
        client.set_connection_timeout(cfg_.timeout_seconds, 0);
        client.set_read_timeout(cfg_.timeout_seconds, 0);
        client.set_write_timeout(cfg_.timeout_seconds, 0);
        httplib::Headers headers;
        if (!credential.empty())
            headers.emplace("Authorization", "Bearer " + credential);

        std::string last_error;
        for (int attempt = 0; attempt <= cfg_.max_retries; ++attempt) {
            if (attempt > 0) {
                const auto delay = std::chrono::milliseconds(
                    static_cast<long long>(cfg_.backoff_base_ms) << (attempt - 1));
                std::this_thread::sleep_for(delay);
            }
            const auto start = Clock::now();
            auto res = client.Post(url.path, headers, payload, "application/json");
            reply.latency_ms = ms_since(start);
            if (!res) {
                last_error = "transport: " + httplib::to_string(res.error());
                continue;
            }
            if (res->status == 429 || res->status >= 500) {
                last_error = "HTTP " + std::to_string(res->status);
                continue;
            }
            if (res->status != 200) {
                reply.transport_ok = false;
                reply.transport_error = "HTTP " + std::to_string(res->status);
                reply.text = res->body;
                return reply;
            }
            return parse_provider_response(res->body, std::move(reply));
        }
        reply.transport_ok = false;
        reply.transport_error = last_error.empty() ? "transport: unknown" : last_error;
        return reply;
    }

  private:
    static AgentReply parse_provider_response(const std::string& body, AgentReply reply) {
        json j;
        try {
            j = json::parse(body);
            const auto& choice = j.at("choices").at(0);
            reply.text = choice.at("message").at("content").get<std::string>();
            if (choice.contains("finish_reason") && choice.at("finish_reason").is_string())
                reply.finish_reason = choice.at("finish_reason").get<std::string>();
        } catch (const json::exception& e) {
            reply.transport_ok = false;
            reply.transport_error = std::string("malformed provider response: ") + e.what();
            reply.text = body;
            return reply;
        }
        if (j.contains("usage") && j.at("usage").is_object()) {
            const auto& usage = j.at("usage");
            auto read_int = [&usage](const char* key) -> std::optional<std::int64_t> {
                if (usage.contains(key) && usage.at(key).is_number())
                    return usage.at(key).get<std::int64_t>();
                return std::nullopt;
            };
            reply.prompt_tokens = read_int("prompt_tokens");
            reply.completion_tokens = read_int("completion_tokens");
            reply.reasoning_tokens = read_int("reasoning_tokens");
            if (!reply.reasoning_tokens && usage.contains("completion_tokens_details")) {
                const auto& details = usage.at("completion_tokens_details");
                if (details.is_object() && details.contains("reasoning_tokens") &&
                    details.at("reasoning_tokens").is_number())
                    reply.reasoning_tokens = details.at("reasoning_tokens").get<std::int64_t>();
            }
        }
        return reply;
    }

    ModelConfig cfg_;
};

}  // namespace

bool is_builtin(const ModelConfig& config) {
    return config.endpoint.rfind("builtin:", 0) == 0;
}

std::unique_ptr<Agent> make_agent(const ModelConfig& config) {
    if (config.endpoint == kBuiltinOracle) return std::make_unique<OracleAgent>();
    if (config.endpoint == kBuiltinRandom)
        return std::make_unique<RandomAgent>(config.name);
    if (is_builtin(config))
        throw std::invalid_argument("unknown builtin agent: " + config.endpoint);
    return std::make_unique<HttpAgent>(config);
}

AttemptRecord run_attempt(const ModelConfig& config, const PuzzleInstance& instance,
                          Agent& agent, int attempt_index) {
    AttemptRecord r;
    r.model = config.name;
    r.instance_id = instance.id;
    r.rows = instance.grid.rows;
    r.cols = instance.grid.cols;
    r.problem_size = problem_size(instance);
    r.seed = instance.seed;
    r.attempt_index = attempt_index;
    r.prompt = build_prompt(instance);

    const AgentReply reply = agent.respond(instance, r.prompt);
    r.response = reply.text;
    r.finish_reason = reply.finish_reason;
    r.latency_ms = reply.latency_ms;
    r.prompt_tokens = reply.prompt_tokens;
    r.completion_tokens = reply.completion_tokens;
    r.reasoning_tokens = reply.reasoning_tokens;
    r.timestamp = utc_timestamp_now();

    if (!reply.transport_ok) {
        r.failure_code = kFailureTransport;
    } else {
        const ParseOutcome outcome =
            parse_response(reply.text, r.rows, r.cols, config.parse_policy);
        if (!outcome.ok()) {
            r.parse_error = std::string(to_string(*outcome.error));
            r.failure_code = kFailureParse;
        } else {
            r.parse_ok = true;
            const ValidationReport report = validate(instance, *outcome.candidate);
            r.valid = report.valid;
            r.violations = report.violation_strings();
        }
    }
    r.success = r.parse_ok && r.valid;

    if (r.completion_tokens) {
        r.effort_kind = kEffortKindTokens;
        double effort = static_cast<double>(*r.completion_tokens);
        if (!config.reasoning_in_completion && r.reasoning_tokens)
            effort += static_cast<double>(*r.reasoning_tokens);
        r.effort_value = effort;
    } else {
        r.effort_kind = kEffortKindLatency;
        r.effort_value = r.latency_ms;
    }
    return r;
}

std::vector<std::pair<int, int>> default_shapes() {
    std::vector<std::pair<int, int>> shapes;
    for (int n = 2; n <= 15; ++n) shapes.emplace_back(n, n);
    return shapes;
}

std::int64_t instance_seed(std::int64_t base_seed, int rows, int cols, int trial) {
    std::uint64_t h = mix64(static_cast<std::uint64_t>(base_seed));
    h = mix64(h ^ static_cast<std::uint64_t>(rows));
    h = mix64(h ^ static_cast<std::uint64_t>(cols));
    h = mix64(h ^ static_cast<std::uint64_t>(trial));
    return static_cast<std::int64_t>(h);
}

namespace {

ModelConfig model_from_json(const json& j) {
    ModelConfig m;
    m.name = j.at("name").get<std::string>();
    m.endpoint = j.at("endpoint").get<std::string>();
    if (j.contains("auth_env")) m.auth_env = j.at("auth_env").get<std::string>();
    if (j.contains("reasoning_effort"))
        m.reasoning_effort = j.at("reasoning_effort").get<std::string>();
    if (j.contains("max_output_tokens"))
        m.max_output_tokens = j.at("max_output_tokens").get<int>();
    if (j.contains("temperature")) m.temperature = j.at("temperature").get<double>();
    if (j.contains("timeout_seconds"))
        m.timeout_seconds = j.at("timeout_seconds").get<int>();
    if (j.contains("max_retries")) m.max_retries = j.at("max_retries").get<int>();
    if (j.contains("requests_per_minute"))
        m.requests_per_minute = j.at("requests_per_minute").get<double>();
    if (j.contains("backoff_base_ms"))
        m.backoff_base_ms = j.at("backoff_base_ms").get<int>();
    if (j.contains("reasoning_in_completion"))
        m.reasoning_in_completion = j.at("reasoning_in_completion").get<bool>();
    if (j.contains("strict_parse") && j.at("strict_parse").get<bool>())
        m.parse_policy = ParsePolicy::StrictJson;
    return m;
}

json model_to_json(const ModelConfig& m) {
    json j;
    j["name"] = m.name;
    j["endpoint"] = m.endpoint;
    j["auth_env"] = m.auth_env;
    j["reasoning_effort"] = m.reasoning_effort;
    j["max_output_tokens"] = m.max_output_tokens;
    j["temperature"] = m.temperature;
    j["timeout_seconds"] = m.timeout_seconds;
    j["max_retries"] = m.max_retries;
    j["requests_per_minute"] = m.requests_per_minute;
    j["backoff_base_ms"] = m.backoff_base_ms;
    j["reasoning_in_completion"] = m.reasoning_in_completion;
    j["strict_parse"] = m.parse_policy == ParsePolicy::StrictJson;
    return j;
}

}  // namespace

RunMatrix matrix_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("matrix: invalid JSON: ") + e.what());
    }
    try {
        RunMatrix m;
        for (const auto& mj : j.at("models")) m.models.push_back(model_from_json(mj));
        if (j.contains("shapes")) {
            for (const auto& s : j.at("shapes")) {
                if (!s.is_array() || s.size() != 2)
                    throw std::invalid_argument("matrix: each shape is [rows, cols]");
                m.shapes.emplace_back(s.at(0).get<int>(), s.at(1).get<int>());
            }
        } else {
            m.shapes = default_shapes();
        }
        if (j.contains("trials")) m.trials = j.at("trials").get<int>();
        if (j.contains("difficulty")) {
            auto d = difficulty_from_string(j.at("difficulty").get<std::string>());
            if (!d) throw std::invalid_argument("matrix: unknown difficulty");
            m.difficulty = *d;
        }
        if (j.contains("base_seed")) m.base_seed = j.at("base_seed").get<std::int64_t>();
        if (j.contains("parallelism")) m.parallelism = j.at("parallelism").get<int>();
        if (j.contains("transcript"))
            m.transcript_path = j.at("transcript").get<std::string>();
        return m;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("matrix: bad field: ") + e.what());
    }
}

std::string matrix_to_json(const RunMatrix& m) {
    json j;
    json models = json::array();
    for (const ModelConfig& mc : m.models) models.push_back(model_to_json(mc));
    j["models"] = std::move(models);
    json shapes = json::array();
    for (const auto& [r, c] : m.shapes) shapes.push_back(json::array({r, c}));
    j["shapes"] = std::move(shapes);
    j["trials"] = m.trials;
    j["difficulty"] = std::string(to_string(m.difficulty));
    j["base_seed"] = m.base_seed;
    j["parallelism"] = m.parallelism;
    j["transcript"] = m.transcript_path;
    return j.dump(2) + "\n";
}

namespace {

class RateLimiter {
  public:
    explicit RateLimiter(double requests_per_minute) {
        if (requests_per_minute > 0.0)
            interval_ = std::chrono::duration<double>(60.0 / requests_per_minute);
    }

    void acquire() {
        if (interval_.count() <= 0.0) return;
        Clock::time_point slot;
        {
            std::lock_guard lock(mutex_);
            const auto now = Clock::now();
            next_ = std::max(next_, now);
            slot = next_;
            next_ += std::chrono::duration_cast<Clock::duration>(interval_);
        }
        std::this_thread::sleep_until(slot);
    }

  private:
    std::mutex mutex_;
    Clock::time_point next_ = Clock::now();
    std::chrono::duration<double> interval_{0.0};
};

}  // namespace

RunSummary run_matrix(const RunMatrix& matrix, bool dry_run) {
    if (matrix.models.empty())
        throw std::invalid_argument("run_matrix: at least one model required");
    if (matrix.trials < 1)
        throw std::invalid_argument("run_matrix: trials must be at least 1");
    if (matrix.transcript_path.empty())
        throw std::invalid_argument("run_matrix: transcript path required");
    const auto shapes = matrix.shapes.empty() ? default_shapes() : matrix.shapes;

    for (const ModelConfig& m : matrix.models) {
        if (dry_run && !is_builtin(m))
            throw std::invalid_argument("dry run allows builtin agents only, got: " +
                                        m.endpoint);
        if (!is_builtin(m) && !m.auth_env.empty() && !std::getenv(m.auth_env.c_str()))
            throw std::invalid_argument("credential environment variable not set: " +
                                        m.auth_env);
    }

    // One instance per (shape, trial), shared by every model.
    std::vector<PuzzleInstance> instances;
    instances.reserve(shapes.size() * static_cast<std::size_t>(matrix.trials));
    for (const auto& [rows, cols] : shapes)
        for (int trial = 0; trial < matrix.trials; ++trial) {
            GeneratorConfig cfg;
            cfg.rows = rows;
            cfg.cols = cols;
            cfg.difficulty = matrix.difficulty;
            cfg.seed = instance_seed(matrix.base_seed, rows, cols, trial);
            instances.push_back(generate(cfg).instance);
        }

    RunSummary summary;
    summary.total = static_cast<int>(matrix.models.size() * instances.size());

    std::set<std::string> done;
    if (std::filesystem::exists(matrix.transcript_path)) {
        for (const AttemptRecord& r : load_transcript(matrix.transcript_path))
            done.insert(r.model + "\t" + r.instance_id);
    }

    struct Task {
        const ModelConfig* model;
        const PuzzleInstance* instance;
        int trial;
    };
    std::vector<Task> tasks;
    for (const ModelConfig& m : matrix.models) {
        for (std::size_t i = 0; i < instances.size(); ++i) {
            if (done.count(m.name + "\t" + instances[i].id)) {
                ++summary.skipped;
                continue;
            }
            tasks.push_back({&m, &instances[i], static_cast<int>(i) % matrix.trials});
        }
    }

    std::ofstream out(matrix.transcript_path, std::ios::app | std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot open transcript for append: " +
                                 matrix.transcript_path);

    std::map<std::string, std::unique_ptr<RateLimiter>> limiters;
    for (const ModelConfig& m : matrix.models)
        limiters.emplace(m.name, std::make_unique<RateLimiter>(m.requests_per_minute));

    std::mutex write_mutex;
    std::atomic<std::size_t> next_task{0};

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next_task.fetch_add(1);
            if (i >= tasks.size()) return;
            const Task& task = tasks[i];
            AttemptRecord record;
            try {
                limiters.at(task.model->name)->acquire();
                auto agent = make_agent(*task.model);
                record = run_attempt(*task.model, *task.instance, *agent, task.trial);
            } catch (const std::exception& e) {
                record.model = task.model->name;
                record.instance_id = task.instance->id;
                record.rows = task.instance->grid.rows;
                record.cols = task.instance->grid.cols;
                record.problem_size = problem_size(*task.instance);
                record.seed = task.instance->seed;
                record.attempt_index = task.trial;
                record.response = std::string("internal error: ") + e.what();
                record.failure_code = kFailureTransport;
                record.effort_kind = kEffortKindLatency;
                record.timestamp = utc_timestamp_now();
            }
            // Whole-line append under one writer lock; concurrent attempts
            // never interleave partial records.
            std::lock_guard lock(write_mutex);
            out << record_to_json(record) << '\n';
            out.flush();
            ++summary.executed;
            if (record.success) ++summary.succeeded;
            if (!record.failure_code.empty()) {
                ++summary.failure_counts[record.failure_code];
                if (record.failure_code == kFailureTransport) ++summary.transport_failures;
            } else if (!record.valid) {
                for (const std::string& v : record.violations)
                    ++summary.failure_counts[v];
            }
        }
    };

    const int thread_count = std::max(
        1, std::min<int>(matrix.parallelism, static_cast<int>(tasks.size())));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    return summary;
}

}  // namespace tents
