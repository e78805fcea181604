// tents: command-line front end for the puzzle engine, evaluation harness
// and scaling analysis.
//
// Exit codes are stable: 0 success, 1 invalid input or config, 2 generation
// failure, 3 transport failure threshold exceeded, 4 internal invariant
// violation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "tents/analysis.hpp"
#include "tents/codec.hpp"
#include "tents/generator.hpp"
#include "tents/harness.hpp"
#include "tents/solver.hpp"
#include "tents/validate.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidInput = 1;
constexpr int kExitGenerationFailure = 2;
constexpr int kExitTransportThreshold = 3;
constexpr int kExitInternalError = 4;

struct TransportThresholdExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
}

tents::Difficulty parse_difficulty_flag(const std::string& s) {
    auto d = tents::difficulty_from_string(s);
    if (!d) throw std::invalid_argument("difficulty must be easy or tricky: " + s);
    return *d;
}

int run(int argc, char** argv) {
    CLI::App app{"Tents puzzle engine, evaluation harness and scaling analysis"};
    app.require_subcommand(1);

    // generate
    auto* gen = app.add_subcommand("generate", "Generate a puzzle with a unique solution");
    int gen_rows = 0, gen_cols = 0, gen_max_attempts = 1000;
    double gen_density = 0.2;
    std::int64_t gen_seed = 0;
    std::string gen_difficulty = "easy", gen_out, gen_solution;
    gen->add_option("--rows", gen_rows, "Grid rows")->required();
    gen->add_option("--cols", gen_cols, "Grid columns")->required();
    gen->add_option("--difficulty", gen_difficulty, "easy or tricky");
    gen->add_option("--density", gen_density, "Target tent fraction (default 0.2)");
    gen->add_option("--seed", gen_seed, "Generation seed");
    gen->add_option("--max-attempts", gen_max_attempts, "Attempt cap");
    gen->add_option("--out", gen_out, "Instance JSON path (default stdout)");
    gen->add_option("--solution", gen_solution, "Also write the reference solution here");

    // solve
    auto* solve = app.add_subcommand("solve", "Run the deductive solver on an instance");
    std::string solve_in, solve_tier = "easy";
    bool solve_trace = false;
    solve->add_option("--in", solve_in, "Instance JSON path")->required();
    solve->add_option("--tier", solve_tier, "easy or tricky");
    solve->add_flag("--trace", solve_trace, "Print one line per deduction");

    // validate
    auto* val = app.add_subcommand("validate", "Validate a candidate answer");
    std::string val_instance, val_candidate;
    bool val_strict = false;
    val->add_option("--instance", val_instance, "Instance JSON path")->required();
    val->add_option("--candidate", val_candidate, "Candidate text path")->required();
    val->add_flag("--strict-json", val_strict, "Require comma-separated JSON arrays");

    // render
    auto* render = app.add_subcommand("render", "Print the textual puzzle state");
    std::string render_in;
    bool render_prompt = false;
    render->add_option("--in", render_in, "Instance JSON path")->required();
    render->add_flag("--prompt", render_prompt, "Print the full prompt instead");

    // eval
    auto* eval = app.add_subcommand("eval", "Run an evaluation matrix");
    std::string eval_config, eval_out;
    int eval_parallel = 0;
    bool eval_dry_run = false;
    double eval_fail_rate = 0.5;
    eval->add_option("--config", eval_config, "Matrix config JSON path")->required();
    eval->add_option("--out", eval_out, "Transcript path (overrides config)");
    eval->add_option("--parallel", eval_parallel, "Parallel attempts (overrides config)");
    eval->add_flag("--dry-run", eval_dry_run, "Builtin agents only; no network");
    eval->add_option("--max-transport-fail-rate", eval_fail_rate,
                     "Exit 3 when exceeded (default 0.5)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Turn a transcript into curves and fits");
    std::string analyze_in, analyze_out_dir, analyze_formats = "csv,svg";
    analyze->add_option("--in", analyze_in, "Transcript JSONL path")->required();
    analyze->add_option("--out-dir", analyze_out_dir, "Directory for CSV/SVG artifacts");
    analyze->add_option("--formats", analyze_formats, "Comma list of csv,svg");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help();
        return kExitInvalidInput;
    }

    if (gen->parsed()) {
        tents::GeneratorConfig cfg;
        cfg.rows = gen_rows;
        cfg.cols = gen_cols;
        cfg.difficulty = parse_difficulty_flag(gen_difficulty);
        cfg.density = gen_density;
        cfg.seed = gen_seed;
        cfg.max_attempts = gen_max_attempts;
        const tents::GeneratedPuzzle puzzle = tents::generate(cfg);
        const std::string text = tents::instance_to_json(puzzle.instance);
        if (gen_out.empty())
            std::cout << text;
        else
            write_file(gen_out, text);
        if (!gen_solution.empty())
            write_file(gen_solution, tents::grid_to_json(puzzle.solution));
        std::cerr << "generated " << puzzle.instance.id << " ("
                  << puzzle.attempts_used << " attempt(s))\n";
        return kExitOk;
    }

    if (solve->parsed()) {
        const auto instance = tents::instance_from_json(read_file(solve_in));
        const auto result =
            tents::solve_deductive(instance, parse_difficulty_flag(solve_tier));
        if (solve_trace) {
            for (const tents::Deduction& d : result.trace)
                std::cout << tents::to_string(d.rule) << " (" << d.cell.row << ","
                          << d.cell.col << ") "
                          << (d.state == tents::CellState::Tent ? "tent" : "grass")
                          << "\n";
        }
        nlohmann::json j;
        j["status"] = std::string(to_string(result.status));
        j["grid"] = nlohmann::json::parse(tents::grid_to_json(result.grid));
        nlohmann::json counts;
        for (int i = 0; i < 6; ++i)
            counts[std::string(tents::to_string(static_cast<tents::Rule>(i)))] =
                result.rule_counts[i];
        j["rule_counts"] = std::move(counts);
        j["deductions"] = result.trace.size();
        std::cout << j.dump() << "\n";
        return kExitOk;
    }

    if (val->parsed()) {
        const auto instance = tents::instance_from_json(read_file(val_instance));
        const std::string text = read_file(val_candidate);
        const auto outcome = tents::parse_response(
            text, instance.grid.rows, instance.grid.cols,
            val_strict ? tents::ParsePolicy::StrictJson : tents::ParsePolicy::Lenient);
        if (!outcome.ok()) {
            nlohmann::json j;
            j["error"] = std::string(to_string(*outcome.error));
            std::cout << j.dump() << "\n";
            std::cerr << "candidate did not parse: " << to_string(*outcome.error) << "\n";
            return kExitInvalidInput;
        }
        const auto report = tents::validate(instance, *outcome.candidate);
        nlohmann::json j;
        j["valid"] = report.valid;
        j["violations"] = report.violation_strings();
        std::cout << j.dump() << "\n";
        return kExitOk;
    }

    if (render->parsed()) {
        const auto instance = tents::instance_from_json(read_file(render_in));
        std::cout << (render_prompt ? tents::build_prompt(instance)
                                    : tents::render_state(instance))
                  << "\n";
        return kExitOk;
    }

    if (eval->parsed()) {
        tents::RunMatrix matrix = tents::matrix_from_json(read_file(eval_config));
        if (!eval_out.empty()) matrix.transcript_path = eval_out;
        if (eval_parallel > 0) matrix.parallelism = eval_parallel;
        const tents::RunSummary summary = tents::run_matrix(matrix, eval_dry_run);
        nlohmann::json j;
        j["total"] = summary.total;
        j["executed"] = summary.executed;
        j["skipped"] = summary.skipped;
        j["succeeded"] = summary.succeeded;
        j["transport_failures"] = summary.transport_failures;
        j["failure_counts"] = summary.failure_counts;
        std::cout << j.dump() << "\n";
        if (summary.executed > 0 &&
            static_cast<double>(summary.transport_failures) / summary.executed >
                eval_fail_rate)
            throw TransportThresholdExceeded("transport failures exceeded " +
                                             std::to_string(eval_fail_rate));
        return kExitOk;
    }

    if (analyze->parsed()) {
        const auto records = tents::load_transcript(analyze_in);
        const tents::ScalingReport report = tents::analyze(records);
        if (!analyze_out_dir.empty()) {
            unsigned formats = 0;
            std::stringstream ss(analyze_formats);
            std::string fmt;
            while (std::getline(ss, fmt, ',')) {
                if (fmt == "csv")
                    formats |= static_cast<unsigned>(tents::ExportFormat::Csv);
                else if (fmt == "svg")
                    formats |= static_cast<unsigned>(tents::ExportFormat::Svg);
                else if (!fmt.empty())
                    throw std::invalid_argument("unknown format: " + fmt);
            }
            const auto written = tents::export_report(
                report, analyze_out_dir, static_cast<tents::ExportFormat>(formats));
            for (const std::string& path : written) std::cerr << "wrote " << path << "\n";
        }
        std::cout << tents::report_to_json(report);
        return kExitOk;
    }

    return kExitInvalidInput;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const tents::GenerationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitGenerationFailure;
    } catch (const TransportThresholdExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitTransportThreshold;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (...) {
        std::cerr << "internal error: unknown exception\n";
        return kExitInternalError;
    }
}
