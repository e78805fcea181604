#include <benchmark/benchmark.h>

#include "tents/generator.hpp"
#include "tents/solver.hpp"
#include "tents/validate.hpp"

namespace {

tents::GeneratedPuzzle puzzle_for(int n) {
    tents::GeneratorConfig cfg;
    cfg.rows = n;
    cfg.cols = n;
    cfg.seed = 7;
    return tents::generate(cfg);
}

void BM_SolveEasy(benchmark::State& state) {
    const auto puzzle = puzzle_for(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto result = tents::solve_deductive(puzzle.instance, tents::Difficulty::Easy);
        benchmark::DoNotOptimize(result.status);
    }
    state.SetComplexityN(state.range(0) * state.range(0));
}
BENCHMARK(BM_SolveEasy)->DenseRange(5, 20, 5)->Complexity();

void BM_Generate(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::int64_t seed = 0;
    for (auto _ : state) {
        tents::GeneratorConfig cfg;
        cfg.rows = n;
        cfg.cols = n;
        cfg.seed = seed++;
        benchmark::DoNotOptimize(tents::generate(cfg).instance.id);
    }
}
BENCHMARK(BM_Generate)->Arg(5)->Arg(10)->Arg(15);

void BM_Validate(benchmark::State& state) {
    const auto puzzle = puzzle_for(static_cast<int>(state.range(0)));
    const auto candidate = tents::CandidateSolution::from_grid(puzzle.solution);
    for (auto _ : state) {
        auto report = tents::validate(puzzle.instance, candidate);
        benchmark::DoNotOptimize(report.valid);
    }
}
BENCHMARK(BM_Validate)->Arg(10)->Arg(20);

void BM_EnumerateUnique(benchmark::State& state) {
    const auto puzzle = puzzle_for(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto result = tents::enumerate_solutions(puzzle.instance, 2);
        benchmark::DoNotOptimize(result.solutions.size());
    }
}
BENCHMARK(BM_EnumerateUnique)->Arg(4)->Arg(5)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
