#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "support/helpers.hpp"
#include "tents/codec.hpp"
#include "tents/generator.hpp"
#include "tents/solver.hpp"
#include "tents/validate.hpp"

using namespace tents;

TEST_CASE("identical configs produce byte-identical puzzles") {
    GeneratorConfig cfg;
    cfg.rows = 6;
    cfg.cols = 6;
    cfg.seed = 20240101;
    const auto a = generate(cfg);
    const auto b = generate(cfg);
    CHECK(instance_to_json(a.instance) == instance_to_json(b.instance));
    CHECK(a.solution == b.solution);
    CHECK(a.attempts_used == b.attempts_used);

    cfg.seed = 20240102;
    const auto c = generate(cfg);
    CHECK(instance_to_json(c.instance) != instance_to_json(a.instance));
}

TEST_CASE("emitted instances satisfy the counting invariants") {
    for (std::int64_t seed = 0; seed < 20; ++seed) {
        GeneratorConfig cfg;
        cfg.rows = 5;
        cfg.cols = 7;
        cfg.seed = seed;
        const auto puzzle = generate(cfg);

        const auto trees = find_cells(puzzle.instance.grid, CellState::Tree);
        const auto tents = find_cells(puzzle.solution, CellState::Tent);
        const int row_sum = std::accumulate(puzzle.instance.constraints.row_counts.begin(),
                                            puzzle.instance.constraints.row_counts.end(), 0);
        const int col_sum = std::accumulate(puzzle.instance.constraints.col_counts.begin(),
                                            puzzle.instance.constraints.col_counts.end(), 0);
        CHECK(row_sum == col_sum);
        CHECK(row_sum == static_cast<int>(trees.size()));
        CHECK(row_sum == static_cast<int>(tents.size()));
        CHECK(find_cells(puzzle.instance.grid, CellState::Tent).empty());
        CHECK(find_cells(puzzle.instance.grid, CellState::Grass).empty());
        CHECK(validate(puzzle.instance, CandidateSolution::from_grid(puzzle.solution))
                  .valid);
    }
}

TEST_CASE("2x2 at density 0.25 yields one tent and one tree") {
    GeneratorConfig cfg;
    cfg.rows = 2;
    cfg.cols = 2;
    cfg.density = 0.25;
    cfg.seed = 5;
    const auto puzzle = generate(cfg);
    CHECK(find_cells(puzzle.solution, CellState::Tent).size() == 1);
    CHECK(find_cells(puzzle.instance.grid, CellState::Tree).size() == 1);
    const int sum = std::accumulate(puzzle.instance.constraints.row_counts.begin(),
                                    puzzle.instance.constraints.row_counts.end(), 0);
    CHECK(sum == 1);
}

TEST_CASE("difficulty labels are faithful") {
    GeneratorConfig cfg;
    cfg.rows = 5;
    cfg.cols = 5;

    SUBCASE("easy") {
        for (std::int64_t seed = 0; seed < 10; ++seed) {
            cfg.seed = seed;
            cfg.difficulty = Difficulty::Easy;
            const auto puzzle = generate(cfg);
            CHECK(puzzle.instance.difficulty == Difficulty::Easy);
            CHECK(classify_difficulty(puzzle.instance) == DifficultyClass::Easy);
        }
    }
    SUBCASE("tricky requires easy-stuck and tricky-solved") {
        for (std::int64_t seed = 0; seed < 5; ++seed) {
            cfg.seed = seed;
            cfg.difficulty = Difficulty::Tricky;
            const auto puzzle = generate(cfg);
            CHECK(puzzle.instance.difficulty == Difficulty::Tricky);
            CHECK(classify_difficulty(puzzle.instance) == DifficultyClass::Tricky);
        }
    }
}

TEST_CASE("small generated instances are unique per the enumeration oracle") {
    for (int n = 2; n <= 6; ++n) {
        for (std::int64_t seed = 0; seed < 5; ++seed) {
            GeneratorConfig cfg;
            cfg.rows = n;
            cfg.cols = n;
            cfg.seed = seed;
            const auto puzzle = generate(cfg);
            const auto oracle = enumerate_solutions(puzzle.instance, 2);
            CHECK(oracle.status == EnumStatus::Complete);
            CHECK(oracle.solutions.size() == 1);
            CHECK(oracle.solutions[0] == puzzle.solution);
        }
    }
}

TEST_CASE("impossible configs fail loudly with the config in the message") {
    GeneratorConfig cfg;
    cfg.rows = 1;
    cfg.cols = 1;
    cfg.max_attempts = 10;
    try {
        generate(cfg);
        FAIL("expected GenerationError");
    } catch (const GenerationError& e) {
        CHECK(std::string(e.what()).find("rows=1 cols=1") != std::string::npos);
        CHECK(std::string(e.what()).find("max_attempts=10") != std::string::npos);
    }
}

TEST_CASE("config bounds are checked") {
    GeneratorConfig cfg;
    cfg.rows = 4;
    cfg.cols = 4;
    cfg.density = 0.0;
    CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
    cfg.density = 0.6;
    CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
    cfg.density = 0.2;
    cfg.rows = 0;
    CHECK_THROWS_AS(generate(cfg), std::invalid_argument);
}

TEST_CASE("attempt reseeding walks distinct streams") {
    // A config that cannot succeed on its first attempts still terminates
    // with different boards tried; observable through attempts_used > 1
    // somewhere in a seed sweep.
    bool saw_retry = false;
    for (std::int64_t seed = 0; seed < 30 && !saw_retry; ++seed) {
        GeneratorConfig cfg;
        cfg.rows = 5;
        cfg.cols = 5;
        cfg.difficulty = Difficulty::Tricky;
        cfg.seed = seed;
        saw_retry = generate(cfg).attempts_used > 1;
    }
    CHECK(saw_retry);
}
