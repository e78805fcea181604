#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "support/helpers.hpp"
#include "tents/generator.hpp"
#include "tents/rng.hpp"
#include "tents/solver.hpp"
#include "tents/validate.hpp"

using namespace tents;

namespace {

std::vector<Coord> tents_of(const Grid& g) { return find_cells(g, CellState::Tent); }

// Every deduction must hold in every solution: a deduced tent is a tent
// there, a deduced grass cell is not.
void check_deductions_against(const std::vector<Deduction>& trace, const Grid& solution) {
    for (const Deduction& d : trace) {
        const CellState solved = solution.at(d.cell.row, d.cell.col);
        if (d.state == CellState::Tent)
            CHECK(solved == CellState::Tent);
        else
            CHECK(solved != CellState::Tent);
    }
}

}  // namespace

TEST_CASE("the 4x4 example solves on the easy tier to its unique solution") {
    auto result = solve_deductive(test::example_instance(), Difficulty::Easy);
    REQUIRE(result.status == SolveStatus::Solved);
    CHECK(tents_of(result.grid) == std::vector<Coord>{{0, 1}, {0, 3}, {3, 0}});
    CHECK(validate(test::example_instance(),
                   CandidateSolution::from_grid(result.grid))
              .valid);
}

TEST_CASE("all-zero constraints with no trees solve to an all-grass board") {
    auto inst = test::instance_of(3, 4, {}, {0, 0, 0}, {0, 0, 0, 0});
    auto result = solve_deductive(inst, Difficulty::Easy);
    REQUIRE(result.status == SolveStatus::Solved);
    for (CellState s : result.grid.cells) CHECK(s == CellState::Grass);
}

TEST_CASE("1x2 board with a single candidate cell") {
    auto inst = test::instance_of(1, 2, {{0, 0}}, {1}, {0, 1});
    auto result = solve_deductive(inst, Difficulty::Easy);
    REQUIRE(result.status == SolveStatus::Solved);
    CHECK(tents_of(result.grid) == std::vector<Coord>{{0, 1}});
}

TEST_CASE("an unsatisfiable instance reports a contradiction") {
    // Single cell, single tree: the tent has nowhere to go.
    auto inst = test::instance_of(1, 1, {{0, 0}}, {1}, {1});
    CHECK(solve_deductive(inst, Difficulty::Easy).status == SolveStatus::Contradiction);
    CHECK(solve_deductive(inst, Difficulty::Tricky).status == SolveStatus::Contradiction);
    CHECK(classify_difficulty(inst) == DifficultyClass::UnsolvableByRules);
    CHECK(enumerate_solutions(inst, 2).solutions.empty());
}

TEST_CASE("solver status strings are stable") {
    CHECK(to_string(SolveStatus::Solved) == "solved");
    CHECK(to_string(SolveStatus::Stuck) == "stuck");
    CHECK(to_string(SolveStatus::Contradiction) == "contradiction");
    CHECK(to_string(Rule::E4) == "E4");
    CHECK(to_string(Rule::K1) == "K1");
}

TEST_CASE("enumerate_solutions finds exactly one solution for the 4x4 example") {
    auto result = enumerate_solutions(test::example_instance(), 2);
    CHECK(result.status == EnumStatus::Complete);
    REQUIRE(result.solutions.size() == 1);
    CHECK(tents_of(result.solutions[0]) == std::vector<Coord>{{0, 1}, {0, 3}, {3, 0}});
}

TEST_CASE("enumerate_solutions trivial boards") {
    auto empty = test::instance_of(3, 3, {}, {0, 0, 0}, {0, 0, 0});
    auto result = enumerate_solutions(empty, 2);
    CHECK(result.status == EnumStatus::Complete);
    REQUIRE(result.solutions.size() == 1);
    CHECK(tents_of(result.solutions[0]).empty());

    // 1x3 line: the column constraints pin the tent to one of the two cells
    // orthogonal to the tree.
    auto line = test::instance_of(1, 3, {{0, 1}}, {1}, {1, 0, 0});
    auto line_result = enumerate_solutions(line, 2);
    CHECK(line_result.status == EnumStatus::Complete);
    REQUIRE(line_result.solutions.size() == 1);
    CHECK(tents_of(line_result.solutions[0]) == std::vector<Coord>{{0, 0}});
}

TEST_CASE("enumerate_solutions honors limit and budget") {
    // 2x3 with central trees: tents {(0,0),(1,2)} and {(0,2),(1,0)} both
    // satisfy rows [1,1] and cols [1,0,1], so exactly two solutions exist.
    auto multi = test::instance_of(2, 3, {{0, 1}, {1, 1}}, {1, 1}, {1, 0, 1});

    auto all = enumerate_solutions(multi, 100);
    REQUIRE(all.status == EnumStatus::Complete);
    REQUIRE(all.solutions.size() == 2);
    CHECK(tents_of(all.solutions[0]) == std::vector<Coord>{{0, 0}, {1, 2}});
    CHECK(tents_of(all.solutions[1]) == std::vector<Coord>{{0, 2}, {1, 0}});
    CHECK(std::is_sorted(all.solutions.begin(), all.solutions.end(),
                         [](const Grid& a, const Grid& b) {
                             return tents_of(a) < tents_of(b);
                         }));

    SUBCASE("limit truncates explicitly") {
        auto limited = enumerate_solutions(multi, 1);
        CHECK(limited.status == EnumStatus::LimitReached);
        CHECK(limited.solutions.size() == 1);
    }

    SUBCASE("budget exhaustion is explicit, never silent") {
        auto starved = enumerate_solutions(test::example_instance(), 2, 3);
        CHECK(starved.status == EnumStatus::BudgetExhausted);
    }

    SUBCASE("a non-unique instance is distinguishable from a unique one") {
        auto probe = enumerate_solutions(multi, 2);
        CHECK(probe.solutions.size() == 2);
        CHECK(probe.status == EnumStatus::LimitReached);
    }
}

TEST_CASE("classification: easy, tricky and unsolvable labels") {
    CHECK(classify_difficulty(test::example_instance()) == DifficultyClass::Easy);
    CHECK(classify_difficulty(test::instance_of(2, 2, {}, {0, 0}, {0, 0})) ==
          DifficultyClass::Easy);

    GeneratorConfig cfg;
    cfg.rows = 5;
    cfg.cols = 5;
    cfg.difficulty = Difficulty::Tricky;
    cfg.seed = 11;
    const auto tricky = generate(cfg);
    CHECK(classify_difficulty(tricky.instance) == DifficultyClass::Tricky);
    CHECK(solve_deductive(tricky.instance, Difficulty::Easy).status ==
          SolveStatus::Stuck);
    CHECK(solve_deductive(tricky.instance, Difficulty::Tricky).status ==
          SolveStatus::Solved);
}

TEST_CASE("deductions of both tiers are sound against the enumeration oracle") {
    auto rng = seeded_rng(5150);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 3 + static_cast<int>(uniform_below(rng, 4));  // 3..6
        GeneratorConfig cfg;
        cfg.rows = n;
        cfg.cols = n;
        cfg.seed = static_cast<std::int64_t>(uniform_below(rng, 1u << 30));
        const auto puzzle = generate(cfg);

        auto oracle = enumerate_solutions(puzzle.instance, 2);
        REQUIRE(oracle.status == EnumStatus::Complete);
        REQUIRE(oracle.solutions.size() == 1);
        const Grid& solution = oracle.solutions[0];

        for (Difficulty tier : {Difficulty::Easy, Difficulty::Tricky}) {
            auto result = solve_deductive(puzzle.instance, tier);
            CHECK(result.status == SolveStatus::Solved);
            check_deductions_against(result.trace, solution);
            CHECK(result.grid == solution);
        }
    }
}

TEST_CASE("tricky-tier deductions on easy-stuck instances stay sound") {
    GeneratorConfig cfg;
    cfg.rows = 5;
    cfg.cols = 5;
    cfg.difficulty = Difficulty::Tricky;
    for (std::int64_t seed = 0; seed < 8; ++seed) {
        cfg.seed = seed;
        const auto puzzle = generate(cfg);
        auto oracle = enumerate_solutions(puzzle.instance, 2);
        REQUIRE(oracle.solutions.size() == 1);

        auto easy = solve_deductive(puzzle.instance, Difficulty::Easy);
        CHECK(easy.status == SolveStatus::Stuck);
        check_deductions_against(easy.trace, oracle.solutions[0]);

        auto tricky = solve_deductive(puzzle.instance, Difficulty::Tricky);
        REQUIRE(tricky.status == SolveStatus::Solved);
        check_deductions_against(tricky.trace, oracle.solutions[0]);
        CHECK(tricky.rule_counts[static_cast<int>(Rule::K1)] > 0);
    }
}

TEST_CASE("the fixpoint does not depend on rule scheduling") {
    auto rng = seeded_rng(777);
    int checked = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + static_cast<int>(uniform_below(rng, 3));  // 3..5
        GeneratorConfig cfg;
        cfg.rows = n;
        cfg.cols = n;
        cfg.difficulty = trial % 4 == 0 ? Difficulty::Tricky : Difficulty::Easy;
        cfg.seed = static_cast<std::int64_t>(uniform_below(rng, 1u << 30));
        const auto puzzle = generate(cfg);
        const Difficulty tier = cfg.difficulty;

        const auto reference = solve_deductive(puzzle.instance, tier);
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            SolveOptions options;
            options.schedule_seed = seed;
            const auto shuffled = solve_deductive(puzzle.instance, tier, options);
            CHECK(shuffled.status == reference.status);
            CHECK(shuffled.grid == reference.grid);
        }
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("solved instances are unique per the oracle") {
    for (std::int64_t seed = 100; seed < 110; ++seed) {
        GeneratorConfig cfg;
        cfg.rows = 4;
        cfg.cols = 4;
        cfg.seed = seed;
        const auto puzzle = generate(cfg);
        if (solve_deductive(puzzle.instance, Difficulty::Easy).status ==
            SolveStatus::Solved) {
            auto oracle = enumerate_solutions(puzzle.instance, 2);
            CHECK(oracle.status == EnumStatus::Complete);
            CHECK(oracle.solutions.size() == 1);
        }
    }
}
