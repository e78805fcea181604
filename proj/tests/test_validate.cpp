#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "support/brute_force.hpp"
#include "support/helpers.hpp"
#include "tents/generator.hpp"
#include "tents/rng.hpp"
#include "tents/validate.hpp"

using namespace tents;

namespace {

CandidateSolution candidate_of(const PuzzleInstance& inst,
                               const std::vector<Coord>& tents,
                               CellState filler = CellState::Empty) {
    Grid g = inst.grid;
    for (CellState& s : g.cells)
        if (s == CellState::Empty) s = filler;
    for (const Coord& t : tents) g.set(t.row, t.col, CellState::Tent);
    return CandidateSolution::from_grid(g);
}

}  // namespace

TEST_CASE("diagonal adjacency does not satisfy the matching rule") {
    auto inst = test::instance_of(2, 2, {{0, 0}}, {0, 1}, {0, 1});
    auto report = validate(inst, candidate_of(inst, {{1, 1}}));
    CHECK_FALSE(report.valid);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0] == Violation{ViolationCode::NoPerfectMatching, -1});
}

TEST_CASE("the vacuous 1x1 instance accepts the all-empty candidate") {
    auto inst = test::instance_of(1, 1, {}, {0}, {0});
    CHECK(validate(inst, candidate_of(inst, {})).valid);
}

TEST_CASE("the 4x4 example accepts its unique solution") {
    auto inst = test::example_instance();
    SUBCASE("with explicit grass") {
        CHECK(validate(inst, candidate_of(inst, {{0, 1}, {0, 3}, {3, 0}},
                                          CellState::Grass))
                  .valid);
    }
    SUBCASE("with empty cells left as empty") {
        CHECK(validate(inst, candidate_of(inst, {{0, 1}, {0, 3}, {3, 0}})).valid);
    }
}

TEST_CASE("each check reports its own violation code") {
    auto inst = test::example_instance();

    SUBCASE("dimension mismatch aborts cell-level checks") {
        CandidateSolution wrong;
        wrong.rows = 3;
        wrong.cols = 4;
        wrong.cells.assign(12, 0);
        auto report = validate(inst, wrong);
        REQUIRE(report.violations.size() == 1);
        CHECK(report.violations[0].code == ViolationCode::DimMismatch);
    }

    SUBCASE("cell values outside 0..3") {
        auto cand = candidate_of(inst, {{0, 1}, {0, 3}, {3, 0}});
        cand.cells[3 * 4 + 3] = 7;
        auto report = validate(inst, cand);
        CHECK_FALSE(report.valid);
        CHECK(std::count(report.violations.begin(), report.violations.end(),
                         Violation{ViolationCode::BadCellValue, -1}) == 1);
    }

    SUBCASE("mutated trees") {
        auto cand = candidate_of(inst, {{0, 1}, {0, 3}, {3, 0}});
        cand.cells[0] = 1;  // extra tree at (0,0)
        auto report = validate(inst, cand);
        CHECK(std::count(report.violations.begin(), report.violations.end(),
                         Violation{ViolationCode::TreeMutated, -1}) == 1);
    }

    SUBCASE("missing tent breaks counts and line constraints") {
        auto report = validate(inst, candidate_of(inst, {{0, 1}, {3, 0}}));
        CHECK_FALSE(report.valid);
        auto strings = report.violation_strings();
        CHECK(std::count(strings.begin(), strings.end(), "COUNT_MISMATCH") == 1);
        CHECK(std::count(strings.begin(), strings.end(), "ROW_CONSTRAINT(0)") == 1);
        CHECK(std::count(strings.begin(), strings.end(), "COL_CONSTRAINT(3)") == 1);
    }

    SUBCASE("adjacent tents") {
        // 3x1 column with two trees; tents stacked vertically violate
        // adjacency no matter what the counts say.
        auto inst2 = test::instance_of(3, 1, {{2, 0}}, {1, 0, 0}, {1});
        auto cand = candidate_of(inst2, {{0, 0}, {1, 0}});
        auto strings = validate(inst2, cand).violation_strings();
        CHECK(std::count(strings.begin(), strings.end(), "ADJACENT_TENTS") == 1);
    }
}

TEST_CASE("max_matching basics") {
    CHECK(max_matching({}, {}, 4, 4) == 0);
    CHECK(max_matching({{0, 1}}, {{0, 2}}, 4, 4) == 1);
    // Two tents competing for one tree
    CHECK(max_matching({{0, 1}, {0, 3}}, {{0, 2}}, 4, 4) == 1);
}

TEST_CASE("max_matching rejects bad coordinate lists") {
    CHECK_THROWS_AS(max_matching({{0, 4}}, {}, 4, 4), std::invalid_argument);
    CHECK_THROWS_AS(max_matching({{0, 0}, {0, 0}}, {}, 4, 4), std::invalid_argument);
}

TEST_CASE("max_matching is order invariant and bounded by both sides") {
    auto rng = seeded_rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const int rows = 4, cols = 4;
        std::vector<Coord> cells;
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) cells.push_back({r, c});
        shuffle_pinned(cells, rng);
        std::vector<Coord> tents(cells.begin(), cells.begin() + 4);
        std::vector<Coord> trees(cells.begin() + 4, cells.begin() + 9);

        const int m = max_matching(tents, trees, rows, cols);
        CHECK(m <= 4);
        CHECK(m <= 5);

        auto tents2 = tents;
        auto trees2 = trees;
        shuffle_pinned(tents2, rng);
        shuffle_pinned(trees2, rng);
        CHECK(max_matching(tents2, trees2, rows, cols) == m);
    }
}

TEST_CASE("validate agrees with the brute-force definitional checker") {
    auto rng = seeded_rng(2024);
    int positives = 0, negatives = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const int n = 2 + static_cast<int>(uniform_below(rng, 4));  // 2..5
        GeneratorConfig cfg;
        cfg.rows = n;
        cfg.cols = n;
        cfg.density = 0.25;
        cfg.seed = static_cast<std::int64_t>(uniform_below(rng, 1u << 30));
        const auto puzzle = generate(cfg);

        CandidateSolution cand;
        switch (uniform_below(rng, 3)) {
            case 0:  // reference solution
                cand = CandidateSolution::from_grid(puzzle.solution);
                break;
            case 1: {  // perturbed solution
                cand = CandidateSolution::from_grid(puzzle.solution);
                auto idx = uniform_below(rng, static_cast<std::uint32_t>(cand.cells.size()));
                cand.cells[idx] = uniform_below(rng, 4);
                break;
            }
            default: {  // uniform random cells off-tree
                Grid g = puzzle.instance.grid;
                for (CellState& s : g.cells)
                    if (s != CellState::Tree)
                        s = static_cast<CellState>(uniform_below(rng, 4));
                cand = CandidateSolution::from_grid(g);
                break;
            }
        }

        const bool expected = test::brute_force_valid(puzzle.instance, cand);
        const auto report = validate(puzzle.instance, cand);
        CHECK(report.valid == expected);
        CHECK(report.valid == report.violations.empty());
        (expected ? positives : negatives)++;
    }
    // The sample must exercise both verdicts for the check to mean anything.
    CHECK(positives > 10);
    CHECK(negatives > 10);
}

TEST_CASE("generator reference solutions always validate") {
    for (std::int64_t seed = 0; seed < 10; ++seed) {
        GeneratorConfig cfg;
        cfg.rows = 5;
        cfg.cols = 5;
        cfg.seed = seed;
        const auto puzzle = generate(cfg);
        CHECK(validate(puzzle.instance, CandidateSolution::from_grid(puzzle.solution))
                  .valid);
    }
}
