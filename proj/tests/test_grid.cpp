#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "support/helpers.hpp"
#include "tents/grid.hpp"
#include "tents/rng.hpp"

using namespace tents;

TEST_CASE("problem_size is the product of the dimensions") {
    CHECK(problem_size(test::instance_of(4, 4, {}, {0, 0, 0, 0}, {0, 0, 0, 0})) == 16);
    CHECK(problem_size(test::instance_of(1, 1, {}, {0}, {0})) == 1);
    CHECK(problem_size(test::instance_of(6, 7, {}, std::vector<int>(6, 0),
                                         std::vector<int>(7, 0))) == 42);
}

TEST_CASE("neighbors of a corner") {
    auto orth = neighbors(0, 0, NeighborMode::Orthogonal, 4, 4);
    CHECK(orth == std::vector<Coord>{{0, 1}, {1, 0}});
    auto all8 = neighbors(0, 0, NeighborMode::All8, 4, 4);
    CHECK(all8 == std::vector<Coord>{{0, 1}, {1, 0}, {1, 1}});
}

TEST_CASE("neighbors of an interior cell") {
    auto all8 = neighbors(1, 1, NeighborMode::All8, 3, 3);
    CHECK(all8.size() == 8);
    auto orth = neighbors(1, 1, NeighborMode::Orthogonal, 3, 3);
    CHECK(orth.size() == 4);
}

TEST_CASE("neighbors rejects out-of-bounds cells") {
    CHECK_THROWS_AS(neighbors(4, 0, NeighborMode::All8, 4, 4), std::out_of_range);
    CHECK_THROWS_AS(neighbors(0, -1, NeighborMode::Orthogonal, 4, 4), std::out_of_range);
}

TEST_CASE("orthogonal neighbors are a subset of all8 and membership is symmetric") {
    const int rows = 5, cols = 4;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            auto orth = neighbors(r, c, NeighborMode::Orthogonal, rows, cols);
            auto all8 = neighbors(r, c, NeighborMode::All8, rows, cols);
            CHECK(orth.size() >= 2);
            CHECK(orth.size() <= 4);
            CHECK(all8.size() >= 3);
            CHECK(all8.size() <= 8);
            for (const Coord& n : orth)
                CHECK(std::count(all8.begin(), all8.end(), n) == 1);
            for (const Coord& n : all8) {
                auto back = neighbors(n.row, n.col, NeighborMode::All8, rows, cols);
                CHECK(std::count(back.begin(), back.end(), Coord{r, c}) == 1);
            }
        }
}

TEST_CASE("tent_counts counts tents per row and column") {
    Grid g(4, 4);
    g.set(0, 1, CellState::Tent);
    g.set(0, 3, CellState::Tent);
    g.set(3, 0, CellState::Tent);
    auto [rows, cols] = tent_counts(g);
    CHECK(rows == std::vector<int>{2, 0, 0, 1});
    CHECK(cols == std::vector<int>{1, 1, 0, 1});
}

TEST_CASE("tent_counts trivial cases") {
    auto [r0, c0] = tent_counts(Grid(3, 3));
    CHECK(r0 == std::vector<int>{0, 0, 0});
    CHECK(c0 == std::vector<int>{0, 0, 0});

    Grid one(1, 1);
    one.set(0, 0, CellState::Tent);
    auto [r1, c1] = tent_counts(one);
    CHECK(r1 == std::vector<int>{1});
    CHECK(c1 == std::vector<int>{1});
}

TEST_CASE("tent_counts sums match the total tent count on random grids") {
    auto rng = seeded_rng(123);
    for (int trial = 0; trial < 50; ++trial) {
        int rows = 1 + uniform_below(rng, 8), cols = 1 + uniform_below(rng, 8);
        Grid g(rows, cols);
        int tents = 0;
        for (CellState& s : g.cells) {
            s = static_cast<CellState>(uniform_below(rng, 4));
            if (s == CellState::Tent) ++tents;
        }
        auto [rc, cc] = tent_counts(g);
        int row_sum = 0, col_sum = 0;
        for (int v : rc) row_sum += v;
        for (int v : cc) col_sum += v;
        CHECK(row_sum == tents);
        CHECK(col_sum == tents);
    }
}

TEST_CASE("instance id is a stable content hash") {
    auto a = test::example_instance();
    auto b = test::example_instance();
    CHECK(a.id == b.id);
    CHECK(a.id.size() == 16);

    // Different difficulty labels share the id; content alone decides it.
    auto c = test::instance_of(4, 4, {{0, 2}, {1, 1}, {2, 0}}, {2, 0, 0, 1},
                               {1, 1, 0, 1}, Difficulty::Tricky);
    CHECK(c.id == a.id);

    auto d = test::instance_of(4, 4, {{0, 2}, {1, 1}, {2, 1}}, {2, 0, 0, 1},
                               {0, 2, 0, 1});
    CHECK(d.id != a.id);
}

TEST_CASE("make_instance enforces the structural invariants") {
    // Tent cell in an instance grid
    Grid bad(2, 2);
    bad.set(0, 0, CellState::Tent);
    CHECK_THROWS_AS(make_instance(bad, Constraints{{1, 0}, {1, 0}}),
                    std::invalid_argument);

    // Constraint sums that disagree with each other or with the tree count
    CHECK_THROWS_AS(test::instance_of(2, 2, {{0, 0}}, {1, 0}, {0, 0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(test::instance_of(2, 2, {}, {1, 0}, {1, 0}),
                    std::invalid_argument);

    // Per-line cap: ceil(len/2)
    CHECK_THROWS_AS(test::instance_of(1, 3, {{0, 1}}, {3}, {1, 1, 1}),
                    std::invalid_argument);

    // Wrong constraint lengths
    CHECK_THROWS_AS(make_instance(Grid(2, 2), Constraints{{0}, {0, 0}}),
                    std::invalid_argument);
}
