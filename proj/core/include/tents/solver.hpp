#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "tents/grid.hpp"

namespace tents {

// Deduction rules. Easy tier: E1-E4 and T1. Tricky tier adds K1.
//   E1  cell with no orthogonally adjacent tree is grass
//   E2  line with exhausted tent quota: all unknowns are grass
//   E3  cells around a placed tent are grass
//   E4  line whose unknown runs can only just fit the remaining quota:
//       odd-length runs get tents at their alternating forced positions
//   T1  tree with no adjacent tent and a single possible tent cell
//   K1  depth-1 contradiction probe: hypothesise Tent then Grass on an
//       unknown cell, run the easy fixpoint, keep the survivor
enum class Rule { E1, E2, E3, E4, T1, K1 };

std::string_view to_string(Rule rule);

struct Deduction {
    Rule rule;
    Coord cell;
    CellState state;  // Tent or Grass

    bool operator==(const Deduction&) const = default;
};

enum class SolveStatus {
    Solved,
    Stuck,
    Contradiction,  // instance unsatisfiable from the top-level state
};

std::string_view to_string(SolveStatus status);

struct SolveResult {
    SolveStatus status = SolveStatus::Stuck;
    Grid grid;
    std::vector<Deduction> trace;       // in application order
    std::array<int, 6> rule_counts{};   // indexed by Rule
};

struct SolveOptions {
    // When set, rule order and scan order are shuffled every pass. The final
    // status and grid must not depend on this; tests exercise it.
    std::optional<std::uint64_t> schedule_seed;
};

/// Applies the tier's rules to fixpoint. Solved iff every cell is decided
/// and the result is a valid solution of the instance.
SolveResult solve_deductive(const PuzzleInstance& instance, Difficulty tier,
                            const SolveOptions& options = {});

enum class EnumStatus {
    Complete,         // search space exhausted
    LimitReached,     // stopped after `limit` solutions
    BudgetExhausted,  // node budget hit; result is inconclusive
};

struct EnumerationResult {
    EnumStatus status = EnumStatus::Complete;
    std::vector<Grid> solutions;  // Tree/Tent/Grass grids, sorted by tent coords
    std::int64_t nodes = 0;
};

/// Exhaustive backtracking over tent placements, row by row, pruning on
/// quotas and adjacency. Ground-truth oracle for uniqueness and validator
/// tests; intended for boards up to about 6x6.
EnumerationResult enumerate_solutions(const PuzzleInstance& instance, int limit,
                                      std::int64_t node_budget = 50'000'000);

enum class DifficultyClass {
    Easy,
    Tricky,
    UnsolvableByRules,
};

std::string_view to_string(DifficultyClass c);

/// Easy if the easy tier solves it; tricky if only the tricky tier does.
DifficultyClass classify_difficulty(const PuzzleInstance& instance);

}  // namespace tents
