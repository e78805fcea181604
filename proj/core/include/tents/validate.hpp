#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tents/grid.hpp"

namespace tents {

/// A full grid as parsed from an agent answer. Cells are raw integers so
/// out-of-range values survive until the validator flags them.
struct CandidateSolution {
    int rows = 0;
    int cols = 0;
    std::vector<std::int64_t> cells;  // row-major

    static CandidateSolution from_grid(const Grid& grid);

    std::int64_t at(int r, int c) const {
        return cells[static_cast<std::size_t>(r) * cols + c];
    }
    bool operator==(const CandidateSolution&) const = default;
};

enum class ViolationCode {
    DimMismatch,
    BadCellValue,
    TreeMutated,
    CountMismatch,
    AdjacentTents,
    RowConstraint,
    ColConstraint,
    NoPerfectMatching,
};

struct Violation {
    ViolationCode code;
    int index = -1;  // row/col index for RowConstraint/ColConstraint

    bool operator==(const Violation&) const = default;
};

/// Wire form, e.g. "ADJACENT_TENTS" or "ROW_CONSTRAINT(2)". These strings
/// appear verbatim in transcript records.
std::string to_string(const Violation& v);

struct ValidationReport {
    bool valid = true;
    std::vector<Violation> violations;

    std::vector<std::string> violation_strings() const;
};

/// Checks a candidate against an instance: dimensions, cell values, tree
/// preservation, tent/tree count, tent-tent separation (all 8 directions),
/// row/column constraints, and the existence of a perfect tent-tree matching
/// over orthogonal adjacency. All failing checks are reported; a dimension
/// mismatch aborts the cell-level checks. Empty and Grass both mean
/// "no tent here".
ValidationReport validate(const PuzzleInstance& instance,
                          const CandidateSolution& candidate);

/// Size of a maximum bipartite matching where a tent may be paired with any
/// orthogonally adjacent tree. Coordinates must be in-bounds and
/// duplicate-free (throws std::invalid_argument otherwise). The result does
/// not depend on input order.
int max_matching(const std::vector<Coord>& tents, const std::vector<Coord>& trees,
                 int rows, int cols);

}  // namespace tents
