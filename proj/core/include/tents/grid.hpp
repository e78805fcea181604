#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tents {

// Cell encoding is part of the wire format and fixed forever.
enum class CellState : std::uint8_t {
    Empty = 0,
    Tree = 1,
    Tent = 2,
    Grass = 3,
};

struct Coord {
    int row = 0;
    int col = 0;
    auto operator<=>(const Coord&) const = default;
};

enum class Difficulty {
    Easy,
    Tricky,
};

std::string_view to_string(Difficulty d);
std::optional<Difficulty> difficulty_from_string(std::string_view s);

/// Rectangular board, row-major storage. (row, col) order everywhere.
struct Grid {
    int rows = 0;
    int cols = 0;
    std::vector<CellState> cells;

    Grid() = default;
    Grid(int rows_, int cols_, CellState fill = CellState::Empty);

    bool in_bounds(int r, int c) const {
        return r >= 0 && r < rows && c >= 0 && c < cols;
    }
    std::size_t index(int r, int c) const;  // throws std::out_of_range
    CellState at(int r, int c) const { return cells[index(r, c)]; }
    void set(int r, int c, CellState s) { cells[index(r, c)] = s; }

    bool operator==(const Grid&) const = default;
};

enum class NeighborMode {
    Orthogonal,
    All8,
};

/// In-bounds neighbors of (r, c), sorted row-major.
/// (r, c) itself must be in bounds; anything else is a caller bug.
std::vector<Coord> neighbors(int r, int c, NeighborMode mode, int rows, int cols);

struct Constraints {
    std::vector<int> row_counts;
    std::vector<int> col_counts;

    bool operator==(const Constraints&) const = default;
};

/// An unsolved puzzle: grid holds Empty/Tree cells only.
struct PuzzleInstance {
    Grid grid;
    Constraints constraints;
    std::string id;  // content hash over (rows, cols, cells, constraints)
    Difficulty difficulty = Difficulty::Easy;
    std::int64_t seed = 0;
};

/// Builds an instance, checking the structural invariants:
/// cells are Empty/Tree only, constraint lengths match, per-line counts do
/// not exceed ceil(len/2), and sum(row) == sum(col) == number of trees.
/// Throws std::invalid_argument on violation. Computes the content id.
PuzzleInstance make_instance(Grid grid, Constraints constraints,
                             Difficulty difficulty = Difficulty::Easy,
                             std::int64_t seed = 0);

/// rows * cols, the complexity axis for all analysis.
std::int64_t problem_size(const PuzzleInstance& instance);

/// Tent count per row and per column.
std::pair<std::vector<int>, std::vector<int>> tent_counts(const Grid& grid);

std::vector<Coord> find_cells(const Grid& grid, CellState state);

/// FNV-1a content hash of (rows, cols, cells, constraints), as 16 hex digits.
/// Stable across platforms and runs; used as the join key in transcripts.
std::string content_hash(const Grid& grid, const Constraints& constraints);

}  // namespace tents
