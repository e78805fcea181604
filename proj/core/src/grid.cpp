#include "tents/grid.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

#include "tents/rng.hpp"

namespace tents {

std::string_view to_string(Difficulty d) {
    return d == Difficulty::Easy ? "easy" : "tricky";
}

std::optional<Difficulty> difficulty_from_string(std::string_view s) {
    if (s == "easy") return Difficulty::Easy;
    if (s == "tricky") return Difficulty::Tricky;
    return std::nullopt;
}

Grid::Grid(int rows_, int cols_, CellState fill) : rows(rows_), cols(cols_) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("grid dimensions must be at least 1x1");
    cells.assign(static_cast<std::size_t>(rows) * cols, fill);
}

std::size_t Grid::index(int r, int c) const {
    if (!in_bounds(r, c)) throw std::out_of_range("grid index out of bounds");
    return static_cast<std::size_t>(r) * cols + c;
}

std::vector<Coord> neighbors(int r, int c, NeighborMode mode, int rows, int cols) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
        throw std::out_of_range("neighbors: (r, c) out of bounds");
    static constexpr std::array<Coord, 8> all8 = {{
        {-1, -1}, {-1, 0}, {-1, 1}, {0, -1}, {0, 1}, {1, -1}, {1, 0}, {1, 1},
    }};
    std::vector<Coord> out;
    out.reserve(8);
    for (const auto& d : all8) {
        if (mode == NeighborMode::Orthogonal && d.row != 0 && d.col != 0) continue;
        int nr = r + d.row, nc = c + d.col;
        if (nr >= 0 && nr < rows && nc >= 0 && nc < cols) out.push_back({nr, nc});
    }
    return out;  // already row-major sorted by construction
}

std::pair<std::vector<int>, std::vector<int>> tent_counts(const Grid& grid) {
    std::vector<int> row_counts(grid.rows, 0), col_counts(grid.cols, 0);
    for (int r = 0; r < grid.rows; ++r)
        for (int c = 0; c < grid.cols; ++c)
            if (grid.at(r, c) == CellState::Tent) {
                ++row_counts[r];
                ++col_counts[c];
            }
    return {std::move(row_counts), std::move(col_counts)};
}

std::vector<Coord> find_cells(const Grid& grid, CellState state) {
    std::vector<Coord> out;
    for (int r = 0; r < grid.rows; ++r)
        for (int c = 0; c < grid.cols; ++c)
            if (grid.at(r, c) == state) out.push_back({r, c});
    return out;
}

namespace {

void hash_int(std::uint64_t& h, std::int64_t v) {
    for (int i = 0; i < 8; ++i) {
        h ^= static_cast<std::uint64_t>(v >> (8 * i)) & 0xffu;
        h *= 0x100000001b3ull;
    }
}

}  // namespace

std::string content_hash(const Grid& grid, const Constraints& constraints) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    hash_int(h, grid.rows);
    hash_int(h, grid.cols);
    for (CellState s : grid.cells) hash_int(h, static_cast<std::int64_t>(s));
    hash_int(h, 'R');
    for (int v : constraints.row_counts) hash_int(h, v);
    hash_int(h, 'C');
    for (int v : constraints.col_counts) hash_int(h, v);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

PuzzleInstance make_instance(Grid grid, Constraints constraints,
                             Difficulty difficulty, std::int64_t seed) {
    if (grid.rows < 1 || grid.cols < 1 ||
        grid.cells.size() != static_cast<std::size_t>(grid.rows) * grid.cols)
        throw std::invalid_argument("instance: malformed grid");
    int trees = 0;
    for (CellState s : grid.cells) {
        if (s == CellState::Tree) {
            ++trees;
        } else if (s != CellState::Empty) {
            throw std::invalid_argument("instance: cells must be Empty or Tree");
        }
    }
    if (constraints.row_counts.size() != static_cast<std::size_t>(grid.rows) ||
        constraints.col_counts.size() != static_cast<std::size_t>(grid.cols))
        throw std::invalid_argument("instance: constraint lengths must match the grid");

    // ceil(len/2) is the most non-adjacent tents a line can hold.
    const int row_cap = (grid.cols + 1) / 2, col_cap = (grid.rows + 1) / 2;
    long long row_sum = 0, col_sum = 0;
    for (int v : constraints.row_counts) {
        if (v < 0 || v > row_cap)
            throw std::invalid_argument("instance: row constraint out of range");
        row_sum += v;
    }
    for (int v : constraints.col_counts) {
        if (v < 0 || v > col_cap)
            throw std::invalid_argument("instance: column constraint out of range");
        col_sum += v;
    }
    if (row_sum != col_sum)
        throw std::invalid_argument("instance: row and column constraint sums differ");
    if (row_sum != trees)
        throw std::invalid_argument("instance: constraint sum must equal the tree count");

    PuzzleInstance inst;
    inst.id = content_hash(grid, constraints);
    inst.grid = std::move(grid);
    inst.constraints = std::move(constraints);
    inst.difficulty = difficulty;
    inst.seed = seed;
    return inst;
}

std::int64_t problem_size(const PuzzleInstance& instance) {
    return static_cast<std::int64_t>(instance.grid.rows) * instance.grid.cols;
}

}  // namespace tents
