#include "tents/generator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tents/rng.hpp"
#include "tents/solver.hpp"

namespace tents {

namespace {

constexpr int kOrthDr[] = {-1, 0, 0, 1};
constexpr int kOrthDc[] = {0, -1, 1, 0};

// Rounds of local repair per attempt. Rejecting whole boards works at small
// sizes but the chance that a random 20x20 layout is fully deducible is
// effectively zero; re-rolling just the undecided pocket converges fast.
constexpr int kRepairRounds = 25;

std::string describe(const GeneratorConfig& c) {
    std::ostringstream os;
    os << "rows=" << c.rows << " cols=" << c.cols
       << " difficulty=" << to_string(c.difficulty) << " density=" << c.density
       << " seed=" << c.seed << " max_attempts=" << c.max_attempts;
    return os.str();
}

bool tent_adjacent(const Grid& g, int r, int c) {
    for (int dr = -1; dr <= 1; ++dr)
        for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            int nr = r + dr, nc = c + dc;
            if (g.in_bounds(nr, nc) && g.at(nr, nc) == CellState::Tent) return true;
        }
    return false;
}

struct Layout {
    Grid board;                                  // Tent/Tree/Empty
    std::vector<std::pair<Coord, Coord>> pairs;  // (tent, its tree)

    explicit Layout(int rows, int cols) : board(rows, cols, CellState::Empty) {}

    int tent_count() const { return static_cast<int>(pairs.size()); }

    // Greedy placement over `cells` in the given order: a tent goes wherever
    // no neighbor holds one, then claims a tree in a uniformly chosen free
    // orthogonal cell. A tent with no room for a tree is dropped.
    void place(const std::vector<Coord>& cells, int want, std::mt19937& rng) {
        std::vector<Coord> placed;
        for (const Coord& p : cells) {
            if (static_cast<int>(placed.size()) == want) break;
            if (board.at(p.row, p.col) != CellState::Empty) continue;
            if (tent_adjacent(board, p.row, p.col)) continue;
            board.set(p.row, p.col, CellState::Tent);
            placed.push_back(p);
        }
        for (const Coord& t : placed) {
            std::vector<Coord> free;
            for (int k = 0; k < 4; ++k) {
                int nr = t.row + kOrthDr[k], nc = t.col + kOrthDc[k];
                if (board.in_bounds(nr, nc) && board.at(nr, nc) == CellState::Empty)
                    free.push_back({nr, nc});
            }
            if (free.empty()) {
                board.set(t.row, t.col, CellState::Empty);
            } else {
                const Coord& pick =
                    free[uniform_below(rng, static_cast<std::uint32_t>(free.size()))];
                board.set(pick.row, pick.col, CellState::Tree);
                pairs.emplace_back(t, pick);
            }
        }
    }

    // Removes every tent whose tent or tree touches the region (all 8
    // directions), freeing those cells for a re-roll.
    void clear_region(const std::vector<Coord>& region) {
        std::vector<char> hot(board.cells.size(), 0);
        for (const Coord& p : region) {
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    int nr = p.row + dr, nc = p.col + dc;
                    if (board.in_bounds(nr, nc))
                        hot[static_cast<std::size_t>(nr) * board.cols + nc] = 1;
                }
        }
        auto touches = [&](const Coord& p) {
            return hot[static_cast<std::size_t>(p.row) * board.cols + p.col] != 0;
        };
        std::vector<std::pair<Coord, Coord>> kept;
        for (const auto& [tent, tree] : pairs) {
            if (touches(tent) || touches(tree)) {
                board.set(tent.row, tent.col, CellState::Empty);
                board.set(tree.row, tree.col, CellState::Empty);
            } else {
                kept.emplace_back(tent, tree);
            }
        }
        pairs = std::move(kept);
    }

    PuzzleInstance to_instance(const GeneratorConfig& cfg) const {
        auto [row_counts, col_counts] = tent_counts(board);
        Grid instance_grid = board;
        for (CellState& s : instance_grid.cells)
            if (s == CellState::Tent) s = CellState::Empty;
        return make_instance(std::move(instance_grid),
                             Constraints{std::move(row_counts), std::move(col_counts)},
                             cfg.difficulty, cfg.seed);
    }

    Grid to_solution() const {
        Grid solution = board;
        for (CellState& s : solution.cells)
            if (s == CellState::Empty) s = CellState::Grass;
        return solution;
    }
};

std::vector<Coord> all_cells_shuffled(int rows, int cols, std::mt19937& rng) {
    std::vector<Coord> cells;
    cells.reserve(static_cast<std::size_t>(rows) * cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) cells.push_back({r, c});
    shuffle_pinned(cells, rng);
    return cells;
}

// One attempt: greedy layout, then up to kRepairRounds of pocket re-rolls
// until the solver grades the instance at exactly the requested difficulty.
std::optional<GeneratedPuzzle> attempt(const GeneratorConfig& cfg, std::mt19937& rng) {
    const int cell_count = cfg.rows * cfg.cols;
    // At least one tent; otherwise small boards at low densities could never
    // produce an instance at all.
    const int target =
        std::max(1, static_cast<int>(std::floor(cell_count * cfg.density)));

    Layout layout(cfg.rows, cfg.cols);
    layout.place(all_cells_shuffled(cfg.rows, cfg.cols, rng), target, rng);

    for (int round = 0; round <= kRepairRounds; ++round) {
        if (layout.tent_count() == 0) return std::nullopt;
        const PuzzleInstance instance = layout.to_instance(cfg);

        const auto easy = solve_deductive(instance, Difficulty::Easy);
        Grid stuck_grid;
        if (cfg.difficulty == Difficulty::Easy) {
            if (easy.status == SolveStatus::Solved)
                return GeneratedPuzzle{instance, layout.to_solution(), 0};
            stuck_grid = easy.grid;
        } else {
            if (easy.status == SolveStatus::Solved) return std::nullopt;
            const auto tricky = solve_deductive(instance, Difficulty::Tricky);
            if (tricky.status == SolveStatus::Solved)
                return GeneratedPuzzle{instance, layout.to_solution(), 0};
            stuck_grid = tricky.grid;
        }

        const auto pocket = find_cells(stuck_grid, CellState::Empty);
        if (pocket.empty()) return std::nullopt;  // contradiction, not repairable

        const int before = layout.tent_count();
        layout.clear_region(pocket);
        const int deleted = before - layout.tent_count();

        // Re-roll the freed pocket, aiming for the same tent count.
        std::vector<Coord> freed;
        for (const Coord& p : pocket)
            for (int dr = -1; dr <= 1; ++dr)
                for (int dc = -1; dc <= 1; ++dc) {
                    int nr = p.row + dr, nc = p.col + dc;
                    if (layout.board.in_bounds(nr, nc) &&
                        layout.board.at(nr, nc) == CellState::Empty)
                        freed.push_back({nr, nc});
                }
        std::sort(freed.begin(), freed.end());
        freed.erase(std::unique(freed.begin(), freed.end()), freed.end());
        shuffle_pinned(freed, rng);
        layout.place(freed, deleted, rng);
    }
    return std::nullopt;
}

}  // namespace

GeneratedPuzzle generate(const GeneratorConfig& cfg) {
    if (cfg.rows < 1 || cfg.cols < 1)
        throw std::invalid_argument("generate: rows and cols must be at least 1");
    if (!(cfg.density > 0.0) || cfg.density > 0.5)
        throw std::invalid_argument("generate: density must be in (0, 0.5]");
    if (cfg.max_attempts < 1)
        throw std::invalid_argument("generate: max_attempts must be at least 1");

    for (int k = 0; k < cfg.max_attempts; ++k) {
        // Attempt k draws from its own documented stream.
        std::mt19937 rng =
            seeded_rng(mix64(mix64(static_cast<std::uint64_t>(cfg.seed)) ^
                             static_cast<std::uint64_t>(k)));
        if (auto out = attempt(cfg, rng)) {
            out->attempts_used = k + 1;
            return std::move(*out);
        }
    }
    throw GenerationError("generation failed after max attempts: " + describe(cfg));
}

}  // namespace tents
