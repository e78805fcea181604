#include "tents/validate.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace tents {

CandidateSolution CandidateSolution::from_grid(const Grid& grid) {
    CandidateSolution out;
    out.rows = grid.rows;
    out.cols = grid.cols;
    out.cells.reserve(grid.cells.size());
    for (CellState s : grid.cells) out.cells.push_back(static_cast<std::int64_t>(s));
    return out;
}

std::string to_string(const Violation& v) {
    switch (v.code) {
        case ViolationCode::DimMismatch: return "DIM_MISMATCH";
        case ViolationCode::BadCellValue: return "BAD_CELL_VALUE";
        case ViolationCode::TreeMutated: return "TREE_MUTATED";
        case ViolationCode::CountMismatch: return "COUNT_MISMATCH";
        case ViolationCode::AdjacentTents: return "ADJACENT_TENTS";
        case ViolationCode::RowConstraint:
            return "ROW_CONSTRAINT(" + std::to_string(v.index) + ")";
        case ViolationCode::ColConstraint:
            return "COL_CONSTRAINT(" + std::to_string(v.index) + ")";
        case ViolationCode::NoPerfectMatching: return "NO_PERFECT_MATCHING";
    }
    return "UNKNOWN";
}

std::vector<std::string> ValidationReport::violation_strings() const {
    std::vector<std::string> out;
    out.reserve(violations.size());
    for (const auto& v : violations) out.push_back(to_string(v));
    return out;
}

namespace {

// Kuhn's augmenting-path matching. Tent t may take tree r iff r is an
// orthogonal neighbor of t.
class TentTreeMatcher {
  public:
    TentTreeMatcher(const std::vector<Coord>& tents, const std::vector<Coord>& trees,
                    int rows, int cols) {
        adjacency_.resize(tents.size());
        std::vector<int> tree_at(static_cast<std::size_t>(rows) * cols, -1);
        for (std::size_t j = 0; j < trees.size(); ++j)
            tree_at[static_cast<std::size_t>(trees[j].row) * cols + trees[j].col] =
                static_cast<int>(j);
        for (std::size_t i = 0; i < tents.size(); ++i)
            for (const Coord& n :
                 neighbors(tents[i].row, tents[i].col, NeighborMode::Orthogonal, rows, cols)) {
                int j = tree_at[static_cast<std::size_t>(n.row) * cols + n.col];
                if (j >= 0) adjacency_[i].push_back(j);
            }
        match_of_tree_.assign(trees.size(), -1);
    }

    int run() {
        int matched = 0;
        for (std::size_t i = 0; i < adjacency_.size(); ++i) {
            visited_.assign(match_of_tree_.size(), false);
            if (augment(static_cast<int>(i))) ++matched;
        }
        return matched;
    }

  private:
    bool augment(int tent) {
        for (int tree : adjacency_[tent]) {
            if (visited_[tree]) continue;
            visited_[tree] = true;
            if (match_of_tree_[tree] < 0 || augment(match_of_tree_[tree])) {
                match_of_tree_[tree] = tent;
                return true;
            }
        }
        return false;
    }

    std::vector<std::vector<int>> adjacency_;
    std::vector<int> match_of_tree_;
    std::vector<bool> visited_;
};

void check_coords(const std::vector<Coord>& coords, int rows, int cols, const char* what) {
    std::set<Coord> seen;
    for (const Coord& p : coords) {
        if (p.row < 0 || p.row >= rows || p.col < 0 || p.col >= cols)
            throw std::invalid_argument(std::string("max_matching: ") + what +
                                        " coordinate out of bounds");
        if (!seen.insert(p).second)
            throw std::invalid_argument(std::string("max_matching: duplicate ") + what +
                                        " coordinate");
    }
}

}  // namespace

int max_matching(const std::vector<Coord>& tents, const std::vector<Coord>& trees,
                 int rows, int cols) {
    check_coords(tents, rows, cols, "tent");
    check_coords(trees, rows, cols, "tree");
    return TentTreeMatcher(tents, trees, rows, cols).run();
}

ValidationReport validate(const PuzzleInstance& instance,
                          const CandidateSolution& candidate) {
    ValidationReport report;
    auto add = [&report](ViolationCode code, int index = -1) {
        report.violations.push_back({code, index});
    };

    const Grid& g = instance.grid;
    if (candidate.rows != g.rows || candidate.cols != g.cols) {
        // Cell-level checks are meaningless against the wrong shape.
        add(ViolationCode::DimMismatch);
        report.valid = false;
        return report;
    }

    bool bad_value = false, tree_mutated = false;
    std::vector<Coord> tents, trees;
    for (int r = 0; r < g.rows; ++r) {
        for (int c = 0; c < g.cols; ++c) {
            std::int64_t v = candidate.at(r, c);
            if (v < 0 || v > 3) bad_value = true;
            const bool instance_tree = g.at(r, c) == CellState::Tree;
            const bool candidate_tree = v == static_cast<std::int64_t>(CellState::Tree);
            if (instance_tree != candidate_tree) tree_mutated = true;
            if (candidate_tree) trees.push_back({r, c});
            if (v == static_cast<std::int64_t>(CellState::Tent)) tents.push_back({r, c});
        }
    }
    if (bad_value) add(ViolationCode::BadCellValue);
    if (tree_mutated) add(ViolationCode::TreeMutated);
    if (tents.size() != trees.size()) add(ViolationCode::CountMismatch);

    bool adjacent = false;
    for (const Coord& t : tents) {
        for (const Coord& n : neighbors(t.row, t.col, NeighborMode::All8, g.rows, g.cols)) {
            if (candidate.at(n.row, n.col) == static_cast<std::int64_t>(CellState::Tent)) {
                adjacent = true;
                break;
            }
        }
        if (adjacent) break;
    }
    if (adjacent) add(ViolationCode::AdjacentTents);

    auto [row_counts, col_counts] = [&] {
        std::vector<int> rc(g.rows, 0), cc(g.cols, 0);
        for (const Coord& t : tents) {
            ++rc[t.row];
            ++cc[t.col];
        }
        return std::pair(std::move(rc), std::move(cc));
    }();
    for (int r = 0; r < g.rows; ++r)
        if (row_counts[r] != instance.constraints.row_counts[r])
            add(ViolationCode::RowConstraint, r);
    for (int c = 0; c < g.cols; ++c)
        if (col_counts[c] != instance.constraints.col_counts[c])
            add(ViolationCode::ColConstraint, c);

    const int matched = max_matching(tents, trees, g.rows, g.cols);
    if (matched != static_cast<int>(tents.size()) ||
        matched != static_cast<int>(trees.size()))
        add(ViolationCode::NoPerfectMatching);

    report.valid = report.violations.empty();
    return report;
}

}  // namespace tents
