#include "tents/solver.hpp"

#include <algorithm>
#include <numeric>

#include "tents/rng.hpp"
#include "tents/validate.hpp"

namespace tents {

std::string_view to_string(Rule rule) {
    switch (rule) {
        case Rule::E1: return "E1";
        case Rule::E2: return "E2";
        case Rule::E3: return "E3";
        case Rule::E4: return "E4";
        case Rule::T1: return "T1";
        case Rule::K1: return "K1";
    }
    return "?";
}

std::string_view to_string(SolveStatus status) {
    switch (status) {
        case SolveStatus::Solved: return "solved";
        case SolveStatus::Stuck: return "stuck";
        case SolveStatus::Contradiction: return "contradiction";
    }
    return "?";
}

std::string_view to_string(DifficultyClass c) {
    switch (c) {
        case DifficultyClass::Easy: return "easy";
        case DifficultyClass::Tricky: return "tricky";
        case DifficultyClass::UnsolvableByRules: return "unsolvable-by-rules";
    }
    return "?";
}

namespace {

constexpr int kOrthDr[] = {-1, 0, 0, 1};
constexpr int kOrthDc[] = {0, -1, 1, 0};

// Mutable solving state. Empty means "unknown"; trees never change.
struct Engine {
    const PuzzleInstance* inst;
    Grid g;
    std::vector<int> row_tents, col_tents;
    std::vector<Coord> trees;
    int empties = 0;
    bool contradiction = false;

    std::vector<Deduction>* trace = nullptr;
    std::array<int, 6>* rule_counts = nullptr;

    explicit Engine(const PuzzleInstance& instance)
        : inst(&instance), g(instance.grid) {
        row_tents.assign(g.rows, 0);
        col_tents.assign(g.cols, 0);
        for (CellState s : g.cells)
            if (s == CellState::Empty) ++empties;
        trees = find_cells(g, CellState::Tree);
    }

    int row_remaining(int r) const {
        return inst->constraints.row_counts[r] - row_tents[r];
    }
    int col_remaining(int c) const {
        return inst->constraints.col_counts[c] - col_tents[c];
    }

    bool tent_adjacent(int r, int c) const {
        for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                int nr = r + dr, nc = c + dc;
                if (g.in_bounds(nr, nc) && g.at(nr, nc) == CellState::Tent) return true;
            }
        return false;
    }

    // Applies a deduced assignment. A deduction that cannot be applied
    // (occupied cell, quota already spent, tent next to a tent) certifies
    // that the current state has no completion.
    bool assign(int r, int c, CellState s, Rule rule) {
        if (contradiction) return false;
        CellState cur = g.at(r, c);
        if (cur == s) return false;
        if (cur != CellState::Empty) {
            contradiction = true;
            return false;
        }
        if (s == CellState::Tent) {
            if (row_remaining(r) <= 0 || col_remaining(c) <= 0 || tent_adjacent(r, c)) {
                contradiction = true;
                return false;
            }
            ++row_tents[r];
            ++col_tents[c];
        }
        g.set(r, c, s);
        --empties;
        if (trace) trace->push_back({rule, {r, c}, s});
        if (rule_counts) ++(*rule_counts)[static_cast<int>(rule)];
        return true;
    }
};

// Scan orders; identity unless a schedule seed asks for shuffling.
struct Schedule {
    std::mt19937* rng = nullptr;

    std::vector<int> order(int n) const {
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        if (rng) shuffle_pinned(idx, *rng);
        return idx;
    }
};

bool rule_e1(Engine& e, const Schedule& sched) {
    bool fired = false;
    for (int i : sched.order(e.g.rows * e.g.cols)) {
        if (e.contradiction) return fired;
        int r = i / e.g.cols, c = i % e.g.cols;
        if (e.g.at(r, c) != CellState::Empty) continue;
        bool has_tree = false;
        for (int k = 0; k < 4 && !has_tree; ++k) {
            int nr = r + kOrthDr[k], nc = c + kOrthDc[k];
            has_tree = e.g.in_bounds(nr, nc) && e.g.at(nr, nc) == CellState::Tree;
        }
        if (!has_tree) fired |= e.assign(r, c, CellState::Grass, Rule::E1);
    }
    return fired;
}

bool rule_e2(Engine& e, const Schedule& sched) {
    bool fired = false;
    for (int r : sched.order(e.g.rows)) {
        if (e.contradiction) return fired;
        if (e.row_remaining(r) != 0) continue;
        for (int c = 0; c < e.g.cols; ++c)
            if (e.g.at(r, c) == CellState::Empty)
                fired |= e.assign(r, c, CellState::Grass, Rule::E2);
    }
    for (int c : sched.order(e.g.cols)) {
        if (e.contradiction) return fired;
        if (e.col_remaining(c) != 0) continue;
        for (int r = 0; r < e.g.rows; ++r)
            if (e.g.at(r, c) == CellState::Empty)
                fired |= e.assign(r, c, CellState::Grass, Rule::E2);
    }
    return fired;
}

bool rule_e3(Engine& e, const Schedule& sched) {
    bool fired = false;
    for (int i : sched.order(e.g.rows * e.g.cols)) {
        if (e.contradiction) return fired;
        int r = i / e.g.cols, c = i % e.g.cols;
        if (e.g.at(r, c) != CellState::Tent) continue;
        for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc) {
                int nr = r + dr, nc = c + dc;
                if ((dr || dc) && e.g.in_bounds(nr, nc) &&
                    e.g.at(nr, nc) == CellState::Empty)
                    fired |= e.assign(nr, nc, CellState::Grass, Rule::E3);
            }
    }
    return fired;
}

// Unknown runs of one line, as (start offset, length) over `line`.
std::vector<std::pair<int, int>> unknown_runs(const Engine& e,
                                              const std::vector<Coord>& line) {
    std::vector<std::pair<int, int>> runs;
    int start = -1;
    for (int i = 0; i <= static_cast<int>(line.size()); ++i) {
        bool unknown = i < static_cast<int>(line.size()) &&
                       e.g.at(line[i].row, line[i].col) == CellState::Empty;
        if (unknown && start < 0) start = i;
        if (!unknown && start >= 0) {
            runs.emplace_back(start, i - start);
            start = -1;
        }
    }
    return runs;
}

// A run of length L holds at most ceil(L/2) tents. When the runs of a line
// can only just cover the remaining quota, the odd-length runs are forced at
// their alternating positions. A line whose runs cannot cover the quota has
// no completion.
bool rule_e4_line(Engine& e, const std::vector<Coord>& line, int remaining) {
    auto runs = unknown_runs(e, line);
    int capacity = 0;
    for (auto [start, len] : runs) capacity += (len + 1) / 2;
    if (capacity < remaining) {
        e.contradiction = true;
        return false;
    }
    if (remaining <= 0 || capacity != remaining) return false;
    bool fired = false;
    for (auto [start, len] : runs) {
        if (len % 2 == 0) continue;
        for (int i = start; i < start + len; i += 2)
            fired |= e.assign(line[i].row, line[i].col, CellState::Tent, Rule::E4);
        if (e.contradiction) return fired;
    }
    return fired;
}

bool rule_e4(Engine& e, const Schedule& sched) {
    bool fired = false;
    std::vector<Coord> line;
    for (int r : sched.order(e.g.rows)) {
        if (e.contradiction) return fired;
        line.clear();
        for (int c = 0; c < e.g.cols; ++c) line.push_back({r, c});
        fired |= rule_e4_line(e, line, e.row_remaining(r));
    }
    for (int c : sched.order(e.g.cols)) {
        if (e.contradiction) return fired;
        line.clear();
        for (int r = 0; r < e.g.rows; ++r) line.push_back({r, c});
        fired |= rule_e4_line(e, line, e.col_remaining(c));
    }
    return fired;
}

bool rule_t1(Engine& e, const Schedule& sched) {
    bool fired = false;
    auto order = sched.order(static_cast<int>(e.trees.size()));
    for (int i : order) {
        if (e.contradiction) return fired;
        const Coord tree = e.trees[static_cast<std::size_t>(i)];
        bool has_tent = false;
        Coord candidate{};
        int candidates = 0;
        for (int k = 0; k < 4; ++k) {
            int nr = tree.row + kOrthDr[k], nc = tree.col + kOrthDc[k];
            if (!e.g.in_bounds(nr, nc)) continue;
            CellState s = e.g.at(nr, nc);
            if (s == CellState::Tent) has_tent = true;
            if (s == CellState::Empty) {
                candidate = {nr, nc};
                ++candidates;
            }
        }
        if (has_tent) continue;
        if (candidates == 0) {
            // Tree starvation: no adjacent tent and nowhere to put one.
            e.contradiction = true;
            return fired;
        }
        if (candidates == 1)
            fired |= e.assign(candidate.row, candidate.col, CellState::Tent, Rule::T1);
    }
    return fired;
}

// Sound upper bounds on the tent-tree matching. Placed tents must inject
// into adjacent trees; trees must inject into distinct adjacent cells that
// could still hold a tent.
void check_matching_bounds(Engine& e) {
    if (e.contradiction) return;
    auto tents = find_cells(e.g, CellState::Tent);
    if (max_matching(tents, e.trees, e.g.rows, e.g.cols) <
        static_cast<int>(tents.size())) {
        e.contradiction = true;
        return;
    }
    std::vector<Coord> possible;
    for (int r = 0; r < e.g.rows; ++r)
        for (int c = 0; c < e.g.cols; ++c) {
            CellState s = e.g.at(r, c);
            if (s == CellState::Tent || s == CellState::Empty) possible.push_back({r, c});
        }
    if (max_matching(e.trees, possible, e.g.rows, e.g.cols) <
        static_cast<int>(e.trees.size()))
        e.contradiction = true;
}

// A completed board that fails validation certifies the state had no
// completion (every completion would have to equal it).
void check_filled_board(Engine& e) {
    if (e.contradiction || e.empties > 0) return;
    if (!validate(*e.inst, CandidateSolution::from_grid(e.g)).valid)
        e.contradiction = true;
}

void easy_fixpoint(Engine& e, std::mt19937* schedule_rng) {
    using RuleFn = bool (*)(Engine&, const Schedule&);
    std::vector<RuleFn> rules = {rule_e1, rule_e2, rule_e3, rule_e4, rule_t1};
    Schedule sched{schedule_rng};
    for (;;) {
        if (e.contradiction) return;
        if (schedule_rng) shuffle_pinned(rules, *schedule_rng);
        bool fired = false;
        for (RuleFn rule : rules) {
            fired |= rule(e, sched);
            if (e.contradiction) return;
        }
        if (!fired) break;
    }
    check_matching_bounds(e);
    check_filled_board(e);
}

bool probe_contradicts(const Engine& base, int r, int c, CellState hypothesis,
                       std::mt19937* schedule_rng) {
    Engine probe = base;
    probe.trace = nullptr;
    probe.rule_counts = nullptr;
    probe.assign(r, c, hypothesis, Rule::K1);
    easy_fixpoint(probe, schedule_rng);
    return probe.contradiction;
}

void tricky_fixpoint(Engine& e, std::mt19937* schedule_rng) {
    easy_fixpoint(e, schedule_rng);
    while (!e.contradiction && e.empties > 0) {
        bool progress = false;
        Schedule sched{schedule_rng};
        for (int i : sched.order(e.g.rows * e.g.cols)) {
            int r = i / e.g.cols, c = i % e.g.cols;
            if (e.g.at(r, c) != CellState::Empty) continue;
            CellState deduced;
            if (probe_contradicts(e, r, c, CellState::Tent, schedule_rng))
                deduced = CellState::Grass;
            else if (probe_contradicts(e, r, c, CellState::Grass, schedule_rng))
                deduced = CellState::Tent;
            else
                continue;
            e.assign(r, c, deduced, Rule::K1);
            easy_fixpoint(e, schedule_rng);
            progress = true;
            if (e.contradiction || e.empties == 0) break;
        }
        if (!progress) break;
    }
}

}  // namespace

SolveResult solve_deductive(const PuzzleInstance& instance, Difficulty tier,
                            const SolveOptions& options) {
    SolveResult result;
    Engine e(instance);
    e.trace = &result.trace;
    e.rule_counts = &result.rule_counts;

    std::mt19937 schedule_rng;
    std::mt19937* rng = nullptr;
    if (options.schedule_seed) {
        schedule_rng = seeded_rng(*options.schedule_seed);
        rng = &schedule_rng;
    }

    if (tier == Difficulty::Easy)
        easy_fixpoint(e, rng);
    else
        tricky_fixpoint(e, rng);

    result.grid = std::move(e.g);
    if (e.contradiction)
        result.status = SolveStatus::Contradiction;
    else if (e.empties > 0)
        result.status = SolveStatus::Stuck;
    else
        result.status = SolveStatus::Solved;
    return result;
}

namespace {

struct Enumerator {
    const PuzzleInstance& inst;
    Grid g;
    std::vector<int> row_tents, col_tents;
    int tree_count;
    int limit;
    std::int64_t budget, nodes = 0;
    bool aborted = false;
    std::vector<Grid> solutions;

    Enumerator(const PuzzleInstance& instance, int limit_, std::int64_t budget_)
        : inst(instance), g(instance.grid), limit(limit_), budget(budget_) {
        row_tents.assign(g.rows, 0);
        col_tents.assign(g.cols, 0);
        tree_count = static_cast<int>(find_cells(g, CellState::Tree).size());
    }

    bool done() const {
        return aborted || static_cast<int>(solutions.size()) >= limit;
    }

    bool tent_adjacent(int r, int c) const {
        for (int dr = -1; dr <= 1; ++dr)
            for (int dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                int nr = r + dr, nc = c + dc;
                if (g.in_bounds(nr, nc) && g.at(nr, nc) == CellState::Tent) return true;
            }
        return false;
    }

    void search(int r, int c) {
        if (done()) return;
        if (++nodes > budget) {
            aborted = true;
            return;
        }
        if (c == g.cols) {
            if (row_tents[r] != inst.constraints.row_counts[r]) return;
            search(r + 1, 0);
            return;
        }
        if (r == g.rows) {
            accept_leaf();
            return;
        }
        if (c == 0) {
            // Columns must still be fillable from the remaining rows.
            for (int j = 0; j < g.cols; ++j)
                if (inst.constraints.col_counts[j] - col_tents[j] > g.rows - r) return;
        }
        if (inst.constraints.row_counts[r] - row_tents[r] > g.cols - c) return;

        if (g.at(r, c) == CellState::Tree) {
            search(r, c + 1);
            return;
        }
        if (row_tents[r] < inst.constraints.row_counts[r] &&
            col_tents[c] < inst.constraints.col_counts[c] && !tent_adjacent(r, c)) {
            g.set(r, c, CellState::Tent);
            ++row_tents[r];
            ++col_tents[c];
            search(r, c + 1);
            g.set(r, c, CellState::Empty);
            --row_tents[r];
            --col_tents[c];
        }
        if (done()) return;
        g.set(r, c, CellState::Grass);
        search(r, c + 1);
        g.set(r, c, CellState::Empty);
    }

    void accept_leaf() {
        for (int j = 0; j < g.cols; ++j)
            if (col_tents[j] != inst.constraints.col_counts[j]) return;
        Grid canonical = g;
        for (CellState& s : canonical.cells)
            if (s == CellState::Empty) s = CellState::Grass;
        if (!validate(inst, CandidateSolution::from_grid(canonical)).valid) return;
        solutions.push_back(std::move(canonical));
    }
};

}  // namespace

EnumerationResult enumerate_solutions(const PuzzleInstance& instance, int limit,
                                      std::int64_t node_budget) {
    Enumerator en(instance, limit, node_budget);
    if (limit > 0) en.search(0, 0);
    EnumerationResult result;
    result.nodes = en.nodes;
    result.solutions = std::move(en.solutions);
    std::sort(result.solutions.begin(), result.solutions.end(),
              [](const Grid& a, const Grid& b) {
                  return find_cells(a, CellState::Tent) < find_cells(b, CellState::Tent);
              });
    if (en.aborted)
        result.status = EnumStatus::BudgetExhausted;
    else if (static_cast<int>(result.solutions.size()) >= limit)
        result.status = EnumStatus::LimitReached;
    else
        result.status = EnumStatus::Complete;
    return result;
}

DifficultyClass classify_difficulty(const PuzzleInstance& instance) {
    if (solve_deductive(instance, Difficulty::Easy).status == SolveStatus::Solved)
        return DifficultyClass::Easy;
    if (solve_deductive(instance, Difficulty::Tricky).status == SolveStatus::Solved)
        return DifficultyClass::Tricky;
    return DifficultyClass::UnsolvableByRules;
}

}  // namespace tents
