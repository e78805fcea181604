#include "tents/codec.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

#include "json.hpp"

namespace tents {

namespace {

// Fixed instruction preamble: rules, cell legend, output directive. The
// state block rendered by render_state follows directly after.
constexpr std::string_view kPromptPreamble =
    R"(You are a logic puzzle expert. You will be given a logic puzzle to solve. Here is a description of the puzzle:
You have a grid of squares, some of which contain trees. Your aim is to place tents in some of the remaining squares, in such a way that the following conditions are met:
There are exactly as many tents as trees.
The tents and trees can be matched up in such a way that each tent is directly adjacent (horizontally or vertically, but not diagonally) to its own tree. However, a tent may be adjacent to other trees as well as its own.
No two tents are adjacent horizontally, vertically or diagonally.
The number of tents in each row, and in each column, matches the numbers given in the row or column constraints.
Grass indicates that there cannot be a tent in that position.
You receive an array representation of the puzzle state as a grid. Your task is to solve the puzzle by filling out the grid with the correct values. You need to solve the puzzle on your own, you cannot use any external resources or run any code. Once you have solved the puzzle, tell me the final answer without explanation. Return the final answer as a JSON array of arrays.
Here is the current state of the puzzle as a string of the internal state representation:
A 0 represents an empty cell, a 1 represents a tree, a 2 represents a tent, and a 3 represents a grass patch.
Tents puzzle state:
)";

void append_int_array(std::string& out, const std::vector<int>& values) {
    out += '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(values[i]);
    }
    out += ']';
}

}  // namespace

std::string render_state(const PuzzleInstance& instance) {
    const Grid& g = instance.grid;
    std::string out = "Current grid:\n";
    for (int r = 0; r < g.rows; ++r) {
        out += r == 0 ? "[[" : " [";
        for (int c = 0; c < g.cols; ++c) {
            if (c) out += ' ';
            out += std::to_string(static_cast<int>(g.at(r, c)));
        }
        out += r == g.rows - 1 ? "]]" : "]\n";
    }
    out += "\nThe column constraints are the following:\n";
    append_int_array(out, instance.constraints.col_counts);
    out += "\nThe row constraints are the following:\n";
    append_int_array(out, instance.constraints.row_counts);
    return out;
}

std::string build_prompt(const PuzzleInstance& instance) {
    return std::string(kPromptPreamble) + render_state(instance);
}

std::string_view to_string(ParseErrorCode code) {
    switch (code) {
        case ParseErrorCode::NoArrayFound: return "NO_ARRAY_FOUND";
        case ParseErrorCode::ShapeMismatch: return "SHAPE_MISMATCH";
        case ParseErrorCode::NonIntegerCell: return "NON_INTEGER_CELL";
    }
    return "?";
}

namespace {

struct ScannedArray {
    std::vector<std::vector<std::int64_t>> rows;
    bool non_integer = false;  // some numeric token was not a storable integer
    std::size_t end = 0;       // one past the closing bracket
};

struct Scanner {
    std::string_view text;
    std::size_t pos = 0;
    bool strict = false;

    void skip_ws() {
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    bool eat(char c) {
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    // Numeric token: sign/digit/dot/exponent characters with at least one
    // digit. Words and anything else fail the scan entirely.
    bool scan_number(std::int64_t& value, bool& non_integer) {
        std::size_t start = pos;
        bool any_digit = false;
        while (pos < text.size()) {
            char c = text[pos];
            bool numeric_char = std::isdigit(static_cast<unsigned char>(c)) ||
                                c == '+' || c == '-' || c == '.' || c == 'e' || c == 'E';
            if (strict)
                numeric_char = std::isdigit(static_cast<unsigned char>(c)) ||
                               c == '-' || c == '.' || c == 'e' || c == 'E' || c == '+';
            if (!numeric_char) break;
            if (std::isdigit(static_cast<unsigned char>(c))) any_digit = true;
            ++pos;
        }
        if (pos == start || !any_digit) return false;
        std::string_view token = text.substr(start, pos - start);
        std::string_view digits = token;
        if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (ec != std::errc() || ptr != digits.data() + digits.size()) {
            // Numeric but not a storable integer (float, exponent, overflow).
            non_integer = true;
            value = 0;
        }
        return true;
    }

    // row := '[' num ((',' | ws) num)* ']'
    bool scan_row(std::vector<std::int64_t>& row, bool& non_integer) {
        if (!eat('[')) return false;
        skip_ws();
        std::int64_t v = 0;
        if (!scan_number(v, non_integer)) return false;
        row.push_back(v);
        for (;;) {
            std::size_t before = pos;
            skip_ws();
            if (eat(']')) return true;
            bool had_comma = eat(',');
            if (had_comma) skip_ws();
            if (strict && !had_comma) return false;
            if (!strict && !had_comma && pos == before) return false;  // no separator
            if (!scan_number(v, non_integer)) return false;
            row.push_back(v);
        }
    }

    // array := '[' row ((',' | ws) row)* ']'
    bool scan_array(ScannedArray& out) {
        if (!eat('[')) return false;
        skip_ws();
        std::vector<std::int64_t> row;
        if (!scan_row(row, out.non_integer)) return false;
        out.rows.push_back(std::move(row));
        for (;;) {
            skip_ws();
            if (eat(']')) {
                out.end = pos;
                return true;
            }
            bool had_comma = eat(',');
            if (had_comma) skip_ws();
            if (strict && !had_comma) return false;
            row.clear();
            if (!scan_row(row, out.non_integer)) return false;
            out.rows.push_back(std::move(row));
        }
    }
};

}  // namespace

ParseOutcome parse_response(std::string_view text, int expected_rows,
                            int expected_cols, ParsePolicy policy) {
    // Reasoning traces often contain several grids; the final answer is the
    // last syntactically valid array-of-arrays.
    std::optional<ScannedArray> last;
    std::size_t i = 0;
    while ((i = text.find('[', i)) != std::string_view::npos) {
        Scanner s{text, i, policy == ParsePolicy::StrictJson};
        ScannedArray scanned;
        if (s.scan_array(scanned)) {
            last = std::move(scanned);
            i = last->end;
        } else {
            ++i;
        }
    }

    ParseOutcome outcome;
    if (!last) {
        outcome.error = ParseErrorCode::NoArrayFound;
        return outcome;
    }
    if (static_cast<int>(last->rows.size()) != expected_rows) {
        outcome.error = ParseErrorCode::ShapeMismatch;
        return outcome;
    }
    for (const auto& row : last->rows)
        if (static_cast<int>(row.size()) != expected_cols) {
            outcome.error = ParseErrorCode::ShapeMismatch;
            return outcome;
        }
    if (last->non_integer) {
        outcome.error = ParseErrorCode::NonIntegerCell;
        return outcome;
    }

    CandidateSolution candidate;
    candidate.rows = expected_rows;
    candidate.cols = expected_cols;
    candidate.cells.reserve(static_cast<std::size_t>(expected_rows) * expected_cols);
    for (const auto& row : last->rows)
        candidate.cells.insert(candidate.cells.end(), row.begin(), row.end());
    outcome.candidate = std::move(candidate);
    return outcome;
}

namespace {

using nlohmann::json;

json require(const json& j, const char* key) {
    if (!j.contains(key))
        throw std::invalid_argument(std::string("missing key: ") + key);
    return j.at(key);
}

}  // namespace

std::string instance_to_json(const PuzzleInstance& instance) {
    json j;
    j["rows"] = instance.grid.rows;
    j["cols"] = instance.grid.cols;
    json cells = json::array();
    for (CellState s : instance.grid.cells) cells.push_back(static_cast<int>(s));
    j["cells"] = std::move(cells);
    j["row_counts"] = instance.constraints.row_counts;
    j["col_counts"] = instance.constraints.col_counts;
    j["difficulty"] = std::string(to_string(instance.difficulty));
    j["seed"] = instance.seed;
    j["id"] = instance.id;
    return j.dump(2) + "\n";
}

PuzzleInstance instance_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("instance: invalid JSON: ") + e.what());
    }
    try {
        const int rows = require(j, "rows").get<int>();
        const int cols = require(j, "cols").get<int>();
        if (rows < 1 || cols < 1)
            throw std::invalid_argument("instance: dimensions must be positive");
        Grid grid(rows, cols, CellState::Empty);
        const auto cells = require(j, "cells").get<std::vector<int>>();
        if (cells.size() != grid.cells.size())
            throw std::invalid_argument("instance: cells length mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i] < 0 || cells[i] > 3)
                throw std::invalid_argument("instance: cell value out of range");
            grid.cells[i] = static_cast<CellState>(cells[i]);
        }
        Constraints constraints;
        constraints.row_counts = require(j, "row_counts").get<std::vector<int>>();
        constraints.col_counts = require(j, "col_counts").get<std::vector<int>>();

        Difficulty difficulty = Difficulty::Easy;
        if (j.contains("difficulty")) {
            auto d = difficulty_from_string(j.at("difficulty").get<std::string>());
            if (!d) throw std::invalid_argument("instance: unknown difficulty");
            difficulty = *d;
        }
        std::int64_t seed = j.contains("seed") ? j.at("seed").get<std::int64_t>() : 0;

        PuzzleInstance instance =
            make_instance(std::move(grid), std::move(constraints), difficulty, seed);
        if (j.contains("id") && j.at("id").get<std::string>() != instance.id)
            throw std::invalid_argument("instance: id does not match contents");
        return instance;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("instance: bad field: ") + e.what());
    }
}

std::string grid_to_json(const Grid& grid) {
    json j;
    j["rows"] = grid.rows;
    j["cols"] = grid.cols;
    json cells = json::array();
    for (CellState s : grid.cells) cells.push_back(static_cast<int>(s));
    j["cells"] = std::move(cells);
    return j.dump(2) + "\n";
}

Grid grid_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("grid: invalid JSON: ") + e.what());
    }
    try {
        Grid grid(require(j, "rows").get<int>(), require(j, "cols").get<int>(),
                  CellState::Empty);
        const auto cells = require(j, "cells").get<std::vector<int>>();
        if (cells.size() != grid.cells.size())
            throw std::invalid_argument("grid: cells length mismatch");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (cells[i] < 0 || cells[i] > 3)
                throw std::invalid_argument("grid: cell value out of range");
            grid.cells[i] = static_cast<CellState>(cells[i]);
        }
        return grid;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("grid: bad field: ") + e.what());
    }
}

}  // namespace tents
