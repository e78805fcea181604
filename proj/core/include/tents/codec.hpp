#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "tents/grid.hpp"
#include "tents/validate.hpp"

namespace tents {

/// The textual puzzle state: "Current grid:", the bracketed digit grid, then
/// the column and row constraint lines. LF newlines, no trailing whitespace,
/// byte-for-byte stable.
std::string render_state(const PuzzleInstance& instance);

/// Fixed instruction preamble (rules, cell legend, output directive) followed
/// by render_state. The same template for every size and model.
std::string build_prompt(const PuzzleInstance& instance);

enum class ParseErrorCode {
    NoArrayFound,
    ShapeMismatch,
    NonIntegerCell,
};

std::string_view to_string(ParseErrorCode code);

/// Either a candidate grid or a parse error, never both.
struct ParseOutcome {
    std::optional<CandidateSolution> candidate;
    std::optional<ParseErrorCode> error;

    bool ok() const { return candidate.has_value(); }
};

enum class ParsePolicy {
    Lenient,     // accepts space- or comma-separated numerals inside brackets
    StrictJson,  // accepts comma-separated JSON arrays only
};

/// Scans arbitrary response text for top-level arrays-of-arrays of integers
/// (code fences and surrounding prose are fine) and picks the last one.
/// Dimensions are checked against the expected shape; cell values are kept
/// verbatim, including values outside 0..3, for the validator to judge.
ParseOutcome parse_response(std::string_view text, int expected_rows,
                            int expected_cols,
                            ParsePolicy policy = ParsePolicy::Lenient);

/// Canonical machine format: JSON object with keys rows, cols, cells (flat
/// row-major ints), row_counts, col_counts, difficulty, seed, id.
std::string instance_to_json(const PuzzleInstance& instance);

/// Parses the canonical format, recomputing and checking the content id when
/// one is present. Throws std::invalid_argument on malformed input.
PuzzleInstance instance_from_json(const std::string& text);

/// Plain JSON form of a grid, {rows, cols, cells}; used for solver output
/// and reference solutions.
std::string grid_to_json(const Grid& grid);
Grid grid_from_json(const std::string& text);

}  // namespace tents
