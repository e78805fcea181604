#pragma once

#include <cstdint>
#include <stdexcept>

#include "tents/grid.hpp"

namespace tents {

struct GeneratorConfig {
    int rows = 0;
    int cols = 0;
    Difficulty difficulty = Difficulty::Easy;
    double density = 0.2;  // fraction of cells targeted as tents, (0, 0.5]
    std::int64_t seed = 0;
    int max_attempts = 1000;
};

struct GeneratedPuzzle {
    PuzzleInstance instance;
    Grid solution;  // reference tent layout (Tree/Tent/Grass)
    int attempts_used = 0;
};

class GenerationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Produces an instance with a uniquely determined tent placement at the
/// requested difficulty, plus its reference solution.
///
/// Each attempt: place tents greedily in a seeded random cell order (never
/// next to another tent), give every tent a tree in a uniformly chosen free
/// orthogonal neighbor (tents that cannot get one are dropped), derive the
/// constraints, strip the tents, and accept iff the deductive solver grades
/// the instance at exactly the requested difficulty. Attempt k draws from
/// mt19937 seeded with mix64(mix64(seed) ^ k), so a fixed config yields a
/// byte-identical puzzle everywhere.
///
/// Throws GenerationError (naming the config) when max_attempts is exhausted.
GeneratedPuzzle generate(const GeneratorConfig& config);

}  // namespace tents
