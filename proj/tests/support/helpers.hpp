#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "tents/grid.hpp"

namespace tents::test {

inline PuzzleInstance instance_of(int rows, int cols, const std::vector<Coord>& trees,
                                  std::vector<int> row_counts,
                                  std::vector<int> col_counts,
                                  Difficulty difficulty = Difficulty::Easy) {
    Grid grid(rows, cols, CellState::Empty);
    for (const Coord& t : trees) grid.set(t.row, t.col, CellState::Tree);
    return make_instance(std::move(grid),
                         Constraints{std::move(row_counts), std::move(col_counts)},
                         difficulty, 0);
}

// Appendix-style 4x4 example used across the suites: trees at (0,2), (1,1),
// (2,0); unique solution tents at (0,1), (0,3), (3,0).
inline PuzzleInstance example_instance() {
    return instance_of(4, 4, {{0, 2}, {1, 1}, {2, 0}}, {2, 0, 0, 1}, {1, 1, 0, 1});
}

struct TempDir {
    std::filesystem::path path;

    explicit TempDir(const std::string& tag) {
        auto base = std::filesystem::temp_directory_path();
        for (int i = 0; i < 10000; ++i) {
            auto candidate = base / (tag + "-" + std::to_string(::getpid()) + "-" +
                                     std::to_string(i));
            std::error_code ec;
            if (std::filesystem::create_directory(candidate, ec)) {
                path = candidate;
                return;
            }
        }
        throw std::runtime_error("cannot create temp dir");
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string file(const std::string& name) const { return (path / name).string(); }
};

inline void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CommandResult {
    int status = -1;
    std::string out;
};

// Runs a shell command, capturing stdout. Callers append their own stderr
// redirection when they care about it.
inline CommandResult run_command(const std::string& cmd) {
    CommandResult result;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (!pipe) return result;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = ::fread(buf.data(), 1, buf.size(), pipe)) > 0)
        result.out.append(buf.data(), n);
    const int rc = ::pclose(pipe);
    result.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return result;
}

}  // namespace tents::test
