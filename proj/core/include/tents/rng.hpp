#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace tents {

// All randomness in this project flows through these helpers. std::mt19937
// is specified bit-for-bit by the standard, but the standard distributions
// are not, so bounded draws, shuffles and gaussians are implemented here to
// keep seeded output identical across platforms and standard libraries.

/// One round of the splitmix64 output function.
std::uint64_t mix64(std::uint64_t x);

/// mt19937 seeded from both halves of a 64-bit value.
std::mt19937 seeded_rng(std::uint64_t seed);

/// Uniform draw from [0, n) by rejection sampling. n must be >= 1.
std::uint32_t uniform_below(std::mt19937& rng, std::uint32_t n);

/// Fisher-Yates shuffle driven by uniform_below.
template <typename T>
void shuffle_pinned(std::vector<T>& v, std::mt19937& rng) {
    for (std::size_t i = v.size(); i > 1; --i) {
        std::size_t j = uniform_below(rng, static_cast<std::uint32_t>(i));
        std::swap(v[i - 1], v[j]);
    }
}

/// Standard normal via Box-Muller.
double gaussian(std::mt19937& rng);

/// FNV-1a over bytes; used for stable string-derived seeds.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace tents
