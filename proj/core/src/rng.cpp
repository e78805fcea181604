#include "tents/rng.hpp"

#include <cmath>
#include <numbers>

namespace tents {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::mt19937 seeded_rng(std::uint64_t seed) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32)};
    return std::mt19937(seq);
}

std::uint32_t uniform_below(std::mt19937& rng, std::uint32_t n) {
    // Rejection sampling over the full 32-bit output keeps draws unbiased and
    // identical on every platform.
    const std::uint32_t limit = (0xffffffffu / n) * n;
    std::uint32_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

double gaussian(std::mt19937& rng) {
    // Box-Muller on two uniform draws in (0, 1].
    double u1 = (static_cast<double>(rng()) + 1.0) / 4294967296.0;
    double u2 = static_cast<double>(rng()) / 4294967296.0;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char b : bytes) {
        h ^= b;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace tents
