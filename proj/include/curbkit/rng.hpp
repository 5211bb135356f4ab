#pragma once

// Deterministic randomness helpers. The standard distributions are not
// pinned down by the standard, so golden files and cross-run reproducibility
// use these explicit mappings over a fixed engine instead.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace curbkit {

// 53-bit mantissa-exact draw from [0, 1).
inline double uniform53(std::mt19937_64& rng) {
    return double(rng() >> 11) * 0x1.0p-53;
}

struct NormalPair {
    double first;
    double second;
};

// One standard normal pair from two uniforms via the trigonometric
// transform. The first uniform is shifted into (0, 1] to keep the log finite.
inline NormalPair normal_pair(std::mt19937_64& rng) {
    const double u1 = (double(rng() >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = uniform53(rng);
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

// Hash a (seed, index) pair into a fresh engine seed, so each instance in a
// batch gets its own stream regardless of how much earlier instances drew.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace curbkit
