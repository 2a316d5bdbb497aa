#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Seeded randomness helpers. std::mt19937_64 output is fully specified by the
// standard, but the <random> distributions are not; the scalings below keep
// every draw reproducible across standard library implementations.

namespace mlgl::rng {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Derived seed for substream `stream` of `seed`; substreams of one seed are
/// decorrelated by mixing before use.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream));
}

/// Independent generator for (seed, stream).
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
    return std::mt19937_64(stream_seed(seed, stream));
}

/// Uniform draw in [0, 1).
inline double uniform01(std::mt19937_64& g) {
    return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Uniform draw in [lo, hi).
inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return lo + (hi - lo) * uniform01(g);
}

/// Uniform integer in {0, ..., n-1}.
inline int uniform_int(std::mt19937_64& g, int n) {
    int v = static_cast<int>(uniform01(g) * n);
    return v < n ? v : n - 1;
}

/// Standard normal via Box-Muller (uses two uniforms per draw).
inline double normal01(std::mt19937_64& g) {
    double u1 = (static_cast<double>(g() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    double u2 = uniform01(g);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace mlgl::rng
