#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace scrolls {

/// Caps on intermediate expression size during elimination.
struct Limits {
    unsigned max_degree = 64;
    std::size_t max_bits = 4096;
};

/// Configuration shared by every operation that samples generic points.
///
/// Operations never keep an RNG across calls: each call derives its own
/// generator from `seed` and a fixed per-operation tag, so results depend only
/// on the inputs and the context.
struct Context {
    std::uint64_t seed = 0;
    unsigned samples = 3;
    Limits limits{};

    std::mt19937_64 rng(std::string_view tag, std::uint64_t salt = 0) const {
        std::uint64_t h = 1469598103934665603ULL; // FNV-1a
        for (unsigned char c : tag) {
            h ^= c;
            h *= 1099511628211ULL;
        }
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                          static_cast<std::uint32_t>(salt), static_cast<std::uint32_t>(salt >> 32)};
        return std::mt19937_64(seq);
    }
};

} // namespace scrolls
