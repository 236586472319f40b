#pragma once

#include <cstdint>
#include <random>

namespace mango::rng {

// splitmix64 finalizer; used to derive independent sub-streams from one
// user-facing seed so that reordering draws in one stream never perturbs
// another.
inline std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::mt19937_64 derive(std::uint64_t seed, std::uint64_t stream) {
    return std::mt19937_64(mix(mix(seed) ^ stream));
}

inline std::mt19937_64 derive(std::uint64_t seed, std::uint64_t stream,
                              std::uint64_t index) {
    return std::mt19937_64(mix(mix(mix(seed) ^ stream) ^ index));
}

}  // namespace mango::rng
