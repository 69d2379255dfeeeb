#pragma once

#include <cstdint>
#include <random>

namespace ryd {

// Seed derivation for independent work items. Every randomized object in a
// run is produced by an mt19937_64 engine seeded with child_seed(master,
// stream, index), so results are reproducible for a given master seed and
// independent of scheduling or worker count.
//
// Mixing function (fixed, also documented in the README):
//   child_seed(m, s, i) = splitmix64(splitmix64(m + G*(s+1)) + G*(i+1))
// with G = 0x9E3779B97F4A7C15.

constexpr std::uint64_t kSeedGolden = 0x9E3779B97F4A7C15ULL;

inline std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

enum class SeedStream : std::uint64_t {
    QvCircuit = 0,
    BvSampler = 1,
};

inline std::uint64_t child_seed(std::uint64_t master, SeedStream stream, std::uint64_t index) {
    const auto s = static_cast<std::uint64_t>(stream);
    return splitmix64(splitmix64(master + kSeedGolden * (s + 1)) + kSeedGolden * (index + 1));
}

inline std::mt19937_64 make_engine(std::uint64_t master, SeedStream stream, std::uint64_t index) {
    return std::mt19937_64(child_seed(master, stream, index));
}

} // namespace ryd
