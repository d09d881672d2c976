#pragma once

#include <cstdint>

namespace als {

// splitmix64: the documented PRNG behind all pattern generation.
// Reported in run reports so results are reproducible across builds.
struct SplitMix64 {
    uint64_t state;

    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Value in [0, n); n > 0. Mild modulo bias is irrelevant here.
    uint64_t below(uint64_t n) { return next() % n; }

    // Independent stream for a substream index (per-PI streams etc.).
    static SplitMix64 stream(uint64_t seed, uint64_t index) {
        SplitMix64 mix(seed);
        mix.state ^= SplitMix64(index * 0x9e3779b97f4a7c15ULL + 0x85ebca77c2b2ae63ULL).next();
        return mix;
    }

    static constexpr const char* name() { return "splitmix64"; }
};

}  // namespace als
