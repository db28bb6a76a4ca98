#pragma once

#include <cmath>
#include <cstdint>

namespace pcclone {

// splitmix64 (Steele, Lea, Flood 2014).  Chosen for portability and trivially
// splittable substreams: every (seed, stream) pair maps to an independent
// generator through one extra mixing round, so sample batches can be assigned
// fixed substreams regardless of how work is divided.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform double in [0,1), 53-bit resolution
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

// Independent substream for (seed, stream index); used to keep batch results
// invariant under re-batching.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 mixer(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    return SplitMix64(mixer.next());
}

// Standard normal via Box-Muller; consumes exactly two uniforms per call so
// the draw sequence stays reproducible across platforms.
inline double standard_normal(SplitMix64& g) {
    double u1 = g.uniform01();
    double u2 = g.uniform01();
    // guard u1 = 0
    while (u1 <= 0.0) u1 = g.uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
}

inline constexpr const char* kRngName = "splitmix64+boxmuller";

}  // namespace pcclone
