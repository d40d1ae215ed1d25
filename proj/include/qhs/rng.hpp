#pragma once

#include <array>
#include <cstdint>

namespace qhs {

/// SplitMix64 (Vigna). Used to seed xoshiro streams and for cheap hashing.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

private:
    std::uint64_t state_;
};

/// xoshiro256** 1.0 (Blackman/Vigna), portable and reproducible across
/// platforms. Streams are derived from (seed, stream_id) so per-job
/// randomness does not depend on how many jobs a scenario holds.
class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed);

    static Xoshiro256ss stream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next();

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double();

    /// Uniform integer in [0, bound), bound > 0 (modulo reduction; bias is
    /// irrelevant at the bounds used here).
    std::uint64_t next_below(std::uint64_t bound);

    /// Standard normal via Box-Muller (deterministic, no internal caching).
    double next_normal();

private:
    std::array<std::uint64_t, 4> s_{};
};

} // namespace qhs
