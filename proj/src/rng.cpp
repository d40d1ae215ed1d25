#include <qhs/rng.hpp>

#include <cmath>

namespace qhs {

namespace {

inline std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
}

Xoshiro256ss Xoshiro256ss::stream(std::uint64_t seed, std::uint64_t stream_id) {
    SplitMix64 sm(seed);
    const std::uint64_t base = sm.next();
    SplitMix64 mixer(base ^ (0x6a09e667f3bcc909ULL + stream_id * 0x9e3779b97f4a7c15ULL));
    Xoshiro256ss rng(0);
    for (auto& word : rng.s_) word = mixer.next();
    return rng;
}

std::uint64_t Xoshiro256ss::next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256ss::next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t Xoshiro256ss::next_below(std::uint64_t bound) {
    return next() % bound;
}

double Xoshiro256ss::next_normal() {
    // Box-Muller; u1 nudged away from 0 to keep log() finite.
    double u1 = next_double();
    const double u2 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    return r * std::cos(2.0 * 3.14159265358979323846 * u2);
}

} // namespace qhs
