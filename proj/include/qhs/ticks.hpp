#pragma once

#include <cstdint>
#include <string>

namespace qhs {

/// Simulated time in integer milliseconds. Every duration and timestamp in
/// the system is a Tick; reports convert to seconds only at the formatting
/// boundary, so identical runs produce byte-identical output.
using Tick = std::int64_t;

struct Interval {
    Tick start{0};
    Tick end{0};

    Tick length() const { return end - start; }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.start == b.start && a.end == b.end;
    }
};

/// num/den rounded half-up; den > 0, num >= 0.
std::int64_t round_div(std::int64_t num, std::int64_t den);

/// base * num / den rounded up (linear-speedup scaling helper).
std::int64_t ceil_scale(std::int64_t base, std::int64_t num, std::int64_t den);

/// Milliseconds rendered as seconds with exactly 3 decimals ("22.000").
std::string format_seconds(Tick ms);

/// num/den rendered with a fixed number of decimals, rounded half-up.
std::string format_fraction(std::int64_t num, std::int64_t den, int decimals);

} // namespace qhs
