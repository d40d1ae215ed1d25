#pragma once

#include <cstdint>
#include <string>

#include <qhs/ticks.hpp>

namespace qhs {

enum class EventKind {
    JobSubmit,
    AllocationGranted,
    PhaseStart,
    PhaseEnd,
    QpuEnqueue,
    QpuServiceStart,
    QpuServiceEnd,
    ReconfigureStart,
    ReconfigureEnd,
    TaskSubmit,
    JobEnd,
};

const char* to_string(EventKind kind);

/// One timestamped state transition. Total order is (time, seq)
/// lexicographic; seq is assigned from a global monotone counter when the
/// event is scheduled, so no two events ever compare equal.
struct Event {
    Tick time{0};
    std::uint64_t seq{0};
    EventKind kind{EventKind::JobSubmit};
    int job{-1};   // job index, -1 when not job-bound
    int phase{-1}; // phase or task index, -1 when not applicable
    std::int64_t arg{0}; // kind-specific detail (nodes, qpu index, delta)
};

} // namespace qhs
