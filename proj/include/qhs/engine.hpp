#pragma once

#include <cstddef>
#include <queue>
#include <vector>

#include <qhs/events.hpp>

namespace qhs {

/// Deterministic discrete-event core: an integer-tick clock plus a totally
/// ordered pending-event queue. The engine knows nothing about jobs or
/// resources; the Simulation dispatches popped events to the active policy.
class Engine {
public:
    Tick now() const { return now_; }
    bool empty() const { return queue_.empty(); }
    std::size_t pending() const { return queue_.size(); }
    std::uint64_t events_processed() const { return processed_; }

    /// Inserts an event at time t (>= now). Scheduling into the past is a
    /// fatal internal-consistency error.
    std::uint64_t schedule(Tick t, EventKind kind, int job = -1, int phase = -1,
                           std::int64_t arg = 0);

    /// Pops the next event in (time, seq) order and advances the clock to it.
    Event advance();

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    Tick now_{0};
    std::uint64_t next_seq_{0};
    std::uint64_t processed_{0};
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
};

} // namespace qhs
