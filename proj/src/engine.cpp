#include <qhs/engine.hpp>

#include <qhs/errors.hpp>

namespace qhs {

const char* to_string(EventKind kind) {
    switch (kind) {
        case EventKind::JobSubmit: return "job_submit";
        case EventKind::AllocationGranted: return "allocation_granted";
        case EventKind::PhaseStart: return "phase_start";
        case EventKind::PhaseEnd: return "phase_end";
        case EventKind::QpuEnqueue: return "qpu_enqueue";
        case EventKind::QpuServiceStart: return "qpu_service_start";
        case EventKind::QpuServiceEnd: return "qpu_service_end";
        case EventKind::ReconfigureStart: return "reconfigure_start";
        case EventKind::ReconfigureEnd: return "reconfigure_end";
        case EventKind::TaskSubmit: return "task_submit";
        case EventKind::JobEnd: return "job_end";
    }
    return "unknown";
}

std::uint64_t Engine::schedule(Tick t, EventKind kind, int job, int phase, std::int64_t arg) {
    if (t < now_) {
        throw InternalError("event scheduled into the past: t=" + std::to_string(t) +
                            " now=" + std::to_string(now_) + " kind=" + to_string(kind));
    }
    Event e;
    e.time = t;
    e.seq = next_seq_++;
    e.kind = kind;
    e.job = job;
    e.phase = phase;
    e.arg = arg;
    queue_.push(e);
    return e.seq;
}

Event Engine::advance() {
    if (queue_.empty()) {
        throw InternalError("advance() on an empty event queue");
    }
    Event e = queue_.top();
    queue_.pop();
    if (e.time < now_) {
        throw InternalError("clock would move backwards");
    }
    now_ = e.time;
    ++processed_;
    return e;
}

} // namespace qhs
