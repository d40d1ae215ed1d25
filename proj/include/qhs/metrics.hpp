#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <qhs/cluster.hpp>
#include <qhs/events.hpp>
#include <qhs/ticks.hpp>

namespace qhs {

struct TraceEventRow {
    Tick time{0};
    std::uint64_t seq{0};
    EventKind kind{EventKind::JobSubmit};
    int job{-1};
    int phase{-1};
    std::int64_t arg{0};
};

struct BurstRecord {
    int job{-1};
    int task{-1};
    int qpu{-1};
    Tick enqueue_time{0};
    std::uint64_t enqueue_seq{0};
    Tick service_start{-1};
    Tick service_end{-1};
};

struct JobOutcome {
    std::string id;
    Tick submit{0};
    Tick end{-1};
    Tick queue_wait{0}; // cumulative burst-level wait for QPU access
};

/// Complete, immutable record of one run. A pure function of the Scenario.
struct RunTrace {
    std::vector<TraceEventRow> events;
    std::vector<LedgerInterval> node_ledger;
    std::vector<std::vector<Interval>> qpu_busy;
    std::vector<BurstRecord> bursts;
    std::vector<TokenInterval> token_intervals;
    std::vector<JobOutcome> jobs;
};

/// Everything reported per run. Raw values are exact ticks; the _s accessors
/// are conveniences for tests and tooling.
struct MetricsReport {
    Tick total_ticks{0};
    Tick quantum_ticks{0};
    Tick mean_queue_ms{0};
    std::int64_t node_ms{0};
    std::vector<Tick> per_job_wall; // sorted ascending
    std::optional<Tick> cosched_reference_ticks;
    double quantum_occupancy{0.0};

    double total_time_s() const { return static_cast<double>(total_ticks) / 1000.0; }
    double quantum_time_s() const { return static_cast<double>(quantum_ticks) / 1000.0; }
    double mean_queue_time_s() const { return static_cast<double>(mean_queue_ms) / 1000.0; }
    double node_seconds() const { return static_cast<double>(node_ms) / 1000.0; }
};

// Per-metric computations over a completed trace.
Tick total_time(const RunTrace& trace);
Tick quantum_time(const RunTrace& trace);
Tick mean_queue_time(const RunTrace& trace);
double quantum_occupancy(const RunTrace& trace);
std::vector<Tick> runtime_distribution(const RunTrace& trace);

/// T for one job times the job count: the serialized-execution yardstick.
Tick cosched_reference(Tick t_single, int n_jobs);

MetricsReport compute_metrics(const RunTrace& trace,
                              std::optional<Tick> cosched_ref = std::nullopt);

/// Full-trace audit: node conservation, QPU busy-interval disjointness,
/// FIFO service order, vQPU token bound, ledger closure, event ordering.
struct AuditReport {
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

AuditReport audit_trace(const RunTrace& trace, const ClusterConfig& cfg);

} // namespace qhs
