#include <qhs/metrics.hpp>

#include <algorithm>
#include <map>

#include <qhs/errors.hpp>

namespace qhs {

Tick total_time(const RunTrace& trace) {
    if (trace.jobs.empty()) return 0;
    Tick first_submit = trace.jobs.front().submit;
    Tick last_end = 0;
    for (const auto& job : trace.jobs) {
        first_submit = std::min(first_submit, job.submit);
        last_end = std::max(last_end, job.end);
    }
    return last_end - first_submit;
}

Tick quantum_time(const RunTrace& trace) {
    Tick busy = 0;
    for (const auto& qpu : trace.qpu_busy) {
        for (const auto& iv : qpu) busy += iv.length();
    }
    return busy;
}

Tick mean_queue_time(const RunTrace& trace) {
    if (trace.jobs.empty()) return 0;
    std::int64_t total = 0;
    for (const auto& job : trace.jobs) total += job.queue_wait;
    return round_div(total, static_cast<std::int64_t>(trace.jobs.size()));
}

double quantum_occupancy(const RunTrace& trace) {
    const Tick total = total_time(trace);
    if (total == 0) return 0.0;
    return static_cast<double>(quantum_time(trace)) / static_cast<double>(total);
}

std::vector<Tick> runtime_distribution(const RunTrace& trace) {
    std::vector<Tick> walls;
    walls.reserve(trace.jobs.size());
    for (const auto& job : trace.jobs) walls.push_back(job.end - job.submit);
    std::sort(walls.begin(), walls.end());
    return walls;
}

Tick cosched_reference(Tick t_single, int n_jobs) {
    if (n_jobs < 1) throw ValidationError("cosched_reference needs n >= 1");
    return t_single * n_jobs;
}

MetricsReport compute_metrics(const RunTrace& trace, std::optional<Tick> cosched_ref) {
    MetricsReport report;
    report.total_ticks = total_time(trace);
    report.quantum_ticks = quantum_time(trace);
    report.mean_queue_ms = mean_queue_time(trace);
    report.node_ms = node_milliseconds(trace.node_ledger);
    report.per_job_wall = runtime_distribution(trace);
    report.cosched_reference_ticks = cosched_ref;
    report.quantum_occupancy = quantum_occupancy(trace);
    return report;
}

namespace {

void check_conservation(const RunTrace& trace, const ClusterConfig& cfg, AuditReport& out) {
    // +nodes at start, -nodes at end; ends apply before starts at a tick.
    std::vector<std::pair<Tick, int>> deltas;
    for (const auto& iv : trace.node_ledger) {
        if (iv.end < 0) {
            out.violations.push_back("open ledger interval for job " + std::to_string(iv.job));
            continue;
        }
        if (iv.end < iv.start) {
            out.violations.push_back("negative-length ledger interval for job " +
                                     std::to_string(iv.job));
        }
        deltas.emplace_back(iv.start, iv.nodes);
        deltas.emplace_back(iv.end, -iv.nodes);
    }
    std::sort(deltas.begin(), deltas.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second; // releases first
    });
    int held = 0;
    for (const auto& [t, d] : deltas) {
        held += d;
        if (held > cfg.n_nodes) {
            out.violations.push_back("node conservation violated at t=" + std::to_string(t) +
                                     ": " + std::to_string(held) + " > " +
                                     std::to_string(cfg.n_nodes));
            return;
        }
    }
    if (held != 0) out.violations.push_back("ledger does not balance to zero");
}

void check_qpu(const RunTrace& trace, AuditReport& out) {
    for (std::size_t q = 0; q < trace.qpu_busy.size(); ++q) {
        const auto& ivs = trace.qpu_busy[q];
        for (std::size_t i = 1; i < ivs.size(); ++i) {
            if (ivs[i].start < ivs[i - 1].end) {
                out.violations.push_back("QPU " + std::to_string(q) +
                                         " busy intervals overlap at t=" +
                                         std::to_string(ivs[i].start));
            }
        }
    }
    // FIFO: per QPU, service order must equal enqueue order.
    std::map<int, std::vector<const BurstRecord*>> per_qpu;
    for (const auto& rec : trace.bursts) {
        if (rec.service_start < 0 || rec.service_end < rec.service_start) {
            out.violations.push_back("burst of job " + std::to_string(rec.job) +
                                     " has no valid service interval");
            continue;
        }
        if (rec.service_start < rec.enqueue_time) {
            out.violations.push_back("burst served before it was enqueued (job " +
                                     std::to_string(rec.job) + ")");
        }
        per_qpu[rec.qpu].push_back(&rec);
    }
    for (auto& [qpu, recs] : per_qpu) {
        std::sort(recs.begin(), recs.end(), [](const BurstRecord* a, const BurstRecord* b) {
            return a->service_start < b->service_start;
        });
        for (std::size_t i = 1; i < recs.size(); ++i) {
            if (recs[i]->enqueue_seq < recs[i - 1]->enqueue_seq) {
                out.violations.push_back("QPU " + std::to_string(qpu) +
                                         " served bursts out of FIFO order");
                break;
            }
        }
    }
}

void check_tokens(const RunTrace& trace, const ClusterConfig& cfg, AuditReport& out) {
    std::vector<std::pair<Tick, int>> deltas;
    for (const auto& tok : trace.token_intervals) {
        if (tok.end < 0) {
            out.violations.push_back("open token interval for job " + std::to_string(tok.job));
            continue;
        }
        deltas.emplace_back(tok.start, 1);
        deltas.emplace_back(tok.end, -1);
    }
    std::sort(deltas.begin(), deltas.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    int outstanding = 0;
    for (const auto& [t, d] : deltas) {
        outstanding += d;
        if (outstanding > cfg.n_vqpus) {
            out.violations.push_back("vQPU token bound exceeded at t=" + std::to_string(t));
            return;
        }
    }
}

void check_event_order(const RunTrace& trace, AuditReport& out) {
    for (std::size_t i = 1; i < trace.events.size(); ++i) {
        const auto& prev = trace.events[i - 1];
        const auto& cur = trace.events[i];
        if (cur.time < prev.time || (cur.time == prev.time && cur.seq <= prev.seq)) {
            out.violations.push_back("trace events out of (time, seq) order at index " +
                                     std::to_string(i));
            return;
        }
    }
}

} // namespace

AuditReport audit_trace(const RunTrace& trace, const ClusterConfig& cfg) {
    AuditReport out;
    check_conservation(trace, cfg, out);
    check_qpu(trace, out);
    check_tokens(trace, cfg, out);
    check_event_order(trace, out);
    return out;
}

} // namespace qhs
