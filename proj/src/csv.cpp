#include <qhs/csv.hpp>

#include <qhs/ticks.hpp>

namespace qhs {

namespace {

std::string metric_columns(const MetricsReport& m, PolicyKind policy, std::size_t n_jobs) {
    std::string row = to_string(policy);
    row += ',';
    row += std::to_string(n_jobs);
    row += ',';
    row += format_seconds(m.total_ticks);
    row += ',';
    row += format_seconds(m.quantum_ticks);
    row += ',';
    row += format_fraction(m.quantum_ticks, m.total_ticks, 6);
    row += ',';
    row += format_seconds(m.mean_queue_ms);
    row += ',';
    row += format_fraction(m.node_ms, 1000, 3);
    row += ',';
    row += m.cosched_reference_ticks ? format_seconds(*m.cosched_reference_ticks) : "";
    row += ',';
    row += m.per_job_wall.empty() ? "" : format_seconds(m.per_job_wall.front());
    row += ',';
    row += m.per_job_wall.empty() ? "" : format_seconds(m.per_job_wall.back());
    return row;
}

constexpr const char* kMetricColumns =
    "policy,n_jobs,total_time_s,quantum_time_s,quantum_occupancy,mean_queue_time_s,"
    "node_seconds,cosched_reference_s,wall_min_s,wall_max_s";

} // namespace

std::string metrics_csv_header() {
    return std::string(kMetricColumns) + "\n";
}

std::string metrics_csv_row(const MetricsReport& m, PolicyKind policy, std::size_t n_jobs) {
    return metric_columns(m, policy, n_jobs) + "\n";
}

std::string metrics_csv(const MetricsReport& m, PolicyKind policy, std::size_t n_jobs) {
    return metrics_csv_header() + metrics_csv_row(m, policy, n_jobs);
}

std::string jobs_csv(const RunTrace& trace) {
    std::string out = "job_id,submit_s,end_s,wall_s,queue_wait_s\n";
    for (const auto& job : trace.jobs) {
        out += job.id;
        out += ',';
        out += format_seconds(job.submit);
        out += ',';
        out += format_seconds(job.end);
        out += ',';
        out += format_seconds(job.end - job.submit);
        out += ',';
        out += format_seconds(job.queue_wait);
        out += '\n';
    }
    return out;
}

std::string trace_csv(const RunTrace& trace) {
    std::string out = "time_s,seq,kind,job_id,phase,arg\n";
    for (const auto& row : trace.events) {
        out += format_seconds(row.time);
        out += ',';
        out += std::to_string(row.seq);
        out += ',';
        out += to_string(row.kind);
        out += ',';
        if (row.job >= 0 && row.job < static_cast<int>(trace.jobs.size())) {
            out += trace.jobs[static_cast<std::size_t>(row.job)].id;
        }
        out += ',';
        out += std::to_string(row.phase);
        out += ',';
        out += std::to_string(row.arg);
        out += '\n';
    }
    return out;
}

std::string sweep_csv_header(const std::vector<std::string>& axis_names) {
    std::string out;
    for (const auto& name : axis_names) {
        out += name;
        out += ',';
    }
    out += kMetricColumns;
    out += '\n';
    return out;
}

std::string sweep_csv_row(const std::vector<std::string>& param_values, const MetricsReport& m,
                          PolicyKind policy, std::size_t n_jobs) {
    std::string out;
    for (const auto& value : param_values) {
        out += value;
        out += ',';
    }
    out += metric_columns(m, policy, n_jobs);
    out += '\n';
    return out;
}

} // namespace qhs
