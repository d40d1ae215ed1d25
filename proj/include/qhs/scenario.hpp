#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <qhs/cluster.hpp>
#include <qhs/graph.hpp>
#include <qhs/job.hpp>
#include <qhs/policies.hpp>

namespace qhs {

/// Optional QUBO content attached to every quantum burst of the workload.
/// The graph is either generated (from the scenario seed) or loaded from an
/// edge-list file; it never changes declared burst durations.
struct PayloadConfig {
    std::optional<ClusteredGraphSpec> clustered_graph;
    std::optional<std::string> graph_file;
    double penalty{2.0};
};

bool operator==(const PayloadConfig& a, const PayloadConfig& b);

struct GcWorkloadConfig {
    int n_copies{1};
    double sleep_ratio{0.0}; // classical stretch per unit of burst time
    int n_iterations{20};
    Tick burst_ms{2000};
    Tick base_classical_ms{1000};
    double jitter_sigma{0.0}; // lognormal burst jitter, 0 = off
    std::optional<PayloadConfig> payload;
};

bool operator==(const GcWorkloadConfig& a, const GcWorkloadConfig& b);

struct ClusteringWorkloadConfig {
    Tick quantum_duration_ms{120000};
    int n_jobs{1};
    bool malleable{true};
    bool split_classical_tasks{false};
    double jitter_sigma{0.0};
    /// Per-iteration durations for {kmeans, dbscan, hierarchical} and the
    /// serial consensus step; defaults come from the built-in calibration.
    std::optional<std::array<std::array<Tick, 3>, 4>> classical_ms;
    std::optional<std::array<Tick, 4>> serial_ms;
    std::optional<PayloadConfig> payload;
};

bool operator==(const ClusteringWorkloadConfig& a, const ClusteringWorkloadConfig& b);

struct TraceWorkloadConfig {
    std::vector<Job> jobs;
};

bool operator==(const TraceWorkloadConfig& a, const TraceWorkloadConfig& b);

using WorkloadConfig =
    std::variant<GcWorkloadConfig, ClusteringWorkloadConfig, TraceWorkloadConfig>;

struct Scenario {
    std::uint64_t seed{0};
    PolicyKind policy{PolicyKind::StaticOffload};
    ClusterConfig cluster;
    std::optional<int> n_vqpus_config; // raw config value; cluster.n_vqpus is resolved
    OverheadConfig overheads;
    WorkloadConfig workload{GcWorkloadConfig{}};

    /// Materialized by resolve_scenario(); the engine consumes these.
    std::vector<Job> jobs;
};

bool operator==(const Scenario& a, const Scenario& b);

/// Builds the job list from the workload config and resolves defaults
/// (n_vqpus falls back to the number of submitted jobs).
void resolve_scenario(Scenario& scenario);

/// Rejects inconsistent scenarios: duplicate ids, non-positive durations,
/// phase requirements beyond the cluster, vqpu policy with an empty pool,
/// non-malleable jobs under the malleable policy, cyclic workflow specs.
void validate_scenario(const Scenario& scenario);

} // namespace qhs
