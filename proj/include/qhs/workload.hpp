#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <qhs/job.hpp>
#include <qhs/qubo.hpp>
#include <qhs/ticks.hpp>

namespace qhs {

/// Identical graph-coloring replicas submitted simultaneously. Each job is
/// n_iterations of [Quantum(burst), Classical(base + sleep_ratio * burst)];
/// the sleep models post-burst classical work proportional to quantum time
/// and never touches QPU service duration.
struct GcReplicaParams {
    int n_copies{1};
    double sleep_ratio{0.0};
    int n_iterations{20};
    Tick burst_duration{2000};
    Tick base_classical{1000};
    double jitter_sigma{0.0}; // lognormal multiplier on burst durations, 0 = off
    std::uint64_t seed{0};
    std::shared_ptr<const QuboProblem> payload;
};

std::vector<Job> gen_gc_replicas(const GcReplicaParams& params);

/// The clustering-aggregation loop: four iterations of a 3-node parallel
/// clustering phase (three algorithms, one per node, the slowest bounds the
/// phase), a quantum consensus solve, and a serial scoring step.
struct ClusteringParams {
    Tick quantum_duration{120000};
    std::array<std::array<Tick, 3>, 4> classical_durs{}; // {kmeans, dbscan, hierarchical} x 4
    std::array<Tick, 4> serial_durs{};
    bool malleable{true};
    bool split_classical_tasks{false}; // workflow: three 1-node tasks per iteration
    double jitter_sigma{0.0};
    std::uint64_t seed{0};
    std::uint64_t job_stream{0}; // per-copy stream id for jitter
    std::shared_ptr<const QuboProblem> payload;
};

Job gen_clustering_aggregation(const ClusteringParams& params);

constexpr int kClusteringIterations = 4;
constexpr int kClusteringNodes = 3;

/// Observed {wall, node-seconds} pairs for the static baseline and the
/// malleable run at two quantum-phase durations. Model:
///   baseline wall       = C3 + C1 + 4 * delta
///   baseline node-s     = 3 * wall
///   malleable node-s    = 3*C3 + C1 + 4*delta
/// where C3 is total 3-node classical time and C1 total serial time.
struct ClusteringObservations {
    double baseline_wall_high_s{0.0};
    double baseline_nodesec_high{0.0};
    double malleable_nodesec_high{0.0};
    double baseline_wall_low_s{0.0};
    double malleable_nodesec_low{0.0};
    Tick delta_high{0};
    Tick delta_low{0};
};

struct ClusteringCalibration {
    std::array<std::array<Tick, 3>, 4> classical_durs{};
    std::array<Tick, 4> serial_durs{};
    double c3_seconds{0.0};
    double c1_seconds{0.0};
    double max_relative_residual{0.0};
};

/// Solves the linear system above for (C3, C1), checks the remaining
/// observations as residuals, and spreads the totals evenly across
/// iterations (k-means gets 40% of the per-iteration maximum, DBSCAN 90%,
/// hierarchical 100%).
ClusteringCalibration calibrate_clustering(const ClusteringObservations& obs,
                                           double tolerance = 0.01);

/// Wall/node-second measurements of the reference emulation-cluster runs
/// this model is tuned against.
ClusteringObservations reference_observations();

/// Jobs from an explicit trace file ({"jobs": [...]} or a bare array, same
/// schema as the scenario's trace workload).
std::vector<Job> load_trace(const std::string& path);

} // namespace qhs
