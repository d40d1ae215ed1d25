#include <qhs/workload.hpp>

#include <algorithm>
#include <cmath>

#include <qhs/errors.hpp>
#include <qhs/rng.hpp>

namespace qhs {

namespace {

Tick jittered(Tick duration, double sigma, Xoshiro256ss& rng) {
    if (sigma <= 0.0) return duration;
    const double factor = std::exp(sigma * rng.next_normal());
    const auto scaled = static_cast<Tick>(std::llround(static_cast<double>(duration) * factor));
    return std::max<Tick>(1, scaled);
}

} // namespace

std::vector<Job> gen_gc_replicas(const GcReplicaParams& params) {
    if (params.n_copies < 1) throw ValidationError("gc_replicas: n_copies must be >= 1");
    if (params.n_iterations < 1) throw ValidationError("gc_replicas: n_iterations must be >= 1");
    if (params.sleep_ratio < 0.0) throw ValidationError("gc_replicas: sleep_ratio must be >= 0");
    if (params.burst_duration < 1) throw ValidationError("gc_replicas: burst duration must be > 0");
    if (params.base_classical < 1) {
        throw ValidationError("gc_replicas: base classical duration must be > 0");
    }
    if (params.jitter_sigma < 0.0) throw ValidationError("gc_replicas: jitter_sigma must be >= 0");

    std::vector<Job> jobs;
    jobs.reserve(static_cast<std::size_t>(params.n_copies));
    for (int k = 0; k < params.n_copies; ++k) {
        auto rng = Xoshiro256ss::stream(params.seed, static_cast<std::uint64_t>(k));
        Job job;
        job.id = "gc-" + std::to_string(k);
        job.submit_time = 0;
        job.nodes_min = 1;
        job.malleable = false;
        job.phases.reserve(static_cast<std::size_t>(2 * params.n_iterations));
        for (int it = 0; it < params.n_iterations; ++it) {
            const Tick burst = jittered(params.burst_duration, params.jitter_sigma, rng);
            const Tick classical =
                params.base_classical +
                static_cast<Tick>(std::llround(params.sleep_ratio * static_cast<double>(burst)));
            job.phases.push_back(Phase::quantum(burst, params.payload));
            job.phases.push_back(Phase::classical(1, classical));
        }
        jobs.push_back(std::move(job));
    }
    return jobs;
}

Job gen_clustering_aggregation(const ClusteringParams& params) {
    if (params.quantum_duration < 1) {
        throw ValidationError("clustering: quantum duration must be > 0");
    }
    for (const auto& iter : params.classical_durs) {
        for (Tick d : iter) {
            if (d < 1) throw ValidationError("clustering: classical durations must be > 0");
        }
    }
    for (Tick d : params.serial_durs) {
        if (d < 1) throw ValidationError("clustering: serial durations must be > 0");
    }

    auto rng = Xoshiro256ss::stream(params.seed, 0x636c7573ULL + params.job_stream);

    Job job;
    job.nodes_min = 1;
    job.malleable = params.malleable;
    job.phases.reserve(3 * kClusteringIterations);

    WorkflowSpec split;
    for (int it = 0; it < kClusteringIterations; ++it) {
        const auto& algos = params.classical_durs[static_cast<std::size_t>(it)];
        const Tick slowest = *std::max_element(algos.begin(), algos.end());
        const Tick burst = jittered(params.quantum_duration, params.jitter_sigma, rng);
        const Tick serial = params.serial_durs[static_cast<std::size_t>(it)];

        job.phases.push_back(Phase::classical(kClusteringNodes, slowest));
        job.phases.push_back(Phase::quantum(burst, params.payload));
        job.phases.push_back(Phase::serial(serial));

        if (params.split_classical_tasks) {
            // Fan out the three algorithms as 1-node tasks, join on the solve.
            const char* names[3] = {"kmeans", "dbscan", "hierarchical"};
            const int base = static_cast<int>(split.tasks.size());
            const int prev_serial = base - 1;
            for (int a = 0; a < 3; ++a) {
                WorkflowTask t;
                t.name = std::string(names[a]) + "-" + std::to_string(it);
                t.kind = Phase::Kind::Classical;
                t.nodes = 1;
                t.duration = algos[static_cast<std::size_t>(a)];
                split.tasks.push_back(std::move(t));
                if (prev_serial >= 0) split.deps.emplace_back(prev_serial, base + a);
            }
            WorkflowTask solve;
            solve.name = "mis-solve-" + std::to_string(it);
            solve.kind = Phase::Kind::Quantum;
            solve.burst.duration = burst;
            solve.burst.payload = params.payload;
            solve.location = TaskLocation::QuantumPool;
            split.tasks.push_back(std::move(solve));
            const int solve_idx = base + 3;
            for (int a = 0; a < 3; ++a) split.deps.emplace_back(base + a, solve_idx);
            WorkflowTask score;
            score.name = "silhouette-" + std::to_string(it);
            score.kind = Phase::Kind::Serial;
            score.nodes = 1;
            score.duration = serial;
            split.tasks.push_back(std::move(score));
            split.deps.emplace_back(solve_idx, solve_idx + 1);
        }
    }
    if (params.split_classical_tasks) job.workflow = std::move(split);
    return job;
}

ClusteringCalibration calibrate_clustering(const ClusteringObservations& obs, double tolerance) {
    const double delta_high_s = static_cast<double>(obs.delta_high) / 1000.0;
    const double delta_low_s = static_cast<double>(obs.delta_low) / 1000.0;

    // Two equations pin (C3, C1); the rest of the table is cross-checked.
    const double c3_plus_c1 = obs.baseline_wall_high_s - 4.0 * delta_high_s;
    const double three_c3_plus_c1 = obs.malleable_nodesec_high - 4.0 * delta_high_s;
    const double c3 = (three_c3_plus_c1 - c3_plus_c1) / 2.0;
    const double c1 = c3_plus_c1 - c3;

    auto rel = [](double measured, double predicted) {
        return std::abs(measured - predicted) / std::max(std::abs(measured), 1e-9);
    };
    double worst = rel(obs.baseline_wall_low_s, c3 + c1 + 4.0 * delta_low_s);
    worst = std::max(worst, rel(obs.baseline_nodesec_high, 3.0 * obs.baseline_wall_high_s));
    worst = std::max(worst, rel(obs.malleable_nodesec_low, 3.0 * c3 + c1 + 4.0 * delta_low_s));

    if (c3 <= 0.0 || c1 <= 0.0 || worst > tolerance) {
        throw CalibrationError(
            "clustering calibration inconsistent: C3=" + std::to_string(c3) +
            " C1=" + std::to_string(c1) + " worst residual=" + std::to_string(worst));
    }

    ClusteringCalibration cal;
    cal.c3_seconds = c3;
    cal.c1_seconds = c1;
    cal.max_relative_residual = worst;

    // Distribute totals across iterations so the per-iteration ticks sum
    // exactly to the calibrated totals.
    const Tick c3_ms = static_cast<Tick>(std::llround(c3 * 1000.0));
    const Tick c1_ms = static_cast<Tick>(std::llround(c1 * 1000.0));
    const Tick c3_base = c3_ms / kClusteringIterations;
    const Tick c3_rem = c3_ms % kClusteringIterations;
    const Tick c1_base = c1_ms / kClusteringIterations;
    const Tick c1_rem = c1_ms % kClusteringIterations;
    for (int it = 0; it < kClusteringIterations; ++it) {
        const Tick slowest = c3_base + (it < c3_rem ? 1 : 0);
        auto& algos = cal.classical_durs[static_cast<std::size_t>(it)];
        algos[0] = std::max<Tick>(1, static_cast<Tick>(std::llround(0.4 * static_cast<double>(slowest))));
        algos[1] = std::max<Tick>(1, static_cast<Tick>(std::llround(0.9 * static_cast<double>(slowest))));
        algos[2] = slowest;
        cal.serial_durs[static_cast<std::size_t>(it)] = c1_base + (it < c1_rem ? 1 : 0);
    }
    return cal;
}

ClusteringObservations reference_observations() {
    ClusteringObservations obs;
    obs.baseline_wall_high_s = 1019.58;
    obs.baseline_nodesec_high = 3058.74;
    obs.malleable_nodesec_high = 1647.75;
    obs.baseline_wall_low_s = 539.44;
    obs.malleable_nodesec_low = 1168.29;
    obs.delta_high = 120000;
    obs.delta_low = 400;
    return obs;
}

} // namespace qhs
