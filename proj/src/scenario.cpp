#include <qhs/scenario.hpp>

#include <set>
#include <string>
#include <tuple>

#include <qhs/errors.hpp>
#include <qhs/qubo.hpp>
#include <qhs/workload.hpp>

namespace qhs {

bool operator==(const PayloadConfig& a, const PayloadConfig& b) {
    auto key = [](const PayloadConfig& p) {
        return std::tuple(p.clustered_graph.has_value(),
                          p.clustered_graph ? p.clustered_graph->separators : 0,
                          p.clustered_graph ? p.clustered_graph->max_component : 0,
                          p.clustered_graph ? p.clustered_graph->clusters : 0,
                          p.clustered_graph ? p.clustered_graph->intra_edge_prob : 0.0,
                          p.graph_file.value_or(""), p.penalty);
    };
    return key(a) == key(b);
}

bool operator==(const GcWorkloadConfig& a, const GcWorkloadConfig& b) {
    return a.n_copies == b.n_copies && a.sleep_ratio == b.sleep_ratio &&
           a.n_iterations == b.n_iterations && a.burst_ms == b.burst_ms &&
           a.base_classical_ms == b.base_classical_ms && a.jitter_sigma == b.jitter_sigma &&
           a.payload == b.payload;
}

bool operator==(const ClusteringWorkloadConfig& a, const ClusteringWorkloadConfig& b) {
    return a.quantum_duration_ms == b.quantum_duration_ms && a.n_jobs == b.n_jobs &&
           a.malleable == b.malleable && a.split_classical_tasks == b.split_classical_tasks &&
           a.jitter_sigma == b.jitter_sigma && a.classical_ms == b.classical_ms &&
           a.serial_ms == b.serial_ms && a.payload == b.payload;
}

namespace {

bool jobs_equal(const Job& a, const Job& b) {
    return a.id == b.id && same_content(a, b);
}

} // namespace

bool operator==(const TraceWorkloadConfig& a, const TraceWorkloadConfig& b) {
    if (a.jobs.size() != b.jobs.size()) return false;
    for (std::size_t i = 0; i < a.jobs.size(); ++i) {
        if (!jobs_equal(a.jobs[i], b.jobs[i])) return false;
    }
    return true;
}

bool operator==(const Scenario& a, const Scenario& b) {
    return a.seed == b.seed && a.policy == b.policy && a.cluster.n_nodes == b.cluster.n_nodes &&
           a.cluster.n_qpus == b.cluster.n_qpus && a.cluster.n_vqpus == b.cluster.n_vqpus &&
           a.overheads == b.overheads && a.workload == b.workload;
}

namespace {

std::shared_ptr<const QuboProblem> materialize_payload(const PayloadConfig& cfg,
                                                       std::uint64_t seed) {
    Graph graph;
    if (cfg.clustered_graph && cfg.graph_file) {
        throw ValidationError("payload: specify either clustered_graph or graph_file, not both");
    }
    if (cfg.clustered_graph) {
        ClusteredGraphSpec spec = *cfg.clustered_graph;
        spec.seed = seed;
        graph = gen_clustered_graph(spec).graph;
    } else if (cfg.graph_file) {
        graph = read_edge_list_file(*cfg.graph_file);
    } else {
        throw ValidationError("payload: missing graph source");
    }
    return std::make_shared<const QuboProblem>(build_mis_qubo(graph, cfg.penalty));
}

} // namespace

void resolve_scenario(Scenario& scenario) {
    scenario.jobs.clear();

    if (auto* gc = std::get_if<GcWorkloadConfig>(&scenario.workload)) {
        GcReplicaParams params;
        params.n_copies = gc->n_copies;
        params.sleep_ratio = gc->sleep_ratio;
        params.n_iterations = gc->n_iterations;
        params.burst_duration = gc->burst_ms;
        params.base_classical = gc->base_classical_ms;
        params.jitter_sigma = gc->jitter_sigma;
        params.seed = scenario.seed;
        if (gc->payload) params.payload = materialize_payload(*gc->payload, scenario.seed);
        scenario.jobs = gen_gc_replicas(params);
    } else if (auto* cl = std::get_if<ClusteringWorkloadConfig>(&scenario.workload)) {
        if (!cl->classical_ms || !cl->serial_ms) {
            const auto cal = calibrate_clustering(reference_observations());
            if (!cl->classical_ms) cl->classical_ms = cal.classical_durs;
            if (!cl->serial_ms) cl->serial_ms = cal.serial_durs;
        }
        if (cl->n_jobs < 1) throw ValidationError("clustering: n_jobs must be >= 1");
        ClusteringParams params;
        params.quantum_duration = cl->quantum_duration_ms;
        params.classical_durs = *cl->classical_ms;
        params.serial_durs = *cl->serial_ms;
        params.malleable = cl->malleable;
        params.split_classical_tasks = cl->split_classical_tasks;
        params.jitter_sigma = cl->jitter_sigma;
        params.seed = scenario.seed;
        if (cl->payload) params.payload = materialize_payload(*cl->payload, scenario.seed);
        for (int k = 0; k < cl->n_jobs; ++k) {
            params.job_stream = static_cast<std::uint64_t>(k);
            Job job = gen_clustering_aggregation(params);
            job.id = "clust-" + std::to_string(k);
            job.submit_time = 0;
            scenario.jobs.push_back(std::move(job));
        }
    } else if (auto* tr = std::get_if<TraceWorkloadConfig>(&scenario.workload)) {
        scenario.jobs = tr->jobs;
    }

    if (!scenario.n_vqpus_config) {
        scenario.cluster.n_vqpus = static_cast<int>(scenario.jobs.size());
    } else {
        scenario.cluster.n_vqpus = *scenario.n_vqpus_config;
    }
}

void validate_scenario(const Scenario& scenario) {
    const auto& cluster = scenario.cluster;
    if (cluster.n_nodes < 1) throw ValidationError("cluster.n_nodes must be >= 1");
    if (cluster.n_qpus < 1) throw ValidationError("cluster.n_qpus must be >= 1");
    if (cluster.n_vqpus < 0) throw ValidationError("cluster.n_vqpus must be >= 0");

    if (scenario.policy == PolicyKind::VQPU) {
        if (scenario.n_vqpus_config && *scenario.n_vqpus_config == 0) {
            throw ValidationError("vqpu policy with an explicitly empty vQPU pool");
        }
        if (!scenario.jobs.empty() && cluster.n_vqpus < 1) {
            throw ValidationError("vqpu policy needs at least one vQPU for a non-empty job set");
        }
    }

    std::set<std::string> ids;
    for (const auto& job : scenario.jobs) {
        const std::string where = "job '" + job.id + "': ";
        if (job.id.empty()) throw ValidationError("job with empty id");
        if (!ids.insert(job.id).second) throw ValidationError("duplicate job id '" + job.id + "'");
        if (job.submit_time < 0) throw ValidationError(where + "negative submit time");
        if (job.phases.empty()) throw ValidationError(where + "no phases");
        if (job.nodes_min < 1) throw ValidationError(where + "nodes_min must be >= 1");
        if (job.nodes_min > cluster.n_nodes) {
            throw ValidationError(where + "nodes_min exceeds the cluster's " +
                                  std::to_string(cluster.n_nodes) + " nodes");
        }
        for (std::size_t i = 0; i < job.phases.size(); ++i) {
            const Phase& p = job.phases[i];
            const std::string pwhere = where + "phase " + std::to_string(i) + ": ";
            switch (p.kind) {
                case Phase::Kind::Classical:
                    if (p.nodes < 1) throw ValidationError(pwhere + "needs at least one node");
                    if (p.nodes > cluster.n_nodes) {
                        throw ValidationError(pwhere + "requires " + std::to_string(p.nodes) +
                                              " nodes on a " + std::to_string(cluster.n_nodes) +
                                              "-node cluster");
                    }
                    if (p.duration < 1) throw ValidationError(pwhere + "non-positive duration");
                    break;
                case Phase::Kind::Serial:
                    if (p.duration < 1) throw ValidationError(pwhere + "non-positive duration");
                    break;
                case Phase::Kind::Quantum:
                    if (p.burst.duration < 1) {
                        throw ValidationError(pwhere + "non-positive burst duration");
                    }
                    break;
            }
        }
        if (scenario.policy == PolicyKind::Malleable && !job.malleable) {
            throw ValidationError(where + "not marked malleable under the malleable policy");
        }
        if (job.workflow) {
            if (job.workflow->tasks.empty()) throw ValidationError(where + "empty workflow spec");
            if (!job.workflow->is_acyclic()) {
                throw ValidationError(where + "workflow dependencies contain a cycle");
            }
            for (const auto& task : job.workflow->tasks) {
                if (task.kind == Phase::Kind::Quantum) {
                    if (task.burst.duration < 1) {
                        throw ValidationError(where + "workflow task '" + task.name +
                                              "' has a non-positive burst");
                    }
                } else {
                    if (task.nodes < 1 || task.nodes > cluster.n_nodes) {
                        throw ValidationError(where + "workflow task '" + task.name +
                                              "' has an invalid node count");
                    }
                    if (task.duration < 1) {
                        throw ValidationError(where + "workflow task '" + task.name +
                                              "' has a non-positive duration");
                    }
                }
            }
        }
    }
}

} // namespace qhs
