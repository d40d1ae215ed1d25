#pragma once

#include <memory>
#include <vector>

#include <qhs/cluster.hpp>
#include <qhs/engine.hpp>
#include <qhs/metrics.hpp>
#include <qhs/policies.hpp>
#include <qhs/scenario.hpp>

namespace qhs {

struct TaskRun {
    enum class State { Blocked, Submitted, WaitingNodes, Running, Done };

    State state{State::Blocked};
    int preds_left{0};
    std::vector<int> successors;
};

/// Mutable per-job state owned by the engine loop.
struct JobRun {
    Job def;
    int index{0};

    enum class Status { Pending, Waiting, Active, Done };
    Status status{Status::Pending};

    int phase{-1}; // current phase (sequential policies)
    Tick end_time{-1};
    Tick queue_wait{0};

    // Workflow policy state.
    std::vector<WorkflowTask> task_defs;
    std::vector<TaskRun> tasks;
    int tasks_done{0};
};

struct RunResult {
    RunTrace trace;
    MetricsReport metrics;
};

/// Single-threaded deterministic driver for one scenario: owns the clock,
/// the cluster state, the QPU broker, and the active policy. Independent
/// Simulations may run concurrently.
class Simulation {
public:
    explicit Simulation(Scenario scenario, bool compute_reference = true);

    RunResult run();

    // --- primitives used by the policy models ---
    Engine& engine() { return engine_; }
    ClusterState& cluster() { return cluster_; }
    QpuBroker& broker() { return broker_; }
    const Scenario& scenario() const { return scenario_; }
    const OverheadConfig& overheads() const { return scenario_.overheads; }
    JobRun& job_run(int index) { return jobs_.at(static_cast<std::size_t>(index)); }

    /// FCFS resource request; an immediate grant schedules the
    /// AllocationGranted event at the current tick.
    void request_resources(const NodeRequest& req);
    void release_job_nodes(int job, int count);

    /// Adjusts a malleable job's holdings toward target_nodes (full release
    /// when shrinking, best-effort grab when growing). Emits Reconfigure
    /// events when the count changes and returns the tick at which the job
    /// may resume.
    Tick reconfigure(int job, int next_phase, int target_nodes);

    void start_phase(int job, int phase, Tick at);
    void schedule_phase_end(int job, int phase, Tick at);
    void enqueue_burst(int job, int task, Tick at);
    void schedule_task_submit(int job, int task, Tick at);
    void finish_job(int job);

private:
    void dispatch(const Event& e);
    void handle_qpu_enqueue(const Event& e);
    void handle_service_start(const Event& e);
    void handle_service_end(const Event& e);
    void handle_job_end(const Event& e);
    void schedule_grants(const std::vector<ClusterState::PendingGrant>& grants);
    [[noreturn]] void report_deadlock() const;
    Tick burst_duration(int job, int task) const;

    Scenario scenario_;
    bool compute_reference_;
    Engine engine_;
    ClusterState cluster_;
    QpuBroker broker_;
    std::unique_ptr<PolicyModel> policy_;
    std::vector<JobRun> jobs_;
    RunTrace trace_;
    int jobs_finished_{0};
};

/// Validates, runs, audits, and reports. Identical scenarios produce
/// byte-identical traces and metrics.
RunResult run_to_completion(const Scenario& scenario);

} // namespace qhs
