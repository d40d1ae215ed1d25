#include <qhs/policies.hpp>

#include <algorithm>
#include <string>

#include <qhs/errors.hpp>
#include <qhs/simulation.hpp>

namespace qhs {

const char* to_string(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::CoScheduledExclusive: return "coscheduled_exclusive";
        case PolicyKind::StaticOffload: return "static_offload";
        case PolicyKind::VQPU: return "vqpu";
        case PolicyKind::Malleable: return "malleable";
        case PolicyKind::Workflow: return "workflow";
    }
    return "unknown";
}

std::optional<PolicyKind> policy_from_string(std::string_view name) {
    if (name == "coscheduled_exclusive") return PolicyKind::CoScheduledExclusive;
    if (name == "static_offload") return PolicyKind::StaticOffload;
    if (name == "vqpu") return PolicyKind::VQPU;
    if (name == "malleable") return PolicyKind::Malleable;
    if (name == "workflow") return PolicyKind::Workflow;
    return std::nullopt;
}

bool operator==(const OverheadConfig& a, const OverheadConfig& b) {
    return a.reconfig_overhead == b.reconfig_overhead &&
           a.wms_task_overhead == b.wms_task_overhead &&
           a.job_init_overhead == b.job_init_overhead;
}

Tick moldable_duration(Tick base, int nodes_req, int nodes_granted) {
    if (nodes_granted < 1) throw ValidationError("moldable_duration with zero nodes granted");
    if (nodes_granted > nodes_req) {
        throw ValidationError("moldable_duration granted more nodes than requested");
    }
    return ceil_scale(base, nodes_req, nodes_granted);
}

void PolicyModel::on_task_submit(Simulation&, JobRun&, int) {
    throw InternalError("task events are only valid under the workflow policy");
}

namespace {

/// Shared flow for the whole-job policies: one admission request at submit,
/// then phases executed in order until JobEnd.
class SequentialPolicy : public PolicyModel {
public:
    void on_job_submit(Simulation& sim, JobRun& job) override {
        job.status = JobRun::Status::Waiting;
        NodeRequest req = admission(job);
        req.job = job.index;
        req.task = -1;
        sim.request_resources(req);
    }

    void on_allocation_granted(Simulation& sim, JobRun& job, int task, int) override {
        if (task != -1) throw InternalError("task grant under a whole-job policy");
        job.status = JobRun::Status::Active;
        sim.start_phase(job.index, 0, sim.engine().now() + sim.overheads().job_init_overhead);
    }

    void on_phase_start(Simulation& sim, JobRun& job, int phase) override {
        job.phase = phase;
        const Phase& p = job.def.phases.at(static_cast<std::size_t>(phase));
        switch (p.kind) {
            case Phase::Kind::Classical:
                sim.schedule_phase_end(job.index, phase,
                                       sim.engine().now() + classical_duration(sim, job, p));
                break;
            case Phase::Kind::Serial:
                sim.schedule_phase_end(job.index, phase, sim.engine().now() + p.duration);
                break;
            case Phase::Kind::Quantum:
                sim.enqueue_burst(job.index, phase, sim.engine().now());
                break;
        }
    }

    void on_burst_complete(Simulation& sim, JobRun& job, int task) override {
        sim.schedule_phase_end(job.index, task, sim.engine().now());
    }

    void on_phase_end(Simulation& sim, JobRun& job, int phase) override {
        if (phase + 1 == static_cast<int>(job.def.phases.size())) {
            sim.finish_job(job.index);
        } else {
            transition(sim, job, phase + 1);
        }
    }

protected:
    virtual NodeRequest admission(const JobRun& job) const = 0;

    virtual Tick classical_duration(Simulation&, const JobRun&, const Phase& p) const {
        return p.duration;
    }

    virtual void transition(Simulation& sim, JobRun& job, int next) {
        sim.start_phase(job.index, next, sim.engine().now());
    }
};

/// Fig-2 semantics: the job takes its widest allocation plus the QPU lock at
/// start and holds both to JobEnd, even when the first burst is late.
class ExclusivePolicy : public SequentialPolicy {
public:
    const char* name() const override { return "coscheduled_exclusive"; }

protected:
    NodeRequest admission(const JobRun& job) const override {
        NodeRequest req;
        req.nodes_min = req.nodes_max = max_phase_nodes(job.def);
        req.want_qpu_lock = true;
        return req;
    }
};

/// Baseline: rigid widest allocation held start-to-end; bursts go to the
/// shared FIFO with no lock.
class StaticOffloadPolicy : public SequentialPolicy {
public:
    const char* name() const override { return "static_offload"; }

protected:
    NodeRequest admission(const JobRun& job) const override {
        NodeRequest req;
        req.nodes_min = req.nodes_max = max_phase_nodes(job.def);
        return req;
    }
};

/// Static offload plus a vQPU token held for the job's whole duration; the
/// token entitles the job to enqueue circuits, not to a qubit partition.
class VqpuPolicy : public SequentialPolicy {
public:
    const char* name() const override { return "vqpu"; }

protected:
    NodeRequest admission(const JobRun& job) const override {
        NodeRequest req;
        req.nodes_min = req.nodes_max = max_phase_nodes(job.def);
        req.want_vqpu = true;
        return req;
    }
};

/// DMR-style reconfiguration at phase boundaries: shrink to nodes_min when
/// entering Quantum or Serial work, expand moldably toward the classical
/// phase's width. At least one node stays held at all times.
class MalleablePolicy : public SequentialPolicy {
public:
    const char* name() const override { return "malleable"; }

protected:
    NodeRequest admission(const JobRun& job) const override {
        NodeRequest req;
        req.nodes_min = job.def.nodes_min;
        req.nodes_max = node_target(job, 0);
        req.moldable = true;
        return req;
    }

    Tick classical_duration(Simulation& sim, const JobRun& job, const Phase& p) const override {
        const int granted = std::min(sim.cluster().nodes_held(job.index), p.nodes);
        return moldable_duration(p.duration, p.nodes, granted);
    }

    void transition(Simulation& sim, JobRun& job, int next) override {
        const Tick resume = sim.reconfigure(job.index, next, node_target(job, next));
        sim.start_phase(job.index, next, resume);
    }

private:
    static int node_target(const JobRun& job, int phase) {
        const Phase& p = job.def.phases.at(static_cast<std::size_t>(phase));
        if (p.kind == Phase::Kind::Classical) return std::max(p.nodes, job.def.nodes_min);
        return job.def.nodes_min;
    }
};

/// Every phase becomes an independently provisioned task: resources are held
/// only while the task runs, and each submission pays the WMS latency.
class WorkflowPolicy : public PolicyModel {
public:
    const char* name() const override { return "workflow"; }

    void on_job_submit(Simulation& sim, JobRun& job) override {
        build_tasks(job);
        job.status = JobRun::Status::Active;
        const Tick base = sim.engine().now() + sim.overheads().job_init_overhead;
        for (std::size_t t = 0; t < job.tasks.size(); ++t) {
            if (job.tasks[t].preds_left == 0) {
                sim.schedule_task_submit(job.index, static_cast<int>(t),
                                         base + sim.overheads().wms_task_overhead);
            }
        }
        if (job.tasks.empty()) sim.finish_job(job.index);
    }

    void on_task_submit(Simulation& sim, JobRun& job, int task) override {
        auto& tr = job.tasks.at(static_cast<std::size_t>(task));
        const auto& td = job.task_defs.at(static_cast<std::size_t>(task));
        tr.state = TaskRun::State::Submitted;
        if (td.kind == Phase::Kind::Quantum) {
            sim.start_phase(job.index, task, sim.engine().now());
        } else {
            tr.state = TaskRun::State::WaitingNodes;
            NodeRequest req;
            req.job = job.index;
            req.task = task;
            req.nodes_min = req.nodes_max = td.nodes;
            sim.request_resources(req);
        }
    }

    void on_allocation_granted(Simulation& sim, JobRun& job, int task, int) override {
        if (task < 0) throw InternalError("whole-job grant under the workflow policy");
        sim.start_phase(job.index, task, sim.engine().now());
    }

    void on_phase_start(Simulation& sim, JobRun& job, int task) override {
        auto& tr = job.tasks.at(static_cast<std::size_t>(task));
        const auto& td = job.task_defs.at(static_cast<std::size_t>(task));
        tr.state = TaskRun::State::Running;
        if (td.kind == Phase::Kind::Quantum) {
            sim.enqueue_burst(job.index, task, sim.engine().now());
        } else {
            sim.schedule_phase_end(job.index, task, sim.engine().now() + td.duration);
        }
    }

    void on_burst_complete(Simulation& sim, JobRun& job, int task) override {
        sim.schedule_phase_end(job.index, task, sim.engine().now());
    }

    void on_phase_end(Simulation& sim, JobRun& job, int task) override {
        auto& tr = job.tasks.at(static_cast<std::size_t>(task));
        const auto& td = job.task_defs.at(static_cast<std::size_t>(task));
        tr.state = TaskRun::State::Done;
        ++job.tasks_done;
        if (td.kind != Phase::Kind::Quantum) {
            sim.release_job_nodes(job.index, td.nodes);
        }
        for (int succ : tr.successors) {
            auto& next = job.tasks.at(static_cast<std::size_t>(succ));
            if (--next.preds_left == 0) {
                sim.schedule_task_submit(job.index, succ,
                                         sim.engine().now() + sim.overheads().wms_task_overhead);
            }
        }
        if (job.tasks_done == static_cast<int>(job.tasks.size())) {
            sim.finish_job(job.index);
        }
    }

private:
    static void build_tasks(JobRun& job) {
        if (job.def.workflow) {
            job.task_defs = job.def.workflow->tasks;
            job.tasks.assign(job.task_defs.size(), TaskRun{});
            for (const auto& [from, to] : job.def.workflow->deps) {
                job.tasks.at(static_cast<std::size_t>(from)).successors.push_back(to);
                ++job.tasks.at(static_cast<std::size_t>(to)).preds_left;
            }
            return;
        }
        // Default decomposition: a chain with one task per phase.
        job.task_defs.reserve(job.def.phases.size());
        for (std::size_t i = 0; i < job.def.phases.size(); ++i) {
            const Phase& p = job.def.phases[i];
            WorkflowTask td;
            td.name = std::string(to_string(p.kind)) + "-" + std::to_string(i);
            td.kind = p.kind;
            td.nodes = p.kind == Phase::Kind::Classical ? p.nodes : 1;
            td.duration = p.duration;
            td.burst = p.burst;
            td.location = p.kind == Phase::Kind::Quantum ? TaskLocation::QuantumPool
                                                         : TaskLocation::ClassicalPool;
            job.task_defs.push_back(std::move(td));
        }
        job.tasks.assign(job.task_defs.size(), TaskRun{});
        for (std::size_t i = 0; i + 1 < job.task_defs.size(); ++i) {
            job.tasks[i].successors.push_back(static_cast<int>(i + 1));
            ++job.tasks[i + 1].preds_left;
        }
    }
};

} // namespace

std::unique_ptr<PolicyModel> make_policy(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::CoScheduledExclusive: return std::make_unique<ExclusivePolicy>();
        case PolicyKind::StaticOffload: return std::make_unique<StaticOffloadPolicy>();
        case PolicyKind::VQPU: return std::make_unique<VqpuPolicy>();
        case PolicyKind::Malleable: return std::make_unique<MalleablePolicy>();
        case PolicyKind::Workflow: return std::make_unique<WorkflowPolicy>();
    }
    throw InternalError("unknown policy kind");
}

} // namespace qhs
