#pragma once

#include <memory>
#include <optional>
#include <string_view>

#include <qhs/job.hpp>
#include <qhs/ticks.hpp>

namespace qhs {

enum class PolicyKind {
    CoScheduledExclusive,
    StaticOffload,
    VQPU,
    Malleable,
    Workflow,
};

const char* to_string(PolicyKind kind);
std::optional<PolicyKind> policy_from_string(std::string_view name);

struct OverheadConfig {
    Tick reconfig_overhead{2000};   // per reconfiguration that changes the node count
    Tick wms_task_overhead{3200};   // per-task submission latency under Workflow
    Tick job_init_overhead{0};      // per-job scheduler init/finalize window
};

bool operator==(const OverheadConfig& a, const OverheadConfig& b);

/// Linear-speedup scaling for under-provisioned moldable classical phases:
/// base * nodes_req / nodes_granted, rounded up to the next tick.
Tick moldable_duration(Tick base, int nodes_req, int nodes_granted);

class Simulation;
struct JobRun;

/// One resource-allocation strategy: a handler set over the shared event
/// engine and cluster model. Handlers are pure of hidden state; everything
/// they need lives in the Simulation and the JobRun.
class PolicyModel {
public:
    virtual ~PolicyModel() = default;

    virtual void on_job_submit(Simulation& sim, JobRun& job) = 0;
    virtual void on_allocation_granted(Simulation& sim, JobRun& job, int task, int nodes) = 0;
    virtual void on_phase_start(Simulation& sim, JobRun& job, int phase) = 0;
    virtual void on_phase_end(Simulation& sim, JobRun& job, int phase) = 0;
    virtual void on_burst_complete(Simulation& sim, JobRun& job, int task) = 0;
    virtual void on_task_submit(Simulation& sim, JobRun& job, int task);

    virtual const char* name() const = 0;
};

std::unique_ptr<PolicyModel> make_policy(PolicyKind kind);

} // namespace qhs
