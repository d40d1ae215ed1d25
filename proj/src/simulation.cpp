#include <qhs/simulation.hpp>

#include <algorithm>
#include <string>

#include <qhs/errors.hpp>

namespace qhs {

Simulation::Simulation(Scenario scenario, bool compute_reference)
    : scenario_(std::move(scenario)),
      compute_reference_(compute_reference),
      cluster_(scenario_.cluster),
      broker_(scenario_.cluster.n_qpus),
      policy_(make_policy(scenario_.policy)) {
    jobs_.reserve(scenario_.jobs.size());
    for (std::size_t i = 0; i < scenario_.jobs.size(); ++i) {
        JobRun run;
        run.def = scenario_.jobs[i];
        run.index = static_cast<int>(i);
        jobs_.push_back(std::move(run));
    }
    trace_.qpu_busy.resize(static_cast<std::size_t>(scenario_.cluster.n_qpus));
}

void Simulation::request_resources(const NodeRequest& req) {
    const auto grant = cluster_.try_allocate(req, engine_.now());
    if (grant) {
        engine_.schedule(engine_.now(), EventKind::AllocationGranted, req.job, req.task,
                         grant->nodes);
    }
}

void Simulation::schedule_grants(const std::vector<ClusterState::PendingGrant>& grants) {
    for (const auto& pg : grants) {
        engine_.schedule(engine_.now(), EventKind::AllocationGranted, pg.request.job,
                         pg.request.task, pg.grant.nodes);
    }
}

void Simulation::release_job_nodes(int job, int count) {
    schedule_grants(cluster_.release_nodes(job, count, engine_.now()));
}

Tick Simulation::reconfigure(int job, int next_phase, int target_nodes) {
    const Tick now = engine_.now();
    const int held = cluster_.nodes_held(job);
    int delta = 0;
    if (target_nodes < held) {
        delta = target_nodes - held;
        engine_.schedule(now, EventKind::ReconfigureStart, job, next_phase, delta);
        release_job_nodes(job, held - target_nodes);
    } else if (target_nodes > held) {
        delta = cluster_.expand_nodes(job, target_nodes - held, now);
        if (delta > 0) {
            engine_.schedule(now, EventKind::ReconfigureStart, job, next_phase, delta);
        }
    }
    if (delta == 0) return now;
    const Tick resume = now + overheads().reconfig_overhead;
    engine_.schedule(resume, EventKind::ReconfigureEnd, job, next_phase, delta);
    return resume;
}

void Simulation::start_phase(int job, int phase, Tick at) {
    engine_.schedule(at, EventKind::PhaseStart, job, phase, cluster_.nodes_held(job));
}

void Simulation::schedule_phase_end(int job, int phase, Tick at) {
    engine_.schedule(at, EventKind::PhaseEnd, job, phase);
}

void Simulation::enqueue_burst(int job, int task, Tick at) {
    engine_.schedule(at, EventKind::QpuEnqueue, job, task);
}

void Simulation::schedule_task_submit(int job, int task, Tick at) {
    engine_.schedule(at, EventKind::TaskSubmit, job, task);
}

void Simulation::finish_job(int job) {
    engine_.schedule(engine_.now(), EventKind::JobEnd, job);
}

Tick Simulation::burst_duration(int job, int task) const {
    const JobRun& run = jobs_.at(static_cast<std::size_t>(job));
    if (!run.task_defs.empty()) {
        return run.task_defs.at(static_cast<std::size_t>(task)).burst.duration;
    }
    return run.def.phases.at(static_cast<std::size_t>(task)).burst.duration;
}

void Simulation::handle_qpu_enqueue(const Event& e) {
    // Defensive policy check: shared-queue access needs the right lease.
    if (scenario_.policy == PolicyKind::VQPU && !cluster_.holds_token(e.job)) {
        throw InternalError("job " + std::to_string(e.job) +
                            " enqueues a circuit without holding a vQPU token");
    }
    int forced = -1;
    if (scenario_.policy == PolicyKind::CoScheduledExclusive) {
        forced = cluster_.locked_qpu(e.job);
        if (forced < 0) {
            throw InternalError("job " + std::to_string(e.job) +
                                " enqueues a circuit without holding the QPU lock");
        }
    }

    QpuQueueEntry entry;
    entry.job = e.job;
    entry.task = e.phase;
    entry.burst = burst_duration(e.job, e.phase);
    entry.enqueue_time = e.time;
    entry.enqueue_seq = e.seq;
    entry.record = static_cast<int>(trace_.bursts.size());

    const auto res = broker_.enqueue(entry, engine_.now(), forced);

    BurstRecord rec;
    rec.job = e.job;
    rec.task = e.phase;
    rec.qpu = res.qpu;
    rec.enqueue_time = e.time;
    rec.enqueue_seq = e.seq;
    trace_.bursts.push_back(rec);

    if (res.start_now) {
        engine_.schedule(engine_.now(), EventKind::QpuServiceStart, e.job, e.phase, res.qpu);
    }
}

void Simulation::handle_service_start(const Event& e) {
    const int qpu = static_cast<int>(e.arg);
    const QpuQueueEntry entry = broker_.begin_service(qpu, engine_.now());
    const Tick wait = engine_.now() - entry.enqueue_time;
    jobs_.at(static_cast<std::size_t>(entry.job)).queue_wait += wait;
    auto& rec = trace_.bursts.at(static_cast<std::size_t>(entry.record));
    rec.service_start = engine_.now();
    engine_.schedule(engine_.now() + entry.burst, EventKind::QpuServiceEnd, entry.job, entry.task,
                     qpu);
}

void Simulation::handle_service_end(const Event& e) {
    const int qpu = static_cast<int>(e.arg);
    const QpuQueueEntry done = broker_.end_service(qpu, engine_.now());
    trace_.bursts.at(static_cast<std::size_t>(done.record)).service_end = engine_.now();
    policy_->on_burst_complete(*this, jobs_.at(static_cast<std::size_t>(done.job)), done.task);
    if (!broker_.queue_empty(qpu)) {
        const QpuQueueEntry& next = broker_.front(qpu);
        engine_.schedule(engine_.now(), EventKind::QpuServiceStart, next.job, next.task, qpu);
    }
}

void Simulation::handle_job_end(const Event& e) {
    JobRun& job = jobs_.at(static_cast<std::size_t>(e.job));
    if (job.status == JobRun::Status::Done) {
        throw InternalError("job " + job.def.id + " ended twice");
    }
    job.status = JobRun::Status::Done;
    job.end_time = engine_.now();
    ++jobs_finished_;

    const int held = cluster_.nodes_held(e.job);
    if (held > 0) release_job_nodes(e.job, held);
    if (cluster_.holds_token(e.job)) schedule_grants(cluster_.release_vqpu(e.job, engine_.now()));
    if (cluster_.locked_qpu(e.job) >= 0) {
        schedule_grants(cluster_.release_qpu_lock(e.job, engine_.now()));
    }
}

void Simulation::dispatch(const Event& e) {
    switch (e.kind) {
        case EventKind::JobSubmit:
            policy_->on_job_submit(*this, jobs_.at(static_cast<std::size_t>(e.job)));
            break;
        case EventKind::AllocationGranted:
            policy_->on_allocation_granted(*this, jobs_.at(static_cast<std::size_t>(e.job)),
                                           e.phase, static_cast<int>(e.arg));
            break;
        case EventKind::PhaseStart:
            policy_->on_phase_start(*this, jobs_.at(static_cast<std::size_t>(e.job)), e.phase);
            break;
        case EventKind::PhaseEnd:
            policy_->on_phase_end(*this, jobs_.at(static_cast<std::size_t>(e.job)), e.phase);
            break;
        case EventKind::QpuEnqueue:
            handle_qpu_enqueue(e);
            break;
        case EventKind::QpuServiceStart:
            handle_service_start(e);
            break;
        case EventKind::QpuServiceEnd:
            handle_service_end(e);
            break;
        case EventKind::ReconfigureStart:
        case EventKind::ReconfigureEnd:
            break; // trace markers
        case EventKind::TaskSubmit:
            policy_->on_task_submit(*this, jobs_.at(static_cast<std::size_t>(e.job)), e.phase);
            break;
        case EventKind::JobEnd:
            handle_job_end(e);
            break;
    }
}

void Simulation::report_deadlock() const {
    std::string msg = "deadlock: event queue empty with unfinished jobs:";
    for (const auto& job : jobs_) {
        if (job.status == JobRun::Status::Done) continue;
        msg += " [" + job.def.id + ": ";
        bool queued = false;
        for (const auto& req : cluster_.queued_requests()) {
            if (req.job != job.index) continue;
            queued = true;
            msg += "waiting for " + std::to_string(req.moldable ? req.nodes_min : req.nodes_max) +
                   " node(s)";
            if (req.want_vqpu) msg += " + vQPU token";
            if (req.want_qpu_lock) msg += " + QPU lock";
            msg += " (free " + std::to_string(cluster_.free_nodes()) + ")";
            break;
        }
        if (!queued) msg += "stalled mid-execution";
        msg += "]";
    }
    throw DeadlockError(msg);
}

RunResult Simulation::run() {
    for (const auto& job : jobs_) {
        engine_.schedule(job.def.submit_time, EventKind::JobSubmit, job.index);
    }

    while (!engine_.empty()) {
        const Event e = engine_.advance();
        trace_.events.push_back(TraceEventRow{e.time, e.seq, e.kind, e.job, e.phase, e.arg});
        dispatch(e);
    }

    if (jobs_finished_ != static_cast<int>(jobs_.size())) {
        report_deadlock();
    }
    cluster_.verify_drained();
    if (!broker_.all_idle()) {
        throw InternalError("run ended with circuits still queued on a QPU");
    }

    trace_.node_ledger = cluster_.node_ledger();
    trace_.token_intervals = cluster_.token_log();
    trace_.qpu_busy = broker_.busy_intervals();
    trace_.jobs.reserve(jobs_.size());
    for (const auto& job : jobs_) {
        trace_.jobs.push_back(JobOutcome{job.def.id, job.def.submit_time, job.end_time,
                                         job.queue_wait});
    }

    const auto audit = audit_trace(trace_, scenario_.cluster);
    if (!audit.ok()) {
        std::string msg = "trace audit failed:";
        for (const auto& v : audit.violations) msg += " " + v + ";";
        throw InternalError(msg);
    }

    std::optional<Tick> reference;
    if (compute_reference_ && !jobs_.empty()) {
        const bool identical = std::all_of(
            scenario_.jobs.begin(), scenario_.jobs.end(),
            [&](const Job& j) { return same_content(j, scenario_.jobs.front()); });
        if (identical) {
            Scenario single = scenario_;
            single.jobs = {scenario_.jobs.front()};
            Simulation sub(std::move(single), false);
            const Tick t_single = sub.run().metrics.total_ticks;
            reference = cosched_reference(t_single, static_cast<int>(jobs_.size()));
        }
    }

    RunResult result;
    result.metrics = compute_metrics(trace_, reference);
    result.trace = std::move(trace_);
    return result;
}

RunResult run_to_completion(const Scenario& scenario) {
    validate_scenario(scenario);
    Simulation sim(scenario);
    return sim.run();
}

} // namespace qhs
