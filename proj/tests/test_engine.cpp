#include <doctest.h>

#include <qhs/csv.hpp>
#include <qhs/engine.hpp>
#include <qhs/errors.hpp>
#include <qhs/rng.hpp>
#include <qhs/simulation.hpp>

using namespace qhs;

namespace {

Job three_phase_job(const std::string& id) {
    Job job;
    job.id = id;
    job.submit_time = 0;
    job.phases = {Phase::classical(1, 10000), Phase::quantum(2000), Phase::classical(1, 10000)};
    return job;
}

Scenario trace_scenario(PolicyKind policy, std::vector<Job> jobs, int n_nodes, int n_qpus = 1) {
    Scenario s;
    s.policy = policy;
    s.cluster.n_nodes = n_nodes;
    s.cluster.n_qpus = n_qpus;
    s.overheads = OverheadConfig{0, 0, 0};
    TraceWorkloadConfig cfg;
    cfg.jobs = jobs;
    s.workload = cfg;
    s.jobs = std::move(jobs);
    s.cluster.n_vqpus = static_cast<int>(s.jobs.size());
    return s;
}

} // namespace

TEST_CASE("event queue pops in (time, seq) order") {
    Engine engine;

    SUBCASE("singleton") {
        engine.schedule(5, EventKind::JobSubmit, 0);
        const Event e = engine.advance();
        CHECK(e.time == 5);
        CHECK(engine.now() == 5);
        CHECK(engine.empty());
    }

    SUBCASE("seq breaks time ties") {
        engine.schedule(5, EventKind::JobSubmit, 1);
        engine.schedule(5, EventKind::JobSubmit, 2);
        CHECK(engine.advance().job == 1);
        CHECK(engine.advance().job == 2);
    }

    SUBCASE("time dominates insertion order") {
        engine.schedule(7, EventKind::JobSubmit, 1);
        engine.schedule(5, EventKind::JobSubmit, 2);
        CHECK(engine.advance().job == 2);
        CHECK(engine.advance().job == 1);
    }
}

TEST_CASE("scheduling into the past is fatal") {
    Engine engine;
    engine.schedule(5, EventKind::JobSubmit, 0);
    engine.advance();
    CHECK_THROWS_AS(engine.schedule(3, EventKind::JobSubmit, 0), InternalError);
    CHECK_NOTHROW(engine.schedule(5, EventKind::JobSubmit, 0)); // same tick is fine
}

TEST_CASE("advance on an empty queue is fatal") {
    Engine engine;
    CHECK_THROWS_AS(engine.advance(), InternalError);
}

TEST_CASE("processed event times are non-decreasing") {
    Engine engine;
    auto rng = Xoshiro256ss::stream(99, 0);
    Tick scheduled_after = 0;
    for (int i = 0; i < 200; ++i) {
        engine.schedule(scheduled_after + static_cast<Tick>(rng.next_below(1000)),
                        EventKind::JobSubmit, i);
    }
    Tick prev = 0;
    for (int i = 0; i < 100; ++i) {
        const Event e = engine.advance();
        CHECK(e.time >= prev);
        prev = e.time;
        // Interleave fresh insertions at or after the current clock.
        engine.schedule(prev + static_cast<Tick>(rng.next_below(1000)), EventKind::JobSubmit, i);
    }
}

TEST_CASE("single co-scheduled job runs back to back") {
    auto s = trace_scenario(PolicyKind::CoScheduledExclusive, {three_phase_job("a")}, 1);
    const auto result = run_to_completion(s);
    CHECK(result.metrics.total_ticks == 22000);
    CHECK(result.metrics.quantum_ticks == 2000);
    CHECK(result.metrics.mean_queue_ms == 0);
    // One node held for the whole job, QPU busy only for the burst.
    CHECK(result.metrics.node_ms == 22000);
    CHECK(result.trace.qpu_busy[0] == std::vector<Interval>{{10000, 12000}});
}

TEST_CASE("two co-scheduled jobs serialize on the QPU lock") {
    auto s = trace_scenario(PolicyKind::CoScheduledExclusive,
                            {three_phase_job("a"), three_phase_job("b")}, 2);
    const auto result = run_to_completion(s);
    CHECK(result.metrics.total_ticks == 44000);
    CHECK(result.metrics.per_job_wall == std::vector<Tick>{22000, 44000});
    CHECK(result.metrics.node_ms == 44000); // each copy holds its node for 22000
}

TEST_CASE("two vQPU jobs interleave bursts back to back") {
    auto s = trace_scenario(PolicyKind::VQPU, {three_phase_job("a"), three_phase_job("b")}, 2);
    const auto result = run_to_completion(s);
    CHECK(result.metrics.total_ticks == 24000);
    CHECK(result.metrics.mean_queue_ms == 1000);
    CHECK(result.metrics.per_job_wall == std::vector<Tick>{22000, 24000});
    // Bursts served at 10000 and 12000.
    REQUIRE(result.trace.bursts.size() == 2);
    CHECK(result.trace.bursts[0].service_start == 10000);
    CHECK(result.trace.bursts[1].service_start == 12000);
}

TEST_CASE("identical scenarios produce byte-identical traces and metrics") {
    auto s = trace_scenario(PolicyKind::VQPU, {three_phase_job("a"), three_phase_job("b")}, 2);
    const auto r1 = run_to_completion(s);
    const auto r2 = run_to_completion(s);
    CHECK(trace_csv(r1.trace) == trace_csv(r2.trace));
    CHECK(jobs_csv(r1.trace) == jobs_csv(r2.trace));
    CHECK(metrics_csv(r1.metrics, s.policy, 2) == metrics_csv(r2.metrics, s.policy, 2));
}

TEST_CASE("zero jobs complete immediately with zero totals") {
    auto s = trace_scenario(PolicyKind::VQPU, {}, 2);
    const auto result = run_to_completion(s);
    CHECK(result.metrics.total_ticks == 0);
    CHECK(result.metrics.quantum_ticks == 0);
    CHECK(result.trace.events.empty());
}

TEST_CASE("starved jobs are reported as deadlock, not ignored") {
    // Bypasses validation: vqpu policy with an empty token pool can never
    // admit the job, so the event queue drains with work outstanding.
    auto s = trace_scenario(PolicyKind::VQPU, {three_phase_job("starved")}, 2);
    s.cluster.n_vqpus = 0;
    Simulation sim(s);
    CHECK_THROWS_WITH_AS(sim.run(), doctest::Contains("starved"), DeadlockError);
}

TEST_CASE("clock monotonicity holds over a full run") {
    auto s = trace_scenario(PolicyKind::VQPU, {three_phase_job("a"), three_phase_job("b")}, 2);
    const auto result = run_to_completion(s);
    for (std::size_t i = 1; i < result.trace.events.size(); ++i) {
        CHECK(result.trace.events[i].time >= result.trace.events[i - 1].time);
    }
}
