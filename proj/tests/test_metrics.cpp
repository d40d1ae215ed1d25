#include <doctest.h>

#include <cmath>

#include <qhs/errors.hpp>
#include <qhs/metrics.hpp>
#include <qhs/simulation.hpp>
#include <qhs/workload.hpp>

using namespace qhs;

namespace {

Scenario gc_scenario(PolicyKind policy, int n_copies, double sleep_ratio, int iters = 20) {
    Scenario s;
    s.policy = policy;
    s.cluster = ClusterConfig{n_copies, 1, n_copies};
    s.overheads = OverheadConfig{0, 0, 0};
    GcWorkloadConfig cfg;
    cfg.n_copies = n_copies;
    cfg.sleep_ratio = sleep_ratio;
    cfg.n_iterations = iters;
    s.workload = cfg;
    resolve_scenario(s);
    return s;
}

RunTrace synthetic_trace(Tick total, std::vector<Interval> busy) {
    RunTrace trace;
    trace.jobs.push_back(JobOutcome{"j", 0, total, 0});
    trace.qpu_busy.push_back(std::move(busy));
    return trace;
}

} // namespace

TEST_CASE("quantum occupancy is busy time over makespan") {
    SUBCASE("no quantum phases") {
        CHECK(quantum_occupancy(synthetic_trace(10000, {})) == 0.0);
    }

    SUBCASE("two busy windows over ten seconds") {
        const auto trace = synthetic_trace(10000, {{0, 2000}, {5000, 7000}});
        CHECK(quantum_occupancy(trace) == doctest::Approx(0.4).epsilon(1e-12));
    }

    SUBCASE("zero total time is defined as zero") {
        RunTrace empty;
        CHECK(quantum_occupancy(empty) == 0.0);
    }

    SUBCASE("occupancy times total equals quantum time in ticks") {
        const auto trace = synthetic_trace(24000, {{10000, 12000}, {12000, 14000}});
        const auto m = compute_metrics(trace);
        CHECK(m.quantum_occupancy * static_cast<double>(m.total_ticks) ==
              doctest::Approx(static_cast<double>(m.quantum_ticks)).epsilon(1e-12));
    }
}

TEST_CASE("quantum time scales exactly with the replica count") {
    const Tick single = run_to_completion(gc_scenario(PolicyKind::VQPU, 1, 0.0, 5))
                            .metrics.quantum_ticks;
    for (int n : {2, 3, 5}) {
        const auto result = run_to_completion(gc_scenario(PolicyKind::VQPU, n, 0.0, 5));
        CHECK(result.metrics.quantum_ticks == single * n); // integer-exact linearity
    }
}

TEST_CASE("quantum time ignores the classical sleep entirely") {
    const auto r0 = run_to_completion(gc_scenario(PolicyKind::VQPU, 4, 0.0, 5));
    const auto r2 = run_to_completion(gc_scenario(PolicyKind::VQPU, 4, 2.0, 5));
    const auto r5 = run_to_completion(gc_scenario(PolicyKind::VQPU, 4, 5.0, 5));
    CHECK(r0.metrics.quantum_ticks == r2.metrics.quantum_ticks);
    CHECK(r2.metrics.quantum_ticks == r5.metrics.quantum_ticks);
}

TEST_CASE("quantum time does not depend on the policy") {
    const auto vqpu = run_to_completion(gc_scenario(PolicyKind::VQPU, 3, 2.0, 5));
    const auto excl = run_to_completion(gc_scenario(PolicyKind::CoScheduledExclusive, 3, 2.0, 5));
    CHECK(vqpu.metrics.quantum_ticks == excl.metrics.quantum_ticks);
}

TEST_CASE("mean queue time averages per-job cumulative burst waits") {
    SUBCASE("single uncontended job waits nothing") {
        const auto result = run_to_completion(gc_scenario(PolicyKind::VQPU, 1, 0.0, 5));
        CHECK(result.metrics.mean_queue_ms == 0);
    }

    SUBCASE("hand-built waits average with half-up rounding") {
        RunTrace trace;
        trace.jobs.push_back(JobOutcome{"a", 0, 100, 0});
        trace.jobs.push_back(JobOutcome{"b", 0, 100, 1001});
        CHECK(mean_queue_time(trace) == 501);
    }

    SUBCASE("larger classical share shortens the queue at fixed n") {
        const auto r0 = run_to_completion(gc_scenario(PolicyKind::VQPU, 8, 0.0, 10));
        const auto r5 = run_to_completion(gc_scenario(PolicyKind::VQPU, 8, 5.0, 10));
        CHECK(r5.metrics.mean_queue_ms <= r0.metrics.mean_queue_ms);
    }
}

TEST_CASE("total time spans first submit to last completion") {
    RunTrace trace;
    trace.jobs.push_back(JobOutcome{"a", 2000, 10000, 0});
    trace.jobs.push_back(JobOutcome{"b", 0, 9000, 0});
    CHECK(total_time(trace) == 10000);
    CHECK(total_time(RunTrace{}) == 0);
}

TEST_CASE("cosched reference is single-job time times the copy count") {
    CHECK(cosched_reference(1019580, 2) == 2039160);
    // The serialized projection stays within 1% of the measured double run.
    CHECK(std::abs(2039.160 - 2038.43) / 2038.43 < 0.01);
    CHECK(cosched_reference(22000, 1) == 22000);
    CHECK_THROWS_AS(cosched_reference(100, 0), ValidationError);
}

TEST_CASE("runtime distribution is the sorted per-job wall list") {
    SUBCASE("exclusive policy yields the serialization ladder") {
        const auto result =
            run_to_completion(gc_scenario(PolicyKind::CoScheduledExclusive, 4, 0.0, 5));
        const Tick t = result.metrics.per_job_wall.front();
        CHECK(result.metrics.per_job_wall == std::vector<Tick>{t, 2 * t, 3 * t, 4 * t});
    }

    SUBCASE("no vQPU job beats the single-job exclusive time") {
        const Tick t_single =
            run_to_completion(gc_scenario(PolicyKind::CoScheduledExclusive, 1, 0.0, 5))
                .metrics.total_ticks;
        const auto result = run_to_completion(gc_scenario(PolicyKind::VQPU, 6, 0.0, 5));
        CHECK(result.metrics.per_job_wall.front() >= t_single);
    }
}

TEST_CASE("past saturation the marginal mean-queue increase stays bounded") {
    // Once the QPU saturates, each extra replica adds at most its own total
    // service demand to the average wait.
    const int iters = 10;
    const Tick burst = 2000;
    Tick prev = -1;
    for (int n = 12; n <= 16; ++n) {
        const auto result = run_to_completion(gc_scenario(PolicyKind::VQPU, n, 0.0, iters));
        const Tick mean = result.metrics.mean_queue_ms;
        if (prev >= 0) {
            CHECK(mean >= prev);
            CHECK(mean - prev <= iters * burst);
        }
        prev = mean;
    }
}

TEST_CASE("report fields agree with their definitions on the hand trace") {
    Job job;
    job.id = "a";
    job.phases = {Phase::classical(1, 10000), Phase::quantum(2000), Phase::classical(1, 10000)};
    Job other = job;
    other.id = "b";
    Scenario s;
    s.policy = PolicyKind::VQPU;
    s.cluster = ClusterConfig{2, 1, 2};
    s.overheads = OverheadConfig{0, 0, 0};
    TraceWorkloadConfig cfg;
    cfg.jobs = {job, other};
    s.workload = cfg;
    s.jobs = {job, other};
    const auto result = run_to_completion(s);
    CHECK(result.metrics.total_ticks == 24000);
    CHECK(result.metrics.quantum_ticks == 4000);
    CHECK(result.metrics.quantum_occupancy == doctest::Approx(4.0 / 24.0).epsilon(1e-12));
    CHECK(result.metrics.mean_queue_ms == 1000);
    CHECK(result.metrics.per_job_wall == std::vector<Tick>{22000, 24000});
    REQUIRE(result.metrics.cosched_reference_ticks.has_value());
    CHECK(*result.metrics.cosched_reference_ticks == 44000);

    s.policy = PolicyKind::CoScheduledExclusive;
    const auto excl = run_to_completion(s);
    CHECK(excl.metrics.quantum_occupancy == doctest::Approx(4.0 / 44.0).epsilon(1e-12));
}
