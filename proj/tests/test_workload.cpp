#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include <qhs/errors.hpp>
#include <qhs/scenario_io.hpp>
#include <qhs/simulation.hpp>
#include <qhs/workload.hpp>

using namespace qhs;

TEST_CASE("gc replicas: sleep stretches the classical phase, never the burst") {
    GcReplicaParams params;
    params.n_copies = 1;
    params.sleep_ratio = 0.0;
    params.n_iterations = 2;
    params.burst_duration = 2000;
    params.base_classical = 1000;

    SUBCASE("zero ratio adds nothing") {
        const auto jobs = gen_gc_replicas(params);
        REQUIRE(jobs.size() == 1);
        REQUIRE(jobs[0].phases.size() == 4);
        CHECK(jobs[0].phases[0].kind == Phase::Kind::Quantum);
        CHECK(jobs[0].phases[0].burst.duration == 2000);
        CHECK(jobs[0].phases[1].kind == Phase::Kind::Classical);
        CHECK(jobs[0].phases[1].duration == 1000);
    }

    SUBCASE("ratio 2 doubles the burst into the classical time") {
        params.sleep_ratio = 2.0;
        const auto jobs = gen_gc_replicas(params);
        CHECK(jobs[0].phases[1].duration == 5000); // 1000 + 2 * 2000
        CHECK(jobs[0].phases[0].burst.duration == 2000);
    }

    SUBCASE("negative ratio is rejected") {
        params.sleep_ratio = -0.5;
        CHECK_THROWS_AS(gen_gc_replicas(params), ValidationError);
    }
}

TEST_CASE("gc replicas are content-identical across copies") {
    GcReplicaParams params;
    params.n_copies = 6;
    params.sleep_ratio = 2.0;
    params.n_iterations = 4;
    const auto jobs = gen_gc_replicas(params);
    REQUIRE(jobs.size() == 6);
    for (const auto& job : jobs) {
        CHECK(same_content(job, jobs[0]));
        CHECK(content_hash(job) == content_hash(jobs[0]));
    }
    CHECK(jobs[0].id != jobs[1].id);
}

TEST_CASE("per-job jitter streams do not depend on the copy count") {
    GcReplicaParams params;
    params.n_copies = 3;
    params.jitter_sigma = 0.2;
    params.seed = 42;
    const auto three = gen_gc_replicas(params);
    params.n_copies = 8;
    const auto eight = gen_gc_replicas(params);
    for (std::size_t k = 0; k < 3; ++k) {
        CHECK(same_content(three[k], eight[k]));
    }
    CHECK_FALSE(same_content(eight[0], eight[1])); // jitter differentiates copies
}

TEST_CASE("total quantum work is n_copies x iterations x burst, policy-independent") {
    for (PolicyKind policy : {PolicyKind::StaticOffload, PolicyKind::VQPU}) {
        Scenario s;
        s.policy = policy;
        s.cluster = ClusterConfig{4, 1, 4};
        s.overheads = OverheadConfig{0, 0, 0};
        GcWorkloadConfig cfg;
        cfg.n_copies = 4;
        cfg.n_iterations = 6;
        cfg.burst_ms = 1500;
        s.workload = cfg;
        resolve_scenario(s);
        const auto result = run_to_completion(s);
        CHECK(result.metrics.quantum_ticks == 4 * 6 * 1500);
    }
}

TEST_CASE("clustering job structure") {
    ClusteringParams params;
    params.quantum_duration = 120000;
    for (auto& iter : params.classical_durs) iter = {400, 900, 1000};
    params.serial_durs = {500, 500, 500, 500};

    SUBCASE("four iterations of clustering, solve, score") {
        const auto job = gen_clustering_aggregation(params);
        REQUIRE(job.phases.size() == 12);
        for (int it = 0; it < 4; ++it) {
            CHECK(job.phases[static_cast<std::size_t>(3 * it)].kind == Phase::Kind::Classical);
            CHECK(job.phases[static_cast<std::size_t>(3 * it)].nodes == 3);
            CHECK(job.phases[static_cast<std::size_t>(3 * it)].duration == 1000); // slowest of 3
            CHECK(job.phases[static_cast<std::size_t>(3 * it + 1)].kind == Phase::Kind::Quantum);
            CHECK(job.phases[static_cast<std::size_t>(3 * it + 2)].kind == Phase::Kind::Serial);
        }
        CHECK(job.nodes_min == 1);
    }

    SUBCASE("non-positive durations are rejected") {
        params.serial_durs[2] = 0;
        CHECK_THROWS_AS(gen_clustering_aggregation(params), ValidationError);
    }

    SUBCASE("all durations one tick run in 12 ticks uncontended") {
        for (auto& iter : params.classical_durs) iter = {1, 1, 1};
        params.serial_durs = {1, 1, 1, 1};
        params.quantum_duration = 1;
        Job job = gen_clustering_aggregation(params);
        job.id = "tiny";
        Scenario s;
        s.policy = PolicyKind::StaticOffload;
        s.cluster = ClusterConfig{3, 1, 0};
        s.overheads = OverheadConfig{0, 0, 0};
        TraceWorkloadConfig cfg;
        cfg.jobs = {job};
        s.workload = cfg;
        s.jobs = {job};
        const auto result = run_to_completion(s);
        CHECK(result.metrics.total_ticks == 12);
    }
}

TEST_CASE("quantum-phase duration shifts wall time one-for-one") {
    auto scenario = [](Tick delta) {
        Scenario s;
        s.policy = PolicyKind::StaticOffload;
        s.cluster = ClusterConfig{3, 1, 0};
        s.overheads = OverheadConfig{0, 0, 0};
        ClusteringWorkloadConfig cfg;
        cfg.quantum_duration_ms = delta;
        s.workload = cfg;
        resolve_scenario(s);
        return s;
    };
    const auto slow = run_to_completion(scenario(120000));
    const auto fast = run_to_completion(scenario(400));
    CHECK(slow.metrics.total_ticks - fast.metrics.total_ticks == 4 * (120000 - 400));
}

TEST_CASE("calibration solves the published table into per-iteration durations") {
    const auto cal = calibrate_clustering(reference_observations());

    SUBCASE("solution matches the closed-form substitution") {
        CHECK(cal.c3_seconds == doctest::Approx(314.085).epsilon(1e-9));
        CHECK(cal.c1_seconds == doctest::Approx(225.495).epsilon(1e-9));
        // wall = C3 + C1 + 4 * 120 reproduces the measured baseline wall.
        CHECK(cal.c3_seconds + cal.c1_seconds + 480.0 == doctest::Approx(1019.58));
    }

    SUBCASE("per-iteration ticks sum exactly to the totals") {
        std::int64_t c3 = 0, c1 = 0;
        for (int it = 0; it < 4; ++it) {
            c3 += cal.classical_durs[static_cast<std::size_t>(it)][2];
            c1 += cal.serial_durs[static_cast<std::size_t>(it)];
        }
        CHECK(c3 == 314085);
        CHECK(c1 == 225495);
    }

    SUBCASE("k-means is the fastest algorithm in every iteration") {
        for (const auto& iter : cal.classical_durs) {
            CHECK(iter[0] < iter[1]);
            CHECK(iter[1] < iter[2]);
        }
    }

    SUBCASE("zero-delta node-seconds stay consistent with the short-burst table") {
        CHECK(std::abs(3.0 * 539.44 - 1618.33) <= 1.60);
    }

    SUBCASE("inconsistent observations raise a calibration error") {
        auto bad = reference_observations();
        bad.malleable_nodesec_high = 400.0; // would force C3 < 0
        CHECK_THROWS_AS(calibrate_clustering(bad), CalibrationError);
        auto drifted = reference_observations();
        drifted.baseline_wall_low_s = 800.0; // residual far above tolerance
        CHECK_THROWS_AS(calibrate_clustering(drifted), CalibrationError);
    }
}

TEST_CASE("trace files load through the scenario job schema") {
    const char* path = "qhs_test_trace.json";

    SUBCASE("empty job array is a valid zero-job scenario") {
        std::ofstream(path) << R"({"jobs": []})";
        CHECK(load_trace(path).empty());
    }

    SUBCASE("duplicate job ids are rejected at scenario level") {
        const std::string text = R"({
          "policy": "static_offload",
          "cluster": {"n_nodes": 1},
          "workload": {"trace": {"jobs": [
            {"id": "dup", "phases": [{"serial": {"duration_ms": 5}}]},
            {"id": "dup", "phases": [{"serial": {"duration_ms": 5}}]}
          ]}}
        })";
        CHECK_THROWS_WITH_AS(parse_scenario_text(text), doctest::Contains("duplicate"),
                             ValidationError);
    }

    SUBCASE("out-of-order submit times are accepted and sorted by the engine") {
        std::ofstream(path) << R"({"jobs": [
          {"id": "late", "submit_ms": 5000, "phases": [{"serial": {"duration_ms": 10}}]},
          {"id": "early", "submit_ms": 0, "phases": [{"serial": {"duration_ms": 10}}]}
        ]})";
        const auto jobs = load_trace(path);
        REQUIRE(jobs.size() == 2);
        Scenario s;
        s.policy = PolicyKind::StaticOffload;
        s.cluster = ClusterConfig{1, 1, 0};
        TraceWorkloadConfig cfg;
        cfg.jobs = jobs;
        s.workload = cfg;
        s.jobs = jobs;
        const auto result = run_to_completion(s);
        CHECK(result.trace.events.front().job == 1); // "early" submits first
        CHECK(result.metrics.total_ticks == 5010);
    }

    std::remove(path);
}
