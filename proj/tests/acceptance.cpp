// Acceptance suite: runs every release criterion at its stated tolerance
// and prints one pass/fail line per criterion.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <qhs/annealing.hpp>
#include <qhs/csv.hpp>
#include <qhs/metrics.hpp>
#include <qhs/qubo.hpp>
#include <qhs/rng.hpp>
#include <qhs/simulation.hpp>
#include <qhs/workload.hpp>

using namespace qhs;

namespace {

struct Criterion {
    std::string name;
    std::function<void(std::ostringstream&)> run; // throws or appends failures
};

std::vector<std::string> g_failures;

#define EXPECT(cond, detail)                                                 \
    do {                                                                     \
        if (!(cond)) {                                                       \
            out << "    FAIL: " << detail << " [" << #cond << "]\n";         \
        }                                                                    \
    } while (0)

Scenario gc_scenario(PolicyKind policy, int n_copies, double sleep_ratio) {
    Scenario s;
    s.seed = 1;
    s.policy = policy;
    s.cluster = ClusterConfig{n_copies, 1, n_copies};
    s.overheads = OverheadConfig{0, 0, 0};
    GcWorkloadConfig cfg;
    cfg.n_copies = n_copies;
    cfg.sleep_ratio = sleep_ratio;
    cfg.n_iterations = 20;
    cfg.burst_ms = 2000;
    cfg.base_classical_ms = 1000;
    s.workload = cfg;
    resolve_scenario(s);
    validate_scenario(s);
    return s;
}

Scenario clustering_scenario(PolicyKind policy, int n_jobs, Tick delta_q,
                             OverheadConfig overheads = OverheadConfig{}) {
    Scenario s;
    s.seed = 1;
    s.policy = policy;
    s.cluster = ClusterConfig{3, 1, n_jobs};
    s.overheads = overheads;
    ClusteringWorkloadConfig cfg;
    cfg.quantum_duration_ms = delta_q;
    cfg.n_jobs = n_jobs;
    s.workload = cfg;
    resolve_scenario(s);
    validate_scenario(s);
    return s;
}

Scenario hand_trace_scenario(PolicyKind policy) {
    Job job;
    job.id = "a";
    job.phases = {Phase::classical(1, 10000), Phase::quantum(2000), Phase::classical(1, 10000)};
    Job other = job;
    other.id = "b";
    Scenario s;
    s.policy = policy;
    s.cluster = ClusterConfig{2, 1, 2};
    s.overheads = OverheadConfig{0, 0, 0};
    TraceWorkloadConfig cfg;
    cfg.jobs = {job, other};
    s.workload = cfg;
    s.jobs = {job, other};
    validate_scenario(s);
    return s;
}

void criterion_vqpu_trends(std::ostringstream& out) {
    const std::vector<double> ratios = {0.0, 2.0, 5.0};
    // results[r][n-1]
    std::vector<std::vector<MetricsReport>> results(ratios.size());
    for (std::size_t r = 0; r < ratios.size(); ++r) {
        for (int n = 1; n <= 16; ++n) {
            results[r].push_back(
                run_to_completion(gc_scenario(PolicyKind::VQPU, n, ratios[r])).metrics);
        }
    }

    // (a) quantum time exactly linear in n_copies.
    for (std::size_t r = 0; r < ratios.size(); ++r) {
        const Tick single = results[r][0].quantum_ticks;
        for (int n = 1; n <= 16; ++n) {
            const Tick qt = results[r][static_cast<std::size_t>(n - 1)].quantum_ticks;
            EXPECT(qt == single * n, "quantum time not linear at R=" << ratios[r] << " n=" << n);
            const double rel = std::abs(static_cast<double>(qt) -
                                        static_cast<double>(single) * n) /
                               (static_cast<double>(single) * n);
            EXPECT(rel < 1e-9, "relative deviation " << rel);
        }
    }

    // (b) quantum time identical across R.
    for (int n = 1; n <= 16; ++n) {
        const Tick base = results[0][static_cast<std::size_t>(n - 1)].quantum_ticks;
        for (std::size_t r = 1; r < ratios.size(); ++r) {
            EXPECT(results[r][static_cast<std::size_t>(n - 1)].quantum_ticks == base,
                   "quantum time differs across R at n=" << n);
        }
    }

    // (c) occupancy non-decreasing in n; >= 0.95 at n=16 for R=0.
    for (std::size_t r = 0; r < ratios.size(); ++r) {
        for (int n = 2; n <= 16; ++n) {
            const auto& cur = results[r][static_cast<std::size_t>(n - 1)];
            const auto& prev = results[r][static_cast<std::size_t>(n - 2)];
            // qt_n / tt_n >= qt_prev / tt_prev, compared in exact integers.
            EXPECT(cur.quantum_ticks * prev.total_ticks >= prev.quantum_ticks * cur.total_ticks,
                   "occupancy decreased at R=" << ratios[r] << " n=" << n);
        }
    }
    const auto& r0n16 = results[0][15];
    EXPECT(100 * r0n16.quantum_ticks >= 95 * r0n16.total_ticks,
           "occupancy at n=16, R=0 is " << r0n16.quantum_occupancy);

    // (d) total_time(vqpu, n) <= cosched reference, equality at n=1.
    for (std::size_t r = 0; r < ratios.size(); ++r) {
        for (int n = 1; n <= 16; ++n) {
            const auto& m = results[r][static_cast<std::size_t>(n - 1)];
            if (!m.cosched_reference_ticks) {
                EXPECT(false, "missing cosched reference at R=" << ratios[r] << " n=" << n);
                continue;
            }
            EXPECT(m.total_ticks <= *m.cosched_reference_ticks,
                   "vqpu total exceeds the reference at R=" << ratios[r] << " n=" << n);
            if (n == 1) {
                EXPECT(m.total_ticks == *m.cosched_reference_ticks,
                       "no equality at n=1, R=" << ratios[r]);
            }
        }
    }

    // (e) speedup ratio at n=16 strictly increasing in R.
    for (std::size_t r = 1; r < ratios.size(); ++r) {
        const auto& lo = results[r - 1][15];
        const auto& hi = results[r][15];
        // ref_hi/total_hi > ref_lo/total_lo via cross-multiplication.
        EXPECT(*hi.cosched_reference_ticks * lo.total_ticks >
                   *lo.cosched_reference_ticks * hi.total_ticks,
               "speedup not increasing from R=" << ratios[r - 1] << " to R=" << ratios[r]);
    }

    // (f) some job is individually slower than its exclusive-schedule
    // counterpart while the cluster total still wins.
    for (std::size_t r = 0; r < ratios.size(); ++r) {
        const Tick t_excl =
            run_to_completion(gc_scenario(PolicyKind::CoScheduledExclusive, 1, ratios[r]))
                .metrics.total_ticks;
        for (int n = 2; n <= 16; ++n) {
            const auto& m = results[r][static_cast<std::size_t>(n - 1)];
            EXPECT(m.per_job_wall.back() > t_excl,
                   "no delayed job at R=" << ratios[r] << " n=" << n);
            EXPECT(m.total_ticks < *m.cosched_reference_ticks,
                   "no cluster-level win at R=" << ratios[r] << " n=" << n);
        }
    }
}

void criterion_hand_trace(std::ostringstream& out) {
    const auto vqpu = run_to_completion(hand_trace_scenario(PolicyKind::VQPU));
    EXPECT(vqpu.metrics.total_ticks == 24000,
           "vqpu total is " << format_seconds(vqpu.metrics.total_ticks));
    EXPECT(vqpu.metrics.mean_queue_ms == 1000,
           "mean queue is " << format_seconds(vqpu.metrics.mean_queue_ms));
    EXPECT(vqpu.metrics.quantum_ticks == 4000 && vqpu.metrics.total_ticks == 24000,
           "occupancy is not 4/24");
    EXPECT(format_fraction(vqpu.metrics.quantum_ticks, vqpu.metrics.total_ticks, 6) ==
               "0.166667",
           "occupancy renders as "
               << format_fraction(vqpu.metrics.quantum_ticks, vqpu.metrics.total_ticks, 6));

    const auto excl = run_to_completion(hand_trace_scenario(PolicyKind::CoScheduledExclusive));
    EXPECT(excl.metrics.total_ticks == 44000,
           "exclusive total is " << format_seconds(excl.metrics.total_ticks));
}

void criterion_calibration(std::ostringstream& out) {
    auto within = [](double value, double target, double tol) {
        return std::abs(value - target) <= tol * target;
    };

    const auto single =
        run_to_completion(clustering_scenario(PolicyKind::StaticOffload, 1, 120000));
    EXPECT(within(single.metrics.total_time_s(), 1019.58, 0.02),
           "baseline single wall " << single.metrics.total_time_s());
    EXPECT(within(single.metrics.node_seconds(), 3058.74, 0.02),
           "baseline single node-seconds " << single.metrics.node_seconds());

    const auto dual =
        run_to_completion(clustering_scenario(PolicyKind::StaticOffload, 2, 120000));
    EXPECT(within(static_cast<double>(dual.metrics.total_ticks),
                  2.0 * static_cast<double>(single.metrics.total_ticks), 0.01),
           "baseline double wall " << dual.metrics.total_time_s());

    const auto short_q =
        run_to_completion(clustering_scenario(PolicyKind::StaticOffload, 1, 400));
    EXPECT(within(short_q.metrics.total_time_s(), 539.44, 0.02),
           "short-burst wall " << short_q.metrics.total_time_s());
}

void criterion_resource_ordering(std::ostringstream& out) {
    const auto base =
        run_to_completion(clustering_scenario(PolicyKind::StaticOffload, 2, 120000));
    const auto mall = run_to_completion(clustering_scenario(PolicyKind::Malleable, 2, 120000));
    const auto wf = run_to_completion(clustering_scenario(PolicyKind::Workflow, 2, 120000));

    EXPECT(wf.metrics.node_ms < mall.metrics.node_ms,
           "workflow " << wf.metrics.node_seconds() << " !< malleable "
                       << mall.metrics.node_seconds());
    EXPECT(mall.metrics.node_ms < base.metrics.node_ms,
           "malleable " << mall.metrics.node_seconds() << " !< baseline "
                        << base.metrics.node_seconds());

    const double wf_saving =
        1.0 - static_cast<double>(wf.metrics.node_ms) / static_cast<double>(base.metrics.node_ms);
    const double mall_saving =
        1.0 -
        static_cast<double>(mall.metrics.node_ms) / static_cast<double>(base.metrics.node_ms);
    EXPECT(std::abs(wf_saving - 0.64) <= 0.10, "workflow saving " << wf_saving);
    EXPECT(std::abs(mall_saving - 0.457) <= 0.10, "malleable saving " << mall_saving);

    EXPECT(static_cast<double>(mall.metrics.total_ticks) <=
               1.05 * static_cast<double>(base.metrics.total_ticks),
           "malleable wall penalty above 5%: " << mall.metrics.total_time_s() << " vs "
                                               << base.metrics.total_time_s());
}

void criterion_zero_overhead_dominance(std::ostringstream& out) {
    auto rng = Xoshiro256ss::stream(20250810, 0);
    const OverheadConfig zero{0, 0, 0};
    for (int trial = 0; trial < 50; ++trial) {
        ClusteringWorkloadConfig cfg;
        cfg.quantum_duration_ms = 100 + static_cast<Tick>(rng.next_below(200000));
        std::array<std::array<Tick, 3>, 4> classical{};
        std::array<Tick, 4> serial{};
        for (int it = 0; it < 4; ++it) {
            for (int a = 0; a < 3; ++a) {
                classical[static_cast<std::size_t>(it)][static_cast<std::size_t>(a)] =
                    1000 + static_cast<Tick>(rng.next_below(200000));
            }
            serial[static_cast<std::size_t>(it)] = 500 + static_cast<Tick>(rng.next_below(100000));
        }
        cfg.classical_ms = classical;
        cfg.serial_ms = serial;
        cfg.n_jobs = 1 + static_cast<int>(rng.next_below(2));

        auto make = [&](PolicyKind policy) {
            Scenario s;
            s.seed = rng.next();
            s.policy = policy;
            s.cluster = ClusterConfig{3, 1, cfg.n_jobs};
            s.overheads = zero;
            s.workload = cfg;
            resolve_scenario(s);
            // One seed per trial, shared by the three policies.
            return s;
        };
        const std::uint64_t trial_seed = rng.next();
        auto sb = make(PolicyKind::StaticOffload);
        auto sm = make(PolicyKind::Malleable);
        auto sw = make(PolicyKind::Workflow);
        sb.seed = sm.seed = sw.seed = trial_seed;

        const auto base = run_to_completion(sb);
        const auto mall = run_to_completion(sm);
        const auto wf = run_to_completion(sw);

        EXPECT(wf.metrics.node_ms <= mall.metrics.node_ms,
               "trial " << trial << ": workflow node-s above malleable");
        EXPECT(mall.metrics.node_ms <= base.metrics.node_ms,
               "trial " << trial << ": malleable node-s above baseline");
        if (cfg.n_jobs == 1) {
            EXPECT(mall.metrics.total_ticks == base.metrics.total_ticks,
                   "trial " << trial << ": single-job malleable wall differs from baseline");
        }
    }
}

void criterion_qubo_oracle(std::ostringstream& out) {
    auto rng = Xoshiro256ss::stream(424242, 0);
    int sa_hits = 0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
        const int n = 1 + static_cast<int>(rng.next_below(12));
        const double p = 0.2 + 0.2 * static_cast<double>(rng.next_below(3));
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u) {
            for (int v = u + 1; v < n; ++v) {
                if (rng.next_double() < p) edges.emplace_back(u, v);
            }
        }
        const auto graph = Graph::make(n, std::move(edges));
        const auto q = build_mis_qubo(graph, 2.0);

        // Route 1: exhaustive minimum over all assignments.
        double best = 0.0;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<std::uint8_t> x(static_cast<std::size_t>(n), 0);
            for (int v = 0; v < n; ++v) x[static_cast<std::size_t>(v)] = (mask >> v) & 1u;
            best = std::min(best, qubo_energy(q, x));
        }
        // Route 2: independent-set enumeration.
        const auto mis = brute_force_mis(graph);
        EXPECT(best == -static_cast<double>(mis.size),
               "trial " << trial << ": enumeration " << best << " vs MIS " << mis.size);

        SaSchedule schedule;
        schedule.seed = rng.next();
        if (sa_solve(q, schedule).energy == -static_cast<double>(mis.size)) ++sa_hits;
    }
    EXPECT(sa_hits >= 180, "SA hit only " << sa_hits << "/" << trials);

    for (int trial = 0; trial < 30; ++trial) {
        ClusteredGraphSpec spec;
        spec.separators = static_cast<int>(rng.next_below(4));
        spec.max_component = 1 + static_cast<int>(rng.next_below(6));
        spec.clusters = 1 + static_cast<int>(rng.next_below(5));
        spec.intra_edge_prob = rng.next_double();
        spec.seed = rng.next();
        const auto cg = gen_clustered_graph(spec);
        EXPECT(satisfies_separator_bound(cg.graph, cg.separator_vertices, spec.max_component),
               "clustered graph " << trial << " violates its component bound");
    }
}

void criterion_determinism(std::ostringstream& out) {
    std::vector<std::pair<std::string, Scenario>> battery;
    battery.emplace_back("hand-trace vqpu", hand_trace_scenario(PolicyKind::VQPU));
    battery.emplace_back("hand-trace exclusive",
                         hand_trace_scenario(PolicyKind::CoScheduledExclusive));
    battery.emplace_back("gc n=16 R=5", gc_scenario(PolicyKind::VQPU, 16, 5.0));
    battery.emplace_back("clustering baseline dual",
                         clustering_scenario(PolicyKind::StaticOffload, 2, 120000));
    battery.emplace_back("clustering malleable dual",
                         clustering_scenario(PolicyKind::Malleable, 2, 120000));
    battery.emplace_back("clustering workflow dual",
                         clustering_scenario(PolicyKind::Workflow, 2, 120000));

    for (const auto& [name, scenario] : battery) {
        const auto r1 = run_to_completion(scenario);
        const auto r2 = run_to_completion(scenario);
        EXPECT(trace_csv(r1.trace) == trace_csv(r2.trace), name << ": traces differ");
        EXPECT(jobs_csv(r1.trace) == jobs_csv(r2.trace), name << ": job tables differ");
        EXPECT(metrics_csv(r1.metrics, scenario.policy, r1.trace.jobs.size()) ==
                   metrics_csv(r2.metrics, scenario.policy, r2.trace.jobs.size()),
               name << ": metrics differ");
        const auto audit = audit_trace(r1.trace, scenario.cluster);
        EXPECT(audit.ok(), name << ": " << (audit.ok() ? "" : audit.violations.front()));
    }
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"vQPU trend suite (linearity, occupancy, totals, speedup, tails)",
         criterion_vqpu_trends},
        {"hand-trace oracle (24 s / 1 s / 4-24 vqpu; 44 s exclusive)", criterion_hand_trace},
        {"clustering calibration consistency (walls and node-seconds)", criterion_calibration},
        {"resource-saving ordering and savings bands on the dual workload",
         criterion_resource_ordering},
        {"zero-overhead dominance on 50 randomized clustering workloads",
         criterion_zero_overhead_dominance},
        {"QUBO/SA oracle on 200 random graphs plus clustered-graph checks",
         criterion_qubo_oracle},
        {"determinism and conservation audits across the scenario battery",
         criterion_determinism},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::ostringstream out;
        bool threw = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].run(out);
        } catch (const std::exception& e) {
            threw = true;
            out << "    EXCEPTION: " << e.what() << "\n";
        }
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
        const bool ok = !threw && out.str().empty();
        std::cout << "[" << (i + 1) << "] " << criteria[i].name << " ... "
                  << (ok ? "PASS" : "FAIL") << " (" << elapsed << " ms)\n";
        if (!ok) {
            std::cout << out.str();
            ++failed;
        }
    }
    if (failed == 0) {
        std::cout << "ACCEPTANCE: all " << criteria.size() << " criteria passed\n";
        return 0;
    }
    std::cout << "ACCEPTANCE: " << failed << " of " << criteria.size() << " criteria FAILED\n";
    return 1;
}
