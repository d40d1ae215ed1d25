#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <qhs/annealing.hpp>
#include <qhs/csv.hpp>
#include <qhs/errors.hpp>
#include <qhs/qubo.hpp>
#include <qhs/rng.hpp>
#include <qhs/scenario_io.hpp>
#include <qhs/simulation.hpp>

namespace {

constexpr int kExitValidation = 1;
constexpr int kExitSimulation = 2;
constexpr int kExitIo = 3;

std::optional<std::uint64_t> seed_override_from_env() {
    const char* raw = std::getenv("QHS_SEED");
    if (!raw || !*raw) return std::nullopt;
    try {
        return std::stoull(raw);
    } catch (const std::exception&) {
        throw qhs::ValidationError("QHS_SEED is not a valid 64-bit unsigned integer");
    }
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw qhs::IoError("cannot write " + path.string());
    out << content;
    if (!out) throw qhs::IoError("short write to " + path.string());
}

int cmd_run(const std::string& config, const std::string& out_dir, bool emit_trace) {
    const auto scenario = qhs::load_scenario_file(config, seed_override_from_env());
    const auto result = qhs::run_to_completion(scenario);

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path out(out_dir);
    write_file(out / "metrics.csv",
               qhs::metrics_csv(result.metrics, scenario.policy, result.trace.jobs.size()));
    write_file(out / "jobs.csv", qhs::jobs_csv(result.trace));
    write_file(out / "run_meta.json", qhs::emit_scenario_text(scenario));
    if (emit_trace) write_file(out / "trace.csv", qhs::trace_csv(result.trace));

    std::cout << "total_time_s=" << qhs::format_seconds(result.metrics.total_ticks)
              << " quantum_time_s=" << qhs::format_seconds(result.metrics.quantum_ticks)
              << " node_seconds=" << qhs::format_fraction(result.metrics.node_ms, 1000, 3)
              << "\n";
    return 0;
}

int cmd_sweep(const std::string& config, const std::string& out_dir, int workers) {
    const auto plan = qhs::load_sweep_file(config, seed_override_from_env());

    struct CellOutcome {
        std::string row;
        std::string error;
    };
    std::vector<CellOutcome> outcomes(plan.cells.size());

    // Cells are independent scenarios; rows are assembled in declaration
    // order afterwards, so worker count never affects the output.
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= plan.cells.size()) return;
            const auto& cell = plan.cells[i];
            try {
                const auto result = qhs::run_to_completion(cell.scenario);
                outcomes[i].row =
                    qhs::sweep_csv_row(cell.param_values, result.metrics, cell.scenario.policy,
                                       result.trace.jobs.size());
            } catch (const std::exception& e) {
                outcomes[i].error = e.what();
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (!outcomes[i].error.empty()) {
            std::string cell_desc;
            for (std::size_t a = 0; a < plan.axis_names.size(); ++a) {
                if (a) cell_desc += ", ";
                cell_desc += plan.axis_names[a] + "=" + plan.cells[i].param_values[a];
            }
            std::cerr << "sweep cell " << i << " (" << cell_desc
                      << ") failed: " << outcomes[i].error << "\n";
            return kExitSimulation;
        }
    }

    std::string csv = qhs::sweep_csv_header(plan.axis_names);
    for (const auto& outcome : outcomes) csv += outcome.row;

    std::filesystem::create_directories(out_dir);
    write_file(std::filesystem::path(out_dir) / "sweep.csv", csv);
    std::cout << plan.cells.size() << " cells -> " << out_dir << "/sweep.csv\n";
    return 0;
}

int cmd_validate_payload(const std::string& config, double threshold) {
    const auto scenario = qhs::load_scenario_file(config, seed_override_from_env());

    int checked = 0;
    int matched = 0;
    int skipped = 0;
    for (std::size_t i = 0; i < scenario.jobs.size(); ++i) {
        const auto& job = scenario.jobs[i];
        std::shared_ptr<const qhs::QuboProblem> payload;
        for (const auto& phase : job.phases) {
            if (phase.kind == qhs::Phase::Kind::Quantum && phase.burst.payload) {
                payload = phase.burst.payload;
                break;
            }
        }
        if (!payload) continue;
        if (payload->n > qhs::kBruteForceMaxVertices) {
            std::cerr << "warning: payload of job '" << job.id << "' has " << payload->n
                      << " variables, above the brute-force bound; skipped\n";
            ++skipped;
            continue;
        }

        // Reconstruct the instance graph from the quadratic terms.
        std::vector<std::pair<int, int>> edges;
        edges.reserve(payload->quadratic.size());
        for (const auto& [u, v, w] : payload->quadratic) {
            (void)w;
            edges.emplace_back(u, v);
        }
        const auto graph = qhs::Graph::make(payload->n, std::move(edges));
        const auto oracle = qhs::brute_force_mis(graph);

        qhs::SaSchedule schedule;
        schedule.seed = qhs::Xoshiro256ss::stream(scenario.seed, i).next();
        const auto sa = qhs::sa_solve(*payload, schedule);

        const bool match = sa.energy == -static_cast<double>(oracle.size);
        ++checked;
        if (match) ++matched;
        std::cout << job.id << ": sa_energy=" << sa.energy << " mis_size=" << oracle.size
                  << (match ? " MATCH" : " MISS") << "\n";
    }

    if (checked == 0) {
        std::cout << "nothing to validate" << (skipped ? " (all payloads skipped)" : "") << "\n";
        return 0;
    }
    const double rate = static_cast<double>(matched) / static_cast<double>(checked);
    std::cout << "match rate " << matched << "/" << checked << " = " << rate << " (threshold "
              << threshold << ")\n";
    return rate >= threshold ? 0 : kExitValidation;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Deterministic simulator of hybrid HPC-quantum cluster scheduling strategies"};
    app.require_subcommand(1);

    std::string config;
    std::string out_dir = "out";
    bool emit_trace = false;
    int workers = 1;
    double threshold = 0.9;

    auto* run = app.add_subcommand("run", "Run one scenario and write metrics/trace CSVs");
    run->add_option("--config", config, "Scenario file")->required();
    run->add_option("--out", out_dir, "Output directory (created if missing)");
    run->add_flag("--emit-trace", emit_trace, "Also write the full event trace");

    auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep into sweep.csv");
    sweep->add_option("--config", config, "Sweep file")->required();
    sweep->add_option("--out", out_dir, "Output directory (created if missing)");
    sweep->add_option("--jobs", workers, "Parallel worker threads")->check(CLI::PositiveNumber);

    auto* validate = app.add_subcommand("validate-payload",
                                        "Solve each job's QUBO payload by SA and brute force");
    validate->add_option("--config", config, "Scenario file")->required();
    validate->add_option("--threshold", threshold, "Minimum acceptable match rate");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config, out_dir, emit_trace);
        if (sweep->parsed()) return cmd_sweep(config, out_dir, workers);
        if (validate->parsed()) return cmd_validate_payload(config, threshold);
    } catch (const qhs::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const qhs::CalibrationError& e) {
        std::cerr << "calibration error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const qhs::DeadlockError& e) {
        std::cerr << "simulation error: " << e.what() << "\n";
        return kExitSimulation;
    } catch (const qhs::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitSimulation;
    } catch (const qhs::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSimulation;
    }
    return 0;
}
