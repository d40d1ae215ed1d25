#include <qhs/scenario_io.hpp>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include <qhs/errors.hpp>
#include <qhs/workload.hpp>

namespace qhs {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw ValidationError("config field '" + path + "': " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool known = false;
        for (const char* a : allowed) {
            if (key == a) {
                known = true;
                break;
            }
        }
        if (!known) fail(path.empty() ? key : path + "." + key, "unknown field");
    }
}

const json* find(const json& obj, const char* key) {
    const auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

std::int64_t as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<std::int64_t>();
}

double as_number(const json& v, const std::string& path) {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
}

bool as_bool(const json& v, const std::string& path) {
    if (!v.is_boolean()) fail(path, "expected a boolean");
    return v.get<bool>();
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
}

PayloadConfig parse_payload(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    check_keys(obj, path, {"clustered_graph", "graph_file", "penalty"});
    PayloadConfig cfg;
    if (const json* cg = find(obj, "clustered_graph")) {
        const std::string cpath = path + ".clustered_graph";
        if (!cg->is_object()) fail(cpath, "expected an object");
        check_keys(*cg, cpath, {"separators", "max_component", "clusters", "intra_edge_prob"});
        ClusteredGraphSpec spec;
        if (const json* v = find(*cg, "separators")) {
            spec.separators = static_cast<int>(as_int(*v, cpath + ".separators"));
        }
        if (const json* v = find(*cg, "max_component")) {
            spec.max_component = static_cast<int>(as_int(*v, cpath + ".max_component"));
        }
        if (const json* v = find(*cg, "clusters")) {
            spec.clusters = static_cast<int>(as_int(*v, cpath + ".clusters"));
        }
        if (const json* v = find(*cg, "intra_edge_prob")) {
            spec.intra_edge_prob = as_number(*v, cpath + ".intra_edge_prob");
        }
        cfg.clustered_graph = spec;
    }
    if (const json* v = find(obj, "graph_file")) {
        cfg.graph_file = as_string(*v, path + ".graph_file");
    }
    if (const json* v = find(obj, "penalty")) cfg.penalty = as_number(*v, path + ".penalty");
    return cfg;
}

GcWorkloadConfig parse_gc(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    check_keys(obj, path,
               {"n_copies", "sleep_ratio", "n_iterations", "burst_ms", "base_classical_ms",
                "jitter_sigma", "payload"});
    GcWorkloadConfig cfg;
    if (const json* v = find(obj, "n_copies")) {
        cfg.n_copies = static_cast<int>(as_int(*v, path + ".n_copies"));
    }
    if (const json* v = find(obj, "sleep_ratio")) {
        cfg.sleep_ratio = as_number(*v, path + ".sleep_ratio");
    }
    if (const json* v = find(obj, "n_iterations")) {
        cfg.n_iterations = static_cast<int>(as_int(*v, path + ".n_iterations"));
    }
    if (const json* v = find(obj, "burst_ms")) cfg.burst_ms = as_int(*v, path + ".burst_ms");
    if (const json* v = find(obj, "base_classical_ms")) {
        cfg.base_classical_ms = as_int(*v, path + ".base_classical_ms");
    }
    if (const json* v = find(obj, "jitter_sigma")) {
        cfg.jitter_sigma = as_number(*v, path + ".jitter_sigma");
    }
    if (const json* v = find(obj, "payload")) cfg.payload = parse_payload(*v, path + ".payload");
    return cfg;
}

ClusteringWorkloadConfig parse_clustering(const json& obj, const std::string& path) {
    if (!obj.is_object()) fail(path, "expected an object");
    check_keys(obj, path,
               {"quantum_duration_ms", "n_jobs", "malleable", "split_classical_tasks",
                "jitter_sigma", "classical_ms", "serial_ms", "payload"});
    ClusteringWorkloadConfig cfg;
    if (const json* v = find(obj, "quantum_duration_ms")) {
        cfg.quantum_duration_ms = as_int(*v, path + ".quantum_duration_ms");
    }
    if (const json* v = find(obj, "n_jobs")) {
        cfg.n_jobs = static_cast<int>(as_int(*v, path + ".n_jobs"));
    }
    if (const json* v = find(obj, "malleable")) cfg.malleable = as_bool(*v, path + ".malleable");
    if (const json* v = find(obj, "split_classical_tasks")) {
        cfg.split_classical_tasks = as_bool(*v, path + ".split_classical_tasks");
    }
    if (const json* v = find(obj, "jitter_sigma")) {
        cfg.jitter_sigma = as_number(*v, path + ".jitter_sigma");
    }
    if (const json* v = find(obj, "classical_ms")) {
        const std::string apath = path + ".classical_ms";
        if (!v->is_array() || v->size() != 4) fail(apath, "expected 4 iterations");
        std::array<std::array<Tick, 3>, 4> durs{};
        for (std::size_t i = 0; i < 4; ++i) {
            const json& row = (*v)[i];
            if (!row.is_array() || row.size() != 3) {
                fail(apath + "[" + std::to_string(i) + "]", "expected 3 algorithm durations");
            }
            for (std::size_t a = 0; a < 3; ++a) {
                durs[i][a] = as_int(row[a], apath + "[" + std::to_string(i) + "][" +
                                                std::to_string(a) + "]");
            }
        }
        cfg.classical_ms = durs;
    }
    if (const json* v = find(obj, "serial_ms")) {
        const std::string apath = path + ".serial_ms";
        if (!v->is_array() || v->size() != 4) fail(apath, "expected 4 durations");
        std::array<Tick, 4> durs{};
        for (std::size_t i = 0; i < 4; ++i) {
            durs[i] = as_int((*v)[i], apath + "[" + std::to_string(i) + "]");
        }
        cfg.serial_ms = durs;
    }
    if (const json* v = find(obj, "payload")) cfg.payload = parse_payload(*v, path + ".payload");
    return cfg;
}

Phase parse_phase(const json& obj, const std::string& path) {
    if (!obj.is_object() || obj.size() != 1) {
        fail(path, "expected exactly one of classical | quantum | serial");
    }
    if (const json* c = find(obj, "classical")) {
        check_keys(*c, path + ".classical", {"nodes", "duration_ms"});
        const json* nodes = find(*c, "nodes");
        const json* dur = find(*c, "duration_ms");
        if (!nodes || !dur) fail(path + ".classical", "needs nodes and duration_ms");
        return Phase::classical(static_cast<int>(as_int(*nodes, path + ".classical.nodes")),
                                as_int(*dur, path + ".classical.duration_ms"));
    }
    if (const json* q = find(obj, "quantum")) {
        check_keys(*q, path + ".quantum", {"duration_ms"});
        const json* dur = find(*q, "duration_ms");
        if (!dur) fail(path + ".quantum", "needs duration_ms");
        return Phase::quantum(as_int(*dur, path + ".quantum.duration_ms"));
    }
    if (const json* s = find(obj, "serial")) {
        check_keys(*s, path + ".serial", {"duration_ms"});
        const json* dur = find(*s, "duration_ms");
        if (!dur) fail(path + ".serial", "needs duration_ms");
        return Phase::serial(as_int(*dur, path + ".serial.duration_ms"));
    }
    fail(path, "unknown phase kind");
}

std::vector<Job> parse_jobs(const json& arr, const std::string& path) {
    if (!arr.is_array()) fail(path, "expected an array of jobs");
    std::vector<Job> jobs;
    jobs.reserve(arr.size());
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string jpath = path + "[" + std::to_string(i) + "]";
        const json& obj = arr[i];
        if (!obj.is_object()) fail(jpath, "expected an object");
        check_keys(obj, jpath, {"id", "submit_ms", "nodes_min", "malleable", "phases"});
        Job job;
        const json* id = find(obj, "id");
        if (!id) fail(jpath, "missing id");
        job.id = as_string(*id, jpath + ".id");
        if (const json* v = find(obj, "submit_ms")) {
            job.submit_time = as_int(*v, jpath + ".submit_ms");
        }
        if (const json* v = find(obj, "nodes_min")) {
            job.nodes_min = static_cast<int>(as_int(*v, jpath + ".nodes_min"));
        }
        if (const json* v = find(obj, "malleable")) {
            job.malleable = as_bool(*v, jpath + ".malleable");
        }
        const json* phases = find(obj, "phases");
        if (!phases || !phases->is_array()) fail(jpath, "missing phases array");
        for (std::size_t p = 0; p < phases->size(); ++p) {
            job.phases.push_back(
                parse_phase((*phases)[p], jpath + ".phases[" + std::to_string(p) + "]"));
        }
        jobs.push_back(std::move(job));
    }
    return jobs;
}

Scenario parse_scenario_json(const json& doc, std::optional<std::uint64_t> seed_override) {
    if (!doc.is_object()) throw ValidationError("scenario document must be a JSON object");
    check_keys(doc, "", {"seed", "policy", "cluster", "overheads", "workload"});

    Scenario s;
    if (const json* v = find(doc, "seed")) {
        if (!v->is_number_unsigned()) fail("seed", "expected a non-negative integer");
        s.seed = v->get<std::uint64_t>();
    }
    if (seed_override) s.seed = *seed_override;

    const json* policy = find(doc, "policy");
    if (!policy) fail("policy", "missing");
    const auto kind = policy_from_string(as_string(*policy, "policy"));
    if (!kind) fail("policy", "unknown policy '" + policy->get<std::string>() + "'");
    s.policy = *kind;

    const json* cluster = find(doc, "cluster");
    if (!cluster || !cluster->is_object()) fail("cluster", "missing section");
    check_keys(*cluster, "cluster", {"n_nodes", "n_qpus", "n_vqpus"});
    const json* n_nodes = find(*cluster, "n_nodes");
    if (!n_nodes) fail("cluster.n_nodes", "missing");
    s.cluster.n_nodes = static_cast<int>(as_int(*n_nodes, "cluster.n_nodes"));
    if (const json* v = find(*cluster, "n_qpus")) {
        s.cluster.n_qpus = static_cast<int>(as_int(*v, "cluster.n_qpus"));
    }
    if (const json* v = find(*cluster, "n_vqpus")) {
        s.n_vqpus_config = static_cast<int>(as_int(*v, "cluster.n_vqpus"));
    }

    if (const json* ov = find(doc, "overheads")) {
        if (!ov->is_object()) fail("overheads", "expected an object");
        check_keys(*ov, "overheads",
                   {"reconfig_overhead_ms", "wms_task_overhead_ms", "job_init_overhead_ms"});
        if (const json* v = find(*ov, "reconfig_overhead_ms")) {
            s.overheads.reconfig_overhead = as_int(*v, "overheads.reconfig_overhead_ms");
        }
        if (const json* v = find(*ov, "wms_task_overhead_ms")) {
            s.overheads.wms_task_overhead = as_int(*v, "overheads.wms_task_overhead_ms");
        }
        if (const json* v = find(*ov, "job_init_overhead_ms")) {
            s.overheads.job_init_overhead = as_int(*v, "overheads.job_init_overhead_ms");
        }
        if (s.overheads.reconfig_overhead < 0 || s.overheads.wms_task_overhead < 0 ||
            s.overheads.job_init_overhead < 0) {
            fail("overheads", "overheads must be >= 0");
        }
    }

    const json* workload = find(doc, "workload");
    if (!workload || !workload->is_object() || workload->size() != 1) {
        fail("workload", "expected exactly one of gc_replicas | clustering | trace");
    }
    if (const json* gc = find(*workload, "gc_replicas")) {
        s.workload = parse_gc(*gc, "workload.gc_replicas");
    } else if (const json* cl = find(*workload, "clustering")) {
        s.workload = parse_clustering(*cl, "workload.clustering");
    } else if (const json* tr = find(*workload, "trace")) {
        if (!tr->is_object()) fail("workload.trace", "expected an object");
        check_keys(*tr, "workload.trace", {"jobs"});
        const json* jobs = find(*tr, "jobs");
        if (!jobs) fail("workload.trace.jobs", "missing");
        TraceWorkloadConfig cfg;
        cfg.jobs = parse_jobs(*jobs, "workload.trace.jobs");
        s.workload = cfg;
    } else {
        fail("workload", "unknown workload kind");
    }

    resolve_scenario(s);
    validate_scenario(s);
    return s;
}

json emit_payload(const PayloadConfig& cfg) {
    json out = json::object();
    if (cfg.clustered_graph) {
        out["clustered_graph"] = {
            {"separators", cfg.clustered_graph->separators},
            {"max_component", cfg.clustered_graph->max_component},
            {"clusters", cfg.clustered_graph->clusters},
            {"intra_edge_prob", cfg.clustered_graph->intra_edge_prob},
        };
    }
    if (cfg.graph_file) out["graph_file"] = *cfg.graph_file;
    out["penalty"] = cfg.penalty;
    return out;
}

json emit_scenario_json(const Scenario& s) {
    json doc;
    doc["seed"] = s.seed;
    doc["policy"] = to_string(s.policy);
    doc["cluster"] = {
        {"n_nodes", s.cluster.n_nodes},
        {"n_qpus", s.cluster.n_qpus},
        {"n_vqpus", s.cluster.n_vqpus},
    };
    doc["overheads"] = {
        {"reconfig_overhead_ms", s.overheads.reconfig_overhead},
        {"wms_task_overhead_ms", s.overheads.wms_task_overhead},
        {"job_init_overhead_ms", s.overheads.job_init_overhead},
    };
    json workload = json::object();
    if (const auto* gc = std::get_if<GcWorkloadConfig>(&s.workload)) {
        json w;
        w["n_copies"] = gc->n_copies;
        w["sleep_ratio"] = gc->sleep_ratio;
        w["n_iterations"] = gc->n_iterations;
        w["burst_ms"] = gc->burst_ms;
        w["base_classical_ms"] = gc->base_classical_ms;
        w["jitter_sigma"] = gc->jitter_sigma;
        if (gc->payload) w["payload"] = emit_payload(*gc->payload);
        workload["gc_replicas"] = std::move(w);
    } else if (const auto* cl = std::get_if<ClusteringWorkloadConfig>(&s.workload)) {
        json w;
        w["quantum_duration_ms"] = cl->quantum_duration_ms;
        w["n_jobs"] = cl->n_jobs;
        w["malleable"] = cl->malleable;
        w["split_classical_tasks"] = cl->split_classical_tasks;
        w["jitter_sigma"] = cl->jitter_sigma;
        if (cl->classical_ms) {
            json rows = json::array();
            for (const auto& iter : *cl->classical_ms) {
                rows.push_back(json{iter[0], iter[1], iter[2]});
            }
            w["classical_ms"] = std::move(rows);
        }
        if (cl->serial_ms) {
            w["serial_ms"] = json{(*cl->serial_ms)[0], (*cl->serial_ms)[1], (*cl->serial_ms)[2],
                                  (*cl->serial_ms)[3]};
        }
        if (cl->payload) w["payload"] = emit_payload(*cl->payload);
        workload["clustering"] = std::move(w);
    } else if (const auto* tr = std::get_if<TraceWorkloadConfig>(&s.workload)) {
        json jobs = json::array();
        for (const auto& job : tr->jobs) {
            json j;
            j["id"] = job.id;
            j["submit_ms"] = job.submit_time;
            j["nodes_min"] = job.nodes_min;
            j["malleable"] = job.malleable;
            json phases = json::array();
            for (const auto& p : job.phases) {
                switch (p.kind) {
                    case Phase::Kind::Classical:
                        phases.push_back(
                            {{"classical", {{"nodes", p.nodes}, {"duration_ms", p.duration}}}});
                        break;
                    case Phase::Kind::Quantum:
                        phases.push_back({{"quantum", {{"duration_ms", p.burst.duration}}}});
                        break;
                    case Phase::Kind::Serial:
                        phases.push_back({{"serial", {{"duration_ms", p.duration}}}});
                        break;
                }
            }
            j["phases"] = std::move(phases);
            jobs.push_back(std::move(j));
        }
        workload["trace"] = {{"jobs", std::move(jobs)}};
    }
    doc["workload"] = std::move(workload);
    return doc;
}

json parse_json_text(const std::string& text, const char* what) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        throw ValidationError(std::string("malformed JSON in ") + what);
    }
    return doc;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

Scenario parse_scenario_text(const std::string& text, std::optional<std::uint64_t> seed_override) {
    return parse_scenario_json(parse_json_text(text, "scenario"), seed_override);
}

Scenario load_scenario_file(const std::string& path, std::optional<std::uint64_t> seed_override) {
    return parse_scenario_text(read_file(path), seed_override);
}

std::string emit_scenario_text(const Scenario& scenario) {
    return emit_scenario_json(scenario).dump(2) + "\n";
}

namespace {

/// Maps sweep axis names onto config positions; unknown names are treated
/// as '/'-separated paths into the document.
json* locate_param(json& doc, const std::string& param) {
    static const std::initializer_list<std::pair<const char*, const char*>> aliases = {
        {"n_copies", "workload/gc_replicas/n_copies"},
        {"R", "workload/gc_replicas/sleep_ratio"},
        {"sleep_ratio", "workload/gc_replicas/sleep_ratio"},
        {"n_iterations", "workload/gc_replicas/n_iterations"},
        {"burst_ms", "workload/gc_replicas/burst_ms"},
        {"base_classical_ms", "workload/gc_replicas/base_classical_ms"},
        {"policy", "policy"},
        {"seed", "seed"},
        {"n_nodes", "cluster/n_nodes"},
        {"n_qpus", "cluster/n_qpus"},
        {"n_vqpus", "cluster/n_vqpus"},
        {"n_jobs", "workload/clustering/n_jobs"},
        {"quantum_duration_ms", "workload/clustering/quantum_duration_ms"},
        {"malleable", "workload/clustering/malleable"},
        {"reconfig_overhead_ms", "overheads/reconfig_overhead_ms"},
        {"wms_task_overhead_ms", "overheads/wms_task_overhead_ms"},
        {"job_init_overhead_ms", "overheads/job_init_overhead_ms"},
    };
    std::string path = param;
    for (const auto& [name, target] : aliases) {
        if (param == name) {
            path = target;
            break;
        }
    }
    json* node = &doc;
    std::size_t pos = 0;
    while (pos != std::string::npos) {
        const std::size_t next = path.find('/', pos);
        const std::string key =
            next == std::string::npos ? path.substr(pos) : path.substr(pos, next - pos);
        if (key.empty()) throw ValidationError("sweep: malformed parameter path '" + param + "'");
        if (!node->is_object()) throw ValidationError("sweep: cannot descend into '" + key + "'");
        node = &(*node)[key];
        pos = next == std::string::npos ? std::string::npos : next + 1;
    }
    return node;
}

std::string render_value(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

} // namespace

SweepPlan parse_sweep_text(const std::string& text, std::optional<std::uint64_t> seed_override) {
    const json doc = parse_json_text(text, "sweep");
    if (!doc.is_object()) throw ValidationError("sweep document must be a JSON object");
    check_keys(doc, "", {"base", "axes"});
    const json* base = find(doc, "base");
    if (!base || !base->is_object()) fail("base", "missing base scenario");
    const json* axes = find(doc, "axes");
    if (!axes || !axes->is_array() || axes->empty()) fail("axes", "expected a non-empty array");

    SweepPlan plan;
    std::vector<std::vector<json>> values;
    for (std::size_t i = 0; i < axes->size(); ++i) {
        const std::string apath = "axes[" + std::to_string(i) + "]";
        const json& axis = (*axes)[i];
        if (!axis.is_object()) fail(apath, "expected an object");
        check_keys(axis, apath, {"param", "values"});
        const json* param = find(axis, "param");
        const json* vals = find(axis, "values");
        if (!param) fail(apath + ".param", "missing");
        if (!vals || !vals->is_array() || vals->empty()) {
            fail(apath + ".values", "expected a non-empty array");
        }
        plan.axis_names.push_back(as_string(*param, apath + ".param"));
        values.emplace_back(vals->begin(), vals->end());
    }

    // Odometer over the axes, first axis outermost.
    std::vector<std::size_t> idx(values.size(), 0);
    bool done = false;
    while (!done) {
        json cell_doc = *base;
        SweepCell cell;
        for (std::size_t a = 0; a < values.size(); ++a) {
            const json& v = values[a][idx[a]];
            *locate_param(cell_doc, plan.axis_names[a]) = v;
            cell.param_values.push_back(render_value(v));
        }
        cell.scenario = parse_scenario_json(cell_doc, seed_override);
        plan.cells.push_back(std::move(cell));

        done = true;
        for (std::size_t a = values.size(); a-- > 0;) {
            if (++idx[a] < values[a].size()) {
                done = false;
                break;
            }
            idx[a] = 0;
        }
    }
    return plan;
}

SweepPlan load_sweep_file(const std::string& path, std::optional<std::uint64_t> seed_override) {
    return parse_sweep_text(read_file(path), seed_override);
}

// load_trace lives here because it shares the job-array schema and parser.
std::vector<Job> load_trace(const std::string& path) {
    const json doc = parse_json_text(read_file(path), "trace");
    if (doc.is_array()) return parse_jobs(doc, "jobs");
    if (doc.is_object()) {
        check_keys(doc, "", {"jobs"});
        const json* jobs = find(doc, "jobs");
        if (!jobs) fail("jobs", "missing");
        return parse_jobs(*jobs, "jobs");
    }
    throw ValidationError("trace file must hold a job array or {\"jobs\": [...]}");
}

} // namespace qhs
