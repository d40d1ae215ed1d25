#include <qhs/job.hpp>

#include <algorithm>

#include <qhs/rng.hpp>

namespace qhs {

Phase Phase::classical(int nodes, Tick duration) {
    Phase p;
    p.kind = Kind::Classical;
    p.nodes = nodes;
    p.duration = duration;
    return p;
}

Phase Phase::quantum(Tick duration, std::shared_ptr<const QuboProblem> payload) {
    Phase p;
    p.kind = Kind::Quantum;
    p.nodes = 0;
    p.burst.duration = duration;
    p.burst.payload = std::move(payload);
    return p;
}

Phase Phase::serial(Tick duration) {
    Phase p;
    p.kind = Kind::Serial;
    p.nodes = 1;
    p.duration = duration;
    return p;
}

const char* to_string(Phase::Kind kind) {
    switch (kind) {
        case Phase::Kind::Classical: return "classical";
        case Phase::Kind::Quantum: return "quantum";
        case Phase::Kind::Serial: return "serial";
    }
    return "unknown";
}

bool WorkflowSpec::is_acyclic() const {
    std::vector<int> indegree(tasks.size(), 0);
    std::vector<std::vector<int>> succ(tasks.size());
    for (const auto& [from, to] : deps) {
        if (from < 0 || to < 0 || from >= static_cast<int>(tasks.size()) ||
            to >= static_cast<int>(tasks.size())) {
            return false;
        }
        succ[static_cast<std::size_t>(from)].push_back(to);
        ++indegree[static_cast<std::size_t>(to)];
    }
    std::vector<int> ready;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (indegree[i] == 0) ready.push_back(static_cast<int>(i));
    }
    std::size_t seen = 0;
    while (!ready.empty()) {
        const int t = ready.back();
        ready.pop_back();
        ++seen;
        for (int s : succ[static_cast<std::size_t>(t)]) {
            if (--indegree[static_cast<std::size_t>(s)] == 0) ready.push_back(s);
        }
    }
    return seen == tasks.size();
}

int max_phase_nodes(const Job& job) {
    int widest = 1;
    for (const auto& phase : job.phases) {
        switch (phase.kind) {
            case Phase::Kind::Classical: widest = std::max(widest, phase.nodes); break;
            case Phase::Kind::Serial: widest = std::max(widest, 1); break;
            case Phase::Kind::Quantum: break;
        }
    }
    return std::max(widest, job.nodes_min);
}

namespace {

bool same_phase(const Phase& a, const Phase& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Phase::Kind::Classical: return a.nodes == b.nodes && a.duration == b.duration;
        case Phase::Kind::Serial: return a.duration == b.duration;
        case Phase::Kind::Quantum:
            return a.burst.duration == b.burst.duration && a.burst.payload == b.burst.payload;
    }
    return false;
}

} // namespace

bool same_content(const Job& a, const Job& b) {
    if (a.submit_time != b.submit_time || a.nodes_min != b.nodes_min ||
        a.malleable != b.malleable || a.phases.size() != b.phases.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.phases.size(); ++i) {
        if (!same_phase(a.phases[i], b.phases[i])) return false;
    }
    const bool has_wf_a = a.workflow.has_value();
    if (has_wf_a != b.workflow.has_value()) return false;
    if (has_wf_a && (a.workflow->tasks.size() != b.workflow->tasks.size() ||
                     a.workflow->deps != b.workflow->deps)) {
        return false;
    }
    return true;
}

std::uint64_t content_hash(const Job& job) {
    std::uint64_t h = 0x4a6f6248a5c3f1d2ULL;
    auto fold = [&h](std::uint64_t v) {
        SplitMix64 step(h ^ (v + 0x9e3779b97f4a7c15ULL));
        h = step.next();
    };
    fold(static_cast<std::uint64_t>(job.submit_time));
    fold(static_cast<std::uint64_t>(job.nodes_min));
    fold(job.malleable ? 1 : 0);
    for (const auto& phase : job.phases) {
        fold(static_cast<std::uint64_t>(phase.kind));
        fold(static_cast<std::uint64_t>(phase.nodes));
        fold(static_cast<std::uint64_t>(phase.nominal_duration()));
        fold(static_cast<std::uint64_t>(reinterpret_cast<std::uintptr_t>(phase.burst.payload.get())));
    }
    return h;
}

} // namespace qhs
