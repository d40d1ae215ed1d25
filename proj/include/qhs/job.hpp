#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <qhs/ticks.hpp>

namespace qhs {

struct QuboProblem;

/// One quantum circuit batch. The declared duration drives the scheduler;
/// the optional payload is correctness ballast validated on the side and
/// never changes timing.
struct QuantumBurst {
    Tick duration{0};
    std::shared_ptr<const QuboProblem> payload;
};

/// Hybrid jobs are ordered phase sequences. Serial behaves like
/// Classical(nodes=1) but is tagged so the malleable policy shrinks for it.
struct Phase {
    enum class Kind { Classical, Quantum, Serial };

    Kind kind{Kind::Classical};
    int nodes{1};      // Classical only
    Tick duration{0};  // Classical/Serial only
    QuantumBurst burst; // Quantum only

    static Phase classical(int nodes, Tick duration);
    static Phase quantum(Tick duration, std::shared_ptr<const QuboProblem> payload = nullptr);
    static Phase serial(Tick duration);

    /// Nominal duration; for Quantum this excludes queue wait.
    Tick nominal_duration() const {
        return kind == Kind::Quantum ? burst.duration : duration;
    }
};

const char* to_string(Phase::Kind kind);

enum class TaskLocation { ClassicalPool, QuantumPool };

struct WorkflowTask {
    std::string name;
    Phase::Kind kind{Phase::Kind::Classical};
    int nodes{1};
    Tick duration{0};
    QuantumBurst burst;
    TaskLocation location{TaskLocation::ClassicalPool};
};

/// Task DAG for the workflow policy: steps plus flattened precedence edges.
/// Quantum tasks map to the quantum pool, everything else to the classical
/// pool. Must be acyclic.
struct WorkflowSpec {
    std::vector<WorkflowTask> tasks;
    std::vector<std::pair<int, int>> deps; // (pred, succ) indices

    bool is_acyclic() const;
};

struct Job {
    std::string id;
    Tick submit_time{0};
    std::vector<Phase> phases;
    int nodes_min{1};
    bool malleable{false};
    /// Explicit task decomposition; when absent the workflow policy derives
    /// a chain with one task per phase.
    std::optional<WorkflowSpec> workflow;
};

/// Widest rigid allocation the job ever needs; at least 1 (every job keeps
/// one controlling rank on the cluster).
int max_phase_nodes(const Job& job);

/// Structural equality ignoring the id: used to detect identical replicas.
/// Payloads compare by reference, matching their shared-instance semantics.
bool same_content(const Job& a, const Job& b);
std::uint64_t content_hash(const Job& job);

} // namespace qhs
