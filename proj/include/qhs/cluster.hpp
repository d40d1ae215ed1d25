#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include <qhs/ticks.hpp>

namespace qhs {

struct ClusterConfig {
    int n_nodes{1};
    int n_qpus{1};
    int n_vqpus{0}; // resolved at scenario load; consulted only under vqpu
};

/// A whole-job admission or a single workflow task asking for nodes.
/// Queue discipline is strict FCFS: nothing is granted while an earlier
/// request remains ungrantable (no backfill). Joint requirements (vQPU
/// token, exclusive QPU lock) are granted atomically with the nodes.
struct NodeRequest {
    int job{-1};
    int task{-1}; // -1 = whole-job admission
    int nodes_min{1};
    int nodes_max{1};
    bool moldable{false};
    bool want_vqpu{false};
    bool want_qpu_lock{false};
};

struct Grant {
    int nodes{0};
    int qpu_lock{-1};
    bool vqpu_token{false};
};

struct LedgerInterval {
    int job{-1};
    int nodes{0};
    Tick start{0};
    Tick end{-1}; // -1 while open
};

struct TokenInterval {
    int job{-1};
    Tick start{0};
    Tick end{-1};
};

/// Node pool, vQPU token pool, and per-QPU exclusive locks, with the
/// allocation ledger used for node-seconds accounting.
class ClusterState {
public:
    explicit ClusterState(const ClusterConfig& cfg);

    struct PendingGrant {
        NodeRequest request;
        Grant grant;
    };

    /// Grants immediately only when the request is at the head of an empty
    /// queue and everything it needs is free; otherwise queues it.
    std::optional<Grant> try_allocate(const NodeRequest& req, Tick now);

    /// Releases `nodes` nodes held by `job` and re-examines the FCFS queue.
    /// Returns the requests that became grantable, in grant order.
    [[nodiscard]] std::vector<PendingGrant> release_nodes(int job, int nodes, Tick now);
    [[nodiscard]] std::vector<PendingGrant> release_vqpu(int job, Tick now);
    [[nodiscard]] std::vector<PendingGrant> release_qpu_lock(int job, Tick now);

    /// Best-effort malleable expansion: takes min(free, extra_max) right
    /// now, bypassing the queue, and returns the number of nodes gained.
    int expand_nodes(int job, int extra_max, Tick now);

    /// Direct token acquisition (outside the FCFS queue); used by tests and
    /// the policy-violation checks. Double-acquire is fatal.
    bool acquire_vqpu(int job, Tick now);

    int free_nodes() const { return free_; }
    int nodes_held(int job) const;
    bool holds_token(int job) const;
    int lock_owner(int qpu) const;
    int locked_qpu(int job) const;
    int outstanding_tokens() const { return static_cast<int>(token_holders_.size()); }
    std::size_t queue_length() const { return queue_.size(); }
    const std::deque<NodeRequest>& queued_requests() const { return queue_; }
    const ClusterConfig& config() const { return cfg_; }

    const std::vector<LedgerInterval>& node_ledger() const { return ledger_; }
    const std::vector<TokenInterval>& token_log() const { return token_log_; }

    /// End-of-run check: everything released, all intervals closed.
    void verify_drained() const;

private:
    bool grantable(const NodeRequest& req) const;
    Grant apply_grant(const NodeRequest& req, Tick now);
    std::vector<PendingGrant> drain_queue(Tick now);
    void set_job_nodes(int job, int nodes, Tick now);

    ClusterConfig cfg_;
    int free_;
    std::deque<NodeRequest> queue_;
    std::map<int, int> held_;
    std::map<int, std::size_t> open_interval_;
    std::vector<LedgerInterval> ledger_;
    std::map<int, bool> token_holders_;
    std::map<int, std::size_t> open_token_;
    std::vector<TokenInterval> token_log_;
    std::vector<int> lock_owner_;
};

/// Total node-milliseconds over a closed ledger (sum of nodes x length).
std::int64_t node_milliseconds(const std::vector<LedgerInterval>& ledger);
std::int64_t node_milliseconds(const std::vector<LedgerInterval>& ledger, int job);

/// Node-seconds as reported (3-decimal seconds from exact tick arithmetic).
double node_seconds(const std::vector<LedgerInterval>& ledger);

struct QpuQueueEntry {
    int job{-1};
    int task{-1};
    Tick burst{0};
    Tick enqueue_time{0};
    std::uint64_t enqueue_seq{0};
    int record{-1}; // index into the trace burst table
};

/// Physical QPU bank. Each QPU serves its own FIFO queue; entries are never
/// preempted and occupy the device for exactly their declared burst.
class QpuBroker {
public:
    explicit QpuBroker(int n_qpus);

    int qpu_count() const { return static_cast<int>(qpus_.size()); }

    /// Picks the QPU with the earliest committed availability (ties: lowest
    /// index). `forced_qpu` pins the choice (exclusive policy).
    struct EnqueueResult {
        int qpu{0};
        int position{0};
        bool start_now{false};
    };
    EnqueueResult enqueue(QpuQueueEntry entry, Tick now, int forced_qpu = -1);

    /// Moves the head entry into service; returns it.
    QpuQueueEntry begin_service(int qpu, Tick now);

    /// Completes the in-flight entry, recording its busy interval. Returns
    /// the finished entry; caller starts the next one if the queue is
    /// non-empty.
    QpuQueueEntry end_service(int qpu, Tick now);

    const QpuQueueEntry& front(int qpu) const;
    bool serving(int qpu) const;
    bool queue_empty(int qpu) const;
    const std::vector<std::vector<Interval>>& busy_intervals() const { return busy_; }
    bool all_idle() const;

private:
    struct Qpu {
        std::deque<QpuQueueEntry> waiting;
        std::optional<QpuQueueEntry> current;
        Tick current_start{0};
        Tick committed_until{0};
    };

    std::vector<Qpu> qpus_;
    std::vector<std::vector<Interval>> busy_;
};

} // namespace qhs
