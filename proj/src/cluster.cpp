#include <qhs/cluster.hpp>

#include <algorithm>
#include <string>

#include <qhs/errors.hpp>

namespace qhs {

ClusterState::ClusterState(const ClusterConfig& cfg)
    : cfg_(cfg), free_(cfg.n_nodes), lock_owner_(static_cast<std::size_t>(cfg.n_qpus), -1) {
    if (cfg.n_nodes < 1) throw ValidationError("cluster needs at least one node");
    if (cfg.n_qpus < 1) throw ValidationError("cluster needs at least one QPU");
    if (cfg.n_vqpus < 0) throw ValidationError("negative vQPU count");
}

bool ClusterState::grantable(const NodeRequest& req) const {
    const int needed = req.moldable ? req.nodes_min : req.nodes_max;
    if (free_ < needed) return false;
    if (req.want_vqpu) {
        const auto it = token_holders_.find(req.job);
        if (it != token_holders_.end() && it->second) {
            throw InternalError("job " + std::to_string(req.job) + " double-acquires a vQPU");
        }
        if (static_cast<int>(token_holders_.size()) >= cfg_.n_vqpus) return false;
    }
    if (req.want_qpu_lock &&
        std::none_of(lock_owner_.begin(), lock_owner_.end(), [](int o) { return o < 0; })) {
        return false;
    }
    return true;
}

Grant ClusterState::apply_grant(const NodeRequest& req, Tick now) {
    Grant grant;
    grant.nodes = req.moldable ? std::min(free_, req.nodes_max) : req.nodes_max;
    free_ -= grant.nodes;
    set_job_nodes(req.job, nodes_held(req.job) + grant.nodes, now);
    if (req.want_vqpu) {
        token_holders_[req.job] = true;
        open_token_[req.job] = token_log_.size();
        token_log_.push_back(TokenInterval{req.job, now, -1});
        grant.vqpu_token = true;
    }
    if (req.want_qpu_lock) {
        for (std::size_t q = 0; q < lock_owner_.size(); ++q) {
            if (lock_owner_[q] < 0) {
                lock_owner_[q] = req.job;
                grant.qpu_lock = static_cast<int>(q);
                break;
            }
        }
        if (grant.qpu_lock < 0) throw InternalError("lock grant with no free QPU");
    }
    return grant;
}

std::optional<Grant> ClusterState::try_allocate(const NodeRequest& req, Tick now) {
    if (req.nodes_min < 0 || req.nodes_max < req.nodes_min) {
        throw ValidationError("malformed node request (min " + std::to_string(req.nodes_min) +
                              ", max " + std::to_string(req.nodes_max) + ")");
    }
    if (!req.moldable && req.nodes_min != req.nodes_max) {
        throw ValidationError("rigid requests must have nodes_min == nodes_max");
    }
    // Moldable maxima are wishes; only the floor must fit the cluster.
    const int floor = req.moldable ? req.nodes_min : req.nodes_max;
    if (floor > cfg_.n_nodes) {
        throw ValidationError("request for " + std::to_string(floor) +
                              " nodes exceeds the cluster's " + std::to_string(cfg_.n_nodes));
    }
    if (queue_.empty() && grantable(req)) {
        return apply_grant(req, now);
    }
    queue_.push_back(req);
    return std::nullopt;
}

std::vector<ClusterState::PendingGrant> ClusterState::drain_queue(Tick now) {
    std::vector<PendingGrant> granted;
    while (!queue_.empty() && grantable(queue_.front())) {
        const NodeRequest req = queue_.front();
        queue_.pop_front();
        granted.push_back(PendingGrant{req, apply_grant(req, now)});
    }
    return granted;
}

std::vector<ClusterState::PendingGrant> ClusterState::release_nodes(int job, int nodes, Tick now) {
    const int held = nodes_held(job);
    if (nodes < 0 || held < nodes) {
        throw InternalError("job " + std::to_string(job) + " releases " + std::to_string(nodes) +
                            " nodes while holding " + std::to_string(held));
    }
    if (nodes > 0) {
        free_ += nodes;
        set_job_nodes(job, held - nodes, now);
    }
    return drain_queue(now);
}

std::vector<ClusterState::PendingGrant> ClusterState::release_vqpu(int job, Tick now) {
    auto it = token_holders_.find(job);
    if (it == token_holders_.end() || !it->second) {
        throw InternalError("job " + std::to_string(job) + " releases a vQPU it does not hold");
    }
    token_holders_.erase(it);
    token_log_[open_token_.at(job)].end = now;
    open_token_.erase(job);
    return drain_queue(now);
}

std::vector<ClusterState::PendingGrant> ClusterState::release_qpu_lock(int job, Tick now) {
    for (auto& owner : lock_owner_) {
        if (owner == job) {
            owner = -1;
            return drain_queue(now);
        }
    }
    throw InternalError("job " + std::to_string(job) + " releases a QPU lock it does not hold");
}

int ClusterState::expand_nodes(int job, int extra_max, Tick now) {
    if (extra_max < 0) throw InternalError("negative expansion");
    const int extra = std::min(free_, extra_max);
    if (extra > 0) {
        free_ -= extra;
        set_job_nodes(job, nodes_held(job) + extra, now);
    }
    return extra;
}

bool ClusterState::acquire_vqpu(int job, Tick now) {
    const auto it = token_holders_.find(job);
    if (it != token_holders_.end() && it->second) {
        throw InternalError("job " + std::to_string(job) + " double-acquires a vQPU");
    }
    if (static_cast<int>(token_holders_.size()) >= cfg_.n_vqpus) return false;
    token_holders_[job] = true;
    open_token_[job] = token_log_.size();
    token_log_.push_back(TokenInterval{job, now, -1});
    return true;
}

int ClusterState::nodes_held(int job) const {
    const auto it = held_.find(job);
    return it == held_.end() ? 0 : it->second;
}

bool ClusterState::holds_token(int job) const {
    const auto it = token_holders_.find(job);
    return it != token_holders_.end() && it->second;
}

int ClusterState::lock_owner(int qpu) const {
    return lock_owner_.at(static_cast<std::size_t>(qpu));
}

int ClusterState::locked_qpu(int job) const {
    for (std::size_t q = 0; q < lock_owner_.size(); ++q) {
        if (lock_owner_[q] == job) return static_cast<int>(q);
    }
    return -1;
}

void ClusterState::set_job_nodes(int job, int nodes, Tick now) {
    const auto open = open_interval_.find(job);
    if (open != open_interval_.end()) {
        ledger_[open->second].end = now;
        open_interval_.erase(open);
    }
    if (nodes > 0) {
        open_interval_[job] = ledger_.size();
        ledger_.push_back(LedgerInterval{job, nodes, now, -1});
        held_[job] = nodes;
    } else {
        held_.erase(job);
    }
}

void ClusterState::verify_drained() const {
    if (free_ != cfg_.n_nodes) {
        throw InternalError("run ended with " + std::to_string(cfg_.n_nodes - free_) +
                            " nodes still allocated");
    }
    if (!open_interval_.empty()) throw InternalError("run ended with open ledger intervals");
    if (!token_holders_.empty()) throw InternalError("run ended with outstanding vQPU tokens");
    for (int owner : lock_owner_) {
        if (owner >= 0) throw InternalError("run ended with a held QPU lock");
    }
}

std::int64_t node_milliseconds(const std::vector<LedgerInterval>& ledger) {
    std::int64_t total = 0;
    for (const auto& iv : ledger) {
        if (iv.end < 0) throw InternalError("node_seconds over an open ledger interval");
        total += static_cast<std::int64_t>(iv.nodes) * (iv.end - iv.start);
    }
    return total;
}

std::int64_t node_milliseconds(const std::vector<LedgerInterval>& ledger, int job) {
    std::int64_t total = 0;
    for (const auto& iv : ledger) {
        if (iv.job != job) continue;
        if (iv.end < 0) throw InternalError("node_seconds over an open ledger interval");
        total += static_cast<std::int64_t>(iv.nodes) * (iv.end - iv.start);
    }
    return total;
}

double node_seconds(const std::vector<LedgerInterval>& ledger) {
    return static_cast<double>(node_milliseconds(ledger)) / 1000.0;
}

QpuBroker::QpuBroker(int n_qpus)
    : qpus_(static_cast<std::size_t>(n_qpus)), busy_(static_cast<std::size_t>(n_qpus)) {
    if (n_qpus < 1) throw ValidationError("broker needs at least one QPU");
}

QpuBroker::EnqueueResult QpuBroker::enqueue(QpuQueueEntry entry, Tick now, int forced_qpu) {
    int chosen = forced_qpu;
    if (chosen < 0) {
        Tick best = 0;
        for (std::size_t q = 0; q < qpus_.size(); ++q) {
            const Tick avail = std::max(qpus_[q].committed_until, now);
            if (chosen < 0 || avail < best) {
                chosen = static_cast<int>(q);
                best = avail;
            }
        }
    }
    auto& qpu = qpus_[static_cast<std::size_t>(chosen)];
    EnqueueResult res;
    res.qpu = chosen;
    res.position = static_cast<int>(qpu.waiting.size()) + (qpu.current ? 1 : 0);
    res.start_now = !qpu.current && qpu.waiting.empty();
    qpu.committed_until = std::max(qpu.committed_until, now) + entry.burst;
    qpu.waiting.push_back(std::move(entry));
    return res;
}

QpuQueueEntry QpuBroker::begin_service(int qpu, Tick now) {
    auto& q = qpus_.at(static_cast<std::size_t>(qpu));
    if (q.current) throw InternalError("QPU begins service while already serving");
    if (q.waiting.empty()) throw InternalError("QPU begins service with an empty queue");
    q.current = q.waiting.front();
    q.waiting.pop_front();
    q.current_start = now;
    return *q.current;
}

QpuQueueEntry QpuBroker::end_service(int qpu, Tick now) {
    auto& q = qpus_.at(static_cast<std::size_t>(qpu));
    if (!q.current) throw InternalError("QPU ends service while idle");
    QpuQueueEntry done = *q.current;
    q.current.reset();
    busy_[static_cast<std::size_t>(qpu)].push_back(Interval{q.current_start, now});
    return done;
}

const QpuQueueEntry& QpuBroker::front(int qpu) const {
    const auto& q = qpus_.at(static_cast<std::size_t>(qpu));
    if (q.waiting.empty()) throw InternalError("front() on an empty QPU queue");
    return q.waiting.front();
}

bool QpuBroker::serving(int qpu) const {
    return qpus_.at(static_cast<std::size_t>(qpu)).current.has_value();
}

bool QpuBroker::queue_empty(int qpu) const {
    return qpus_.at(static_cast<std::size_t>(qpu)).waiting.empty();
}

bool QpuBroker::all_idle() const {
    for (const auto& q : qpus_) {
        if (q.current || !q.waiting.empty()) return false;
    }
    return true;
}

} // namespace qhs
