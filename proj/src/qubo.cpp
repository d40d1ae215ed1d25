#include <qhs/qubo.hpp>

#include <string>

#include <qhs/errors.hpp>

namespace qhs {

bool operator==(const QuboProblem& a, const QuboProblem& b) {
    return a.n == b.n && a.linear == b.linear && a.quadratic == b.quadratic &&
           a.penalty == b.penalty;
}

QuboProblem build_mis_qubo(const Graph& g, double penalty) {
    if (penalty <= 1.0) {
        throw ValidationError("MIS penalty must exceed 1, got " + std::to_string(penalty));
    }
    QuboProblem q;
    q.n = g.n;
    q.penalty = penalty;
    q.linear.assign(static_cast<std::size_t>(g.n), -1.0);
    q.quadratic.reserve(g.edges.size());
    for (const auto& [u, v] : g.edges) {
        q.quadratic.emplace_back(u, v, penalty);
    }
    return q;
}

double qubo_energy(const QuboProblem& q, const std::vector<std::uint8_t>& assignment) {
    if (assignment.size() != static_cast<std::size_t>(q.n)) {
        throw ValidationError("assignment length " + std::to_string(assignment.size()) +
                              " does not match variable count " + std::to_string(q.n));
    }
    double energy = 0.0;
    for (int i = 0; i < q.n; ++i) {
        if (assignment[static_cast<std::size_t>(i)]) energy += q.linear[static_cast<std::size_t>(i)];
    }
    for (const auto& [i, j, w] : q.quadratic) {
        if (assignment[static_cast<std::size_t>(i)] && assignment[static_cast<std::size_t>(j)]) {
            energy += w;
        }
    }
    return energy;
}

MisResult brute_force_mis(const Graph& g) {
    if (g.n > kBruteForceMaxVertices) {
        throw ValidationError("brute_force_mis is bounded at n <= " +
                              std::to_string(kBruteForceMaxVertices) +
                              "; use the annealer for larger instances");
    }
    // Bitmask adjacency makes the independence test one AND per candidate.
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(g.n), 0);
    for (const auto& [u, v] : g.edges) {
        adj[static_cast<std::size_t>(u)] |= 1u << v;
        adj[static_cast<std::size_t>(v)] |= 1u << u;
    }
    int best_size = 0;
    std::uint32_t best_mask = 0;
    const std::uint32_t limit = g.n == 0 ? 1u : (1u << g.n);
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        const int size = __builtin_popcount(mask);
        if (size <= best_size) continue;
        bool independent = true;
        for (std::uint32_t rest = mask; rest != 0;) {
            const int v = __builtin_ctz(rest);
            rest &= rest - 1;
            if (adj[static_cast<std::size_t>(v)] & mask) {
                independent = false;
                break;
            }
        }
        if (independent) {
            best_size = size;
            best_mask = mask;
        }
    }
    MisResult out;
    out.size = best_size;
    out.witness.assign(static_cast<std::size_t>(g.n), 0);
    for (int v = 0; v < g.n; ++v) {
        if (best_mask & (1u << v)) out.witness[static_cast<std::size_t>(v)] = 1;
    }
    return out;
}

} // namespace qhs
