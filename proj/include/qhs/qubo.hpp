#pragma once

#include <cstdint>
#include <tuple>
#include <vector>

#include <qhs/graph.hpp>

namespace qhs {

/// Quadratic unconstrained binary optimization instance. For the MIS
/// encoding used here: E(x) = -sum_i x_i + P * sum_{(i,j) in E} x_i x_j,
/// so quadratic terms exist only on graph edges.
struct QuboProblem {
    int n{0};
    std::vector<double> linear;
    std::vector<std::tuple<int, int, double>> quadratic; // (i, j, w) with i < j, sorted
    double penalty{2.0};
};

bool operator==(const QuboProblem& a, const QuboProblem& b);

/// MIS encoding: linear -1 per vertex, +P per edge. Requires P > 1, else a
/// QUBO optimum may violate independence.
QuboProblem build_mis_qubo(const Graph& g, double penalty);

double qubo_energy(const QuboProblem& q, const std::vector<std::uint8_t>& assignment);

struct MisResult {
    int size{0};
    std::vector<std::uint8_t> witness;
};

/// Exhaustive maximum-independent-set search, n <= 24. Acceptance oracle;
/// independent of the annealing path.
MisResult brute_force_mis(const Graph& g);

constexpr int kBruteForceMaxVertices = 24;

} // namespace qhs
