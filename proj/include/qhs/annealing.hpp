#pragma once

#include <cstdint>

#include <qhs/qubo.hpp>

namespace qhs {

/// Single-flip Metropolis schedule with geometric cooling (T <- alpha * T
/// after each sweep). Deterministic for a given seed.
struct SaSchedule {
    double t0{1.0};
    double alpha{0.97};
    int sweeps{500};
    std::uint64_t seed{0};
};

struct SaResult {
    std::vector<std::uint8_t> assignment;
    double energy{0.0};
};

/// Anneals from the all-zeros state; one sweep proposes one flip per
/// variable in index order; returns the best assignment seen.
SaResult sa_solve(const QuboProblem& q, const SaSchedule& schedule);

} // namespace qhs
