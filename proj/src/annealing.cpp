#include <qhs/annealing.hpp>

#include <cmath>

#include <qhs/errors.hpp>
#include <qhs/rng.hpp>

namespace qhs {

SaResult sa_solve(const QuboProblem& q, const SaSchedule& schedule) {
    if (schedule.alpha <= 0.0 || schedule.alpha >= 1.0) {
        throw ValidationError("SA cooling factor must lie in (0, 1)");
    }
    if (schedule.sweeps < 1) {
        throw ValidationError("SA needs at least one sweep");
    }

    const auto n = static_cast<std::size_t>(q.n);
    std::vector<std::vector<std::pair<int, double>>> coupled(n);
    for (const auto& [i, j, w] : q.quadratic) {
        coupled[static_cast<std::size_t>(i)].emplace_back(j, w);
        coupled[static_cast<std::size_t>(j)].emplace_back(i, w);
    }

    std::vector<std::uint8_t> x(n, 0);
    double energy = 0.0;
    std::vector<std::uint8_t> best = x;
    double best_energy = energy;

    auto rng = Xoshiro256ss::stream(schedule.seed, 0x5a617365ULL);
    double temperature = schedule.t0;

    for (int sweep = 0; sweep < schedule.sweeps; ++sweep) {
        for (std::size_t v = 0; v < n; ++v) {
            // Energy delta of flipping variable v given current neighbours.
            double delta = q.linear[v];
            for (const auto& [u, w] : coupled[v]) {
                if (x[static_cast<std::size_t>(u)]) delta += w;
            }
            if (x[v]) delta = -delta;

            bool accept = delta <= 0.0;
            if (!accept && temperature > 0.0) {
                accept = rng.next_double() < std::exp(-delta / temperature);
            }
            if (accept) {
                x[v] ^= 1;
                energy += delta;
                if (energy < best_energy) {
                    best_energy = energy;
                    best = x;
                }
            }
        }
        temperature *= schedule.alpha;
    }

    SaResult out;
    out.assignment = std::move(best);
    out.energy = best_energy;
    return out;
}

} // namespace qhs
