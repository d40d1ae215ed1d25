#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <qhs/scenario.hpp>

namespace qhs {

/// Parses (and resolves) a scenario document. Unknown fields are rejected
/// with the offending field path. `seed_override` replaces the config seed
/// before jobs are materialized.
Scenario parse_scenario_text(const std::string& text,
                             std::optional<std::uint64_t> seed_override = std::nullopt);
Scenario load_scenario_file(const std::string& path,
                            std::optional<std::uint64_t> seed_override = std::nullopt);

/// Canonical serialization (2-space indent, LF, trailing newline) of a
/// resolved scenario; all defaults are echoed explicitly, so
/// parse(emit(s)) == s for every valid scenario.
std::string emit_scenario_text(const Scenario& scenario);

struct SweepCell {
    std::vector<std::string> param_values; // aligned with SweepPlan::axis_names
    Scenario scenario;
};

/// Expanded Cartesian product of a sweep document, first axis outermost.
struct SweepPlan {
    std::vector<std::string> axis_names;
    std::vector<SweepCell> cells;
};

SweepPlan parse_sweep_text(const std::string& text,
                           std::optional<std::uint64_t> seed_override = std::nullopt);
SweepPlan load_sweep_file(const std::string& path,
                          std::optional<std::uint64_t> seed_override = std::nullopt);

} // namespace qhs
