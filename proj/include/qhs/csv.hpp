#pragma once

#include <string>
#include <vector>

#include <qhs/metrics.hpp>
#include <qhs/policies.hpp>

namespace qhs {

/// CSV emission: comma-separated, header row, '.' decimal point, LF line
/// endings, seconds with exactly 3 decimals — bit-exact across platforms.

std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsReport& m, PolicyKind policy, std::size_t n_jobs);
std::string metrics_csv(const MetricsReport& m, PolicyKind policy, std::size_t n_jobs);

std::string jobs_csv(const RunTrace& trace);
std::string trace_csv(const RunTrace& trace);

std::string sweep_csv_header(const std::vector<std::string>& axis_names);
std::string sweep_csv_row(const std::vector<std::string>& param_values, const MetricsReport& m,
                          PolicyKind policy, std::size_t n_jobs);

} // namespace qhs
