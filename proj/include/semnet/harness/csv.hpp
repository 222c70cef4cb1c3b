// CSV writers with byte-stable number formatting.
#pragma once

#include <string>
#include <vector>

#include "semnet/harness/metrics.hpp"

namespace semnet {

std::string csv_num(double v);

void write_decision_log(const SimOutput& out, const std::string& path);
void write_distortion_log(const SimOutput& out, const std::string& path);
void write_message_log(const SimOutput& out, const std::string& path);
void write_run_metrics(const RunMetrics& m, Scheme scheme, std::uint64_t seed,
                       const std::string& path);

// Long-form metric rows: (name, value) pairs in a stable order.
std::vector<std::pair<std::string, double>> metric_rows(const RunMetrics& m);

}  // namespace semnet
