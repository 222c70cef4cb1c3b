// Robustness studies: embedding noise, dimensionality reduction, and concept
// drift, each across all schemes.
#pragma once

#include <string>
#include <vector>

#include "semnet/harness/runner.hpp"

namespace semnet {

struct RobustnessOptions {
    std::vector<std::uint64_t> seeds{1, 2, 3};
    std::vector<Scheme> schemes{Scheme::sp, Scheme::lbr, Scheme::dmr, Scheme::proposed};
    std::vector<double> noise_levels{0.0, 0.05, 0.1, 0.2};
    std::vector<int> dims{0, 64, 32};  // 0 = native
    std::vector<double> drift_fractions{0.0, 0.1, 0.2};
    int jobs = 1;
};

struct RobustnessRow {
    std::string experiment;  // noise | dimension | drift
    double level = 0.0;
    Scheme scheme = Scheme::sp;
    double mean_distortion = 0.0;
    double ci_distortion = 0.0;
    double mean_sdsr = 0.0;
    double ci_sdsr = 0.0;
};

struct DriftTrace {
    double fraction = 0.0;
    Scheme scheme = Scheme::sp;
    std::vector<double> time;
    std::vector<double> mean_r;  // per control interval, averaged over seeds
};

struct RobustnessResult {
    std::vector<RobustnessRow> rows;
    std::vector<DriftTrace> traces;
};

RobustnessResult run_robustness(const ScenarioConfig& base, const RobustnessOptions& opts);

void write_robustness_csv(const RobustnessResult& result, const std::string& path);
void write_drift_traces_csv(const RobustnessResult& result, const std::string& path);

}  // namespace semnet
