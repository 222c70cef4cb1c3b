// Parameter-sensitivity sweeps over the proposed scheme: kappa x delta0,
// the (alpha, beta) simplex, and kappa x gamma.
#pragma once

#include <string>
#include <vector>

#include "semnet/harness/runner.hpp"

namespace semnet {

struct SweepOptions {
    std::vector<std::uint64_t> seeds{1, 2, 3};
    int jobs = 1;
};

struct SweepCell {
    double a = 0.0;  // first axis value
    double b = 0.0;  // second axis value
    double mean_sdsr = 0.0;
    double ci95 = 0.0;
};

// Scalar kappa maps onto the class weights as {low: k-0.2, mid: k, high:
// k+0.2}, clamped to [0,1]; the defaults reproduce the standard map at 0.5.
void apply_kappa_scalar(ScenarioConfig& cfg, double kappa);

// Valid (alpha, beta) grid points with alpha + beta <= 1 at the given step.
std::vector<std::pair<double, double>> simplex_grid(double step);

std::vector<SweepCell> sweep_kappa_delta(const ScenarioConfig& base,
                                         const std::vector<double>& kappas,
                                         const std::vector<double>& delta0s,
                                         const SweepOptions& opts);

// Full (alpha, beta) grid at the given step; points with alpha + beta > 1 are
// skipped with a warning. gamma = 1 - alpha - beta.
std::vector<SweepCell> sweep_simplex(const ScenarioConfig& base, double step,
                                     const SweepOptions& opts);

// gamma sweep rescales alpha and beta over the remaining mass, preserving
// their ratio.
std::vector<SweepCell> sweep_kappa_gamma(const ScenarioConfig& base,
                                         const std::vector<double>& kappas,
                                         const std::vector<double>& gammas,
                                         const SweepOptions& opts);

void write_sweep_csv(const std::string& panel, const std::string& axis_a,
                     const std::string& axis_b, const std::vector<SweepCell>& cells,
                     std::size_t n_seeds, const std::string& path);

}  // namespace semnet
