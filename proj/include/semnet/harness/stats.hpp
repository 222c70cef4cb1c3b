// Batch statistics: sample mean/stddev, Student-t confidence half-widths,
// percentiles.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "semnet/common.hpp"

namespace semnet {

inline double mean_of(const std::vector<double>& xs) {
    if (xs.empty()) throw MeasurementError("mean of empty sample");
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

inline double sample_stddev(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

// Two-sided 97.5% quantiles of the t distribution for small dof, 1.96 beyond.
inline double t_critical_975(int dof) {
    static const double table[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306,
                                   2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131, 2.120,
                                   2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069, 2.064,
                                   2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
    if (dof < 1) throw MeasurementError("t critical value needs dof >= 1");
    if (dof <= 30) return table[dof - 1];
    return 1.96;
}

// Half-width of the 95% confidence interval for the mean.
inline double ci95_halfwidth(const std::vector<double>& xs) {
    if (xs.size() < 2) return 0.0;
    return t_critical_975(static_cast<int>(xs.size()) - 1) * sample_stddev(xs) /
           std::sqrt(static_cast<double>(xs.size()));
}

// Linear-interpolated percentile, q in [0,1].
inline double percentile(std::vector<double> xs, double q) {
    if (xs.empty()) throw MeasurementError("percentile of empty sample");
    std::sort(xs.begin(), xs.end());
    const double pos = q * (static_cast<double>(xs.size()) - 1.0);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    if (lo == hi) return xs[lo];
    const double w = pos - static_cast<double>(lo);
    return xs[lo] * (1.0 - w) + xs[hi] * w;
}

}  // namespace semnet
