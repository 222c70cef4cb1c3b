// Stabilization-time detector over a per-interval series.
#pragma once

#include <vector>

namespace semnet {

inline constexpr int kNotStabilized = -1;

// First interval index k (1-based, counted from the disturbance) such that the
// rolling 3-interval mean of the series stays inside +-10% of the
// post-disturbance steady mean (computed over the final quarter of the series)
// for 3 consecutive intervals. band_floor widens the band for near-zero steady
// means. Returns kNotStabilized when the series never settles.
int stabilization_time(const std::vector<double>& series_after_disturbance,
                       double band_floor = 0.0);

}  // namespace semnet
