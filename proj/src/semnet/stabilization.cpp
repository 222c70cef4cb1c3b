#include "semnet/kplane/stabilization.hpp"

#include <cmath>
#include <cstddef>

#include "semnet/common.hpp"

namespace semnet {

int stabilization_time(const std::vector<double>& series, double band_floor) {
    const std::size_t n = series.size();
    if (n < 20) throw MeasurementError("stabilization_time: need at least 20 intervals");

    const std::size_t tail = std::max<std::size_t>(1, n / 4);
    double steady = 0.0;
    for (std::size_t i = n - tail; i < n; ++i) steady += series[i];
    steady /= static_cast<double>(tail);

    const double band = std::max(0.10 * std::abs(steady), band_floor);

    auto rolling = [&](std::size_t i) {
        const std::size_t from = i >= 2 ? i - 2 : 0;
        double s = 0.0;
        for (std::size_t j = from; j <= i; ++j) s += series[j];
        return s / static_cast<double>(i - from + 1);
    };

    int run = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(rolling(i) - steady) <= band) {
            ++run;
            if (run == 3) return static_cast<int>(i) - 1;  // 1-based index of the run's start
        } else {
            run = 0;
        }
    }
    return kNotStabilized;
}

}  // namespace semnet
