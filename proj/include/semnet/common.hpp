// Error categories and small shared helpers used across the simulator.
#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>

namespace semnet {

// Error taxonomy: the CLI maps each category to a distinct exit code.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

struct SimulationError : std::runtime_error {
    explicit SimulationError(const std::string& what) : std::runtime_error(what) {}
};

struct MeasurementError : std::runtime_error {
    explicit MeasurementError(const std::string& what) : std::runtime_error(what) {}
};

inline double clamp(double x, double lo, double hi) { return std::min(hi, std::max(lo, x)); }
inline double clamp01(double x) { return clamp(x, 0.0, 1.0); }

}  // namespace semnet
