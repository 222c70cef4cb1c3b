// Urgency, relevance fusion, running z-normalization, and class assignment.
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "semnet/common.hpp"

namespace semnet {

// Normalized telemetry snapshot for one node. All components live in [0,1];
// the normalization constants are fixed per run configuration.
struct NetworkStateVector {
    double delay = 0.0;
    double queue = 0.0;
    double load = 0.0;
    double loss = 0.0;
    double mobility = 0.0;
    double link_quality = 1.0;

    void validate() const {
        const double c[6] = {delay, queue, load, loss, mobility, link_quality};
        for (double v : c)
            if (v < 0.0 || v > 1.0)
                throw ValidationError("network state component outside [0,1]");
    }
};

struct UrgencyWeights {
    double delay = 0.25;
    double queue = 0.20;
    double load = 0.20;
    double mobility = 0.15;
    double loss = 0.10;
    double link = 0.10;
};

// Monotone map from network state to a scalar urgency: a convex combination
// over the worsening direction of every component.
inline double urgency(const NetworkStateVector& n, const UrgencyWeights& w = {}) {
    n.validate();
    return clamp01(w.delay * n.delay + w.queue * n.queue + w.load * n.load +
                   w.mobility * n.mobility + w.loss * n.loss + w.link * (1.0 - n.link_quality));
}

struct FusionWeights {
    double alpha = 0.4;
    double beta = 0.3;
    double gamma = 0.3;
};

inline double fuse_relevance(double s, double c, double u, const FusionWeights& w = {}) {
    if (std::abs(w.alpha + w.beta + w.gamma - 1.0) > 1e-9)
        throw ConfigError("relevance weights must sum to 1");
    return w.alpha * s + w.beta * c + w.gamma * u;
}

// Sliding window of recent relevance values with floored standard deviation.
class RelevanceStats {
public:
    explicit RelevanceStats(std::size_t window = 200, double sigma_floor = 1e-6)
        : window_(window), floor_(sigma_floor) {}

    std::size_t size() const { return buf_.size(); }
    std::size_t window() const { return window_; }
    bool empty() const { return buf_.empty(); }
    bool full() const { return buf_.size() >= window_; }

    void push(double r) {
        if (buf_.size() < window_) {
            buf_.push_back(r);
        } else {
            buf_[head_] = r;
            head_ = (head_ + 1) % window_;
        }
    }

    double mean() const {
        if (buf_.empty()) return 0.0;
        double s = 0.0;
        for (double v : buf_) s += v;
        return s / static_cast<double>(buf_.size());
    }

    double stddev() const {
        if (buf_.empty()) return floor_;
        const double m = mean();
        double s = 0.0;
        for (double v : buf_) s += (v - m) * (v - m);
        return std::max(floor_, std::sqrt(s / static_cast<double>(buf_.size())));
    }

private:
    std::size_t window_;
    double floor_;
    std::vector<double> buf_;
    std::size_t head_ = 0;
};

// z = (R - mu) / sigma over the current window, then R joins the window.
// Empty window yields z = 0 by convention.
inline double z_normalize(double r, RelevanceStats& stats) {
    double z = 0.0;
    if (!stats.empty()) z = (r - stats.mean()) / stats.stddev();
    stats.push(r);
    return z;
}

// Fixed prior used until the window first fills, to avoid an all-medium start.
inline double cold_start_z(double r) { return (r - 0.5) / 0.25; }

enum class ImportanceClass { low = 0, medium = 1, high = 2 };

inline const char* class_name(ImportanceClass c) {
    switch (c) {
        case ImportanceClass::low: return "low";
        case ImportanceClass::medium: return "medium";
        case ImportanceClass::high: return "high";
    }
    return "medium";
}

inline ImportanceClass classify(double z) {
    if (z > 1.0) return ImportanceClass::high;
    if (z < -1.0) return ImportanceClass::low;
    return ImportanceClass::medium;
}

}  // namespace semnet
