// Discrete encoder fidelity levels and the utility-based selection rule.
#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "semnet/common.hpp"

namespace semnet {

enum class FidelityId { low = 0, mid = 1, high = 2 };

inline const char* fidelity_name(FidelityId f) {
    switch (f) {
        case FidelityId::low: return "low";
        case FidelityId::mid: return "mid";
        case FidelityId::high: return "high";
    }
    return "mid";
}

struct FidelityLevel {
    FidelityId id = FidelityId::mid;
    double quality = 0.8;            // q(f)
    double cost = 0.5;               // b(f)
    double encoder_distortion = 0.01;  // d_enc(f)
};

// Ordered low < mid < high with strictly increasing quality/cost and strictly
// decreasing encoder distortion.
class FidelitySet {
public:
    FidelitySet(FidelityLevel low, FidelityLevel mid, FidelityLevel high)
        : levels_{low, mid, high} {
        levels_[0].id = FidelityId::low;
        levels_[1].id = FidelityId::mid;
        levels_[2].id = FidelityId::high;
        for (int i = 1; i < 3; ++i) {
            if (!(levels_[i - 1].quality < levels_[i].quality) ||
                !(levels_[i - 1].cost < levels_[i].cost) ||
                !(levels_[i - 1].encoder_distortion > levels_[i].encoder_distortion))
                throw ConfigError("fidelity levels must be strictly ordered");
        }
    }

    static FidelitySet defaults() {
        return FidelitySet({FidelityId::low, 0.5, 0.2, 0.025},
                           {FidelityId::mid, 0.8, 0.5, 0.010},
                           {FidelityId::high, 1.0, 1.0, 0.002});
    }

    const FidelityLevel& at(FidelityId id) const { return levels_[static_cast<int>(id)]; }
    const FidelityLevel& level(std::size_t i) const { return levels_[i]; }
    std::size_t count() const { return levels_.size(); }
    FidelityId highest() const { return FidelityId::high; }

    bool has_higher(FidelityId id) const { return id != FidelityId::high; }
    FidelityId next_up(FidelityId id) const {
        if (!has_higher(id)) throw DomainError("no fidelity level above high");
        return static_cast<FidelityId>(static_cast<int>(id) + 1);
    }

private:
    std::array<FidelityLevel, 3> levels_;
};

// Utility of encoding at level f given relevance R.
inline double fidelity_utility(double r, const FidelityLevel& f, double omega) {
    return r * f.quality - omega * f.cost;
}

// argmax of the utility; ties break toward the cheaper level.
inline FidelityId select_fidelity(double r, const FidelitySet& levels, double omega) {
    if (r < 0.0 || r > 1.0) throw ValidationError("select_fidelity: R outside [0,1]");
    FidelityId best = FidelityId::low;
    double best_u = fidelity_utility(r, levels.level(0), omega);
    for (std::size_t i = 1; i < levels.count(); ++i) {
        const double u = fidelity_utility(r, levels.level(i), omega);
        if (u > best_u) {
            best_u = u;
            best = levels.level(i).id;
        }
    }
    return best;
}

}  // namespace semnet
