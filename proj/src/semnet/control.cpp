#include "semnet/distortion/control.hpp"

namespace semnet {

CorrectiveDecision corrective_action(double r, FidelityId current, double d_hat, double d_obs,
                                     const ControlConfig& cfg, const FidelitySet& levels) {
    cfg.validate();
    CorrectiveDecision out;
    out.gap = distortion_gap(d_obs, d_hat);
    out.tol = tolerance(r, cfg);
    out.f_temp = static_cast<double>(current) + cfg.lambda * out.gap;
    if (out.gap <= out.tol) {
        out.action = ControlAction::none;
        out.new_level = current;
        return out;
    }
    if (levels.has_higher(current)) {
        out.action = ControlAction::fidelity_up;
        out.new_level = levels.next_up(current);
    } else {
        out.action = ControlAction::reroute;
        out.new_level = current;
    }
    return out;
}

}  // namespace semnet
