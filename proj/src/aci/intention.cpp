#include "cotransport/aci/intention.hpp"

#include "cotransport/errors.hpp"

#include <cmath>

namespace cotransport::aci {

void IntentionParams::validate() const {
    if (!(lower_angle_threshold > 0)) throw ConfigError("aci.lower_angle_threshold must be positive");
    if (!(upper_angle_threshold > lower_angle_threshold))
        throw ConfigError("aci.upper_angle_threshold must exceed aci.lower_angle_threshold");
    if (!(velocity_threshold > 0)) throw ConfigError("aci.velocity_threshold must be positive");
}

RotationIntentionDetector::RotationIntentionDetector(IntentionParams params) : params_(params) {}

IntentionOutput RotationIntentionDetector::step(const YawSample& s) {
    const double relative = std::abs(s.hand_in_torso);
    const bool above = relative > params_.lower_angle_threshold;
    if (above && !above_lower_) {
        hand_lower_ = s.hand_world;
        torso_lower_ = s.torso_world;
    }
    above_lower_ = above;

    bool condition = false;
    if (above) {
        hand_upper_ = s.hand_world;
        torso_upper_ = s.torso_world;
        delta_hand_ = std::abs(hand_upper_ - hand_lower_);
        delta_torso_ = std::abs(torso_upper_ - torso_lower_);
        condition = relative > params_.upper_angle_threshold && delta_torso_ > delta_hand_ &&
                    std::abs(s.torso_rate) < params_.velocity_threshold;
    }

    IntentionOutput out;
    if (!params_.latching) {
        zeta_ = condition;
        if (condition) detected_ = s.torso_pose;
        out.triggered = condition;
    } else if (latched_) {
        zeta_ = true;
    } else if (awaiting_rearm_) {
        if (!above) awaiting_rearm_ = false;
        zeta_ = false;
    } else if (condition) {
        latched_ = true;
        zeta_ = true;
        detected_ = s.torso_pose;
        out.triggered = true;
    } else {
        zeta_ = false;
    }

    out.zeta = zeta_;
    if (zeta_) out.detected_torso = detected_;
    return out;
}

void RotationIntentionDetector::notify_rotation_complete() {
    if (!latched_) return;
    latched_ = false;
    zeta_ = false;
    awaiting_rearm_ = true;
}

}  // namespace cotransport::aci
