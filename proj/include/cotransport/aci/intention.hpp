#pragma once

#include "cotransport/types.hpp"

#include <optional>

namespace cotransport::aci {

struct IntentionParams {
    double lower_angle_threshold = 0.2;   // [rad]
    double upper_angle_threshold = 0.4;   // [rad]
    double velocity_threshold = 0.05;     // [rad/s]
    // Hold zeta at 1 from detection until the rotation completes; re-arm once
    // |theta_h^t| drops below the lower threshold.
    bool latching = true;

    void validate() const;
};

/// Yaw measurements consumed per tick. Angles are unwrapped.
struct YawSample {
    double hand_in_torso = 0.0;   // theta_h^t
    double hand_world = 0.0;      // theta_h^w
    double torso_world = 0.0;     // theta_t^w
    double torso_rate = 0.0;      // filtered theta_t^w rate
    Pose torso_pose;              // T_t^w
};

struct IntentionOutput {
    bool zeta = false;
    bool triggered = false;             // rising edge this tick
    std::optional<Pose> detected_torso; // T_{t,det}^w while zeta holds
};

/// Streaming torso-led rotation intention detector.
class RotationIntentionDetector {
public:
    explicit RotationIntentionDetector(IntentionParams params = {});

    IntentionOutput step(const YawSample& sample);

    /// Called by the rotation unit when its trajectory has finished.
    void notify_rotation_complete();

    bool zeta() const { return zeta_; }
    bool latched() const { return latched_; }
    bool above_lower() const { return above_lower_; }
    double hand_delta() const { return delta_hand_; }
    double torso_delta() const { return delta_torso_; }
    const std::optional<Pose>& detected_torso() const { return detected_; }
    const IntentionParams& params() const { return params_; }

private:
    IntentionParams params_;
    double hand_lower_ = 0.0, hand_upper_ = 0.0;    // theta_{h,l}, theta_{h,u}
    double torso_lower_ = 0.0, torso_upper_ = 0.0;  // theta_{t,l}, theta_{t,u}
    double delta_hand_ = 0.0, delta_torso_ = 0.0;
    bool above_lower_ = false;
    bool zeta_ = false;
    bool latched_ = false;
    bool awaiting_rearm_ = false;
    std::optional<Pose> detected_;
};

}  // namespace cotransport::aci
