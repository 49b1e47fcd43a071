#pragma once

#include "cotransport/aci/adaptive_index.hpp"
#include "cotransport/aci/admittance.hpp"
#include "cotransport/aci/intention.hpp"
#include "cotransport/aci/reference.hpp"
#include "cotransport/aci/trajectory.hpp"

#include <optional>

namespace cotransport::aci {

struct AciParams {
    AdmittanceParams admittance;
    AdaptiveIndexParams index;
    IntentionParams intention;
    double rotation_min_duration = 2.0;  // [s]
    double rotation_yaw_rate = 0.3;      // [rad/s]
    // MoCap hand speeds below this are treated as zero [m/s]
    double hand_velocity_deadband = 0.0;

    void validate() const;
};

/// Per-tick measurements: force part of the F/T wrench at the EE, MoCap hand
/// velocity and torso/hand yaw channels.
struct AciInput {
    double t = 0.0;
    Eigen::Vector3d force = Eigen::Vector3d::Zero();
    Eigen::Vector3d hand_velocity = Eigen::Vector3d::Zero();
    YawSample yaw;
};

struct AciOutput {
    Pose x_d;
    Twist xdot_d;
    Eigen::Vector3d v_adm = Eigen::Vector3d::Zero();
    Eigen::Vector3d v_h = Eigen::Vector3d::Zero();
    Eigen::Vector3d v_trans = Eigen::Vector3d::Zero();
    double alpha = 0.0;
    bool zeta = false;
};

/// Admittance controller, object translation unit, object rotation unit and
/// reference generator advanced once per control tick.
class AdaptiveCollaborativeInterface {
public:
    /// initial_ee seeds x_d; initial_ee relative to initial_torso is the EE-in-torso
    /// configuration restored after a detected rotation.
    AdaptiveCollaborativeInterface(ControllerMode mode, AciParams params, const Pose& initial_ee,
                                   const Pose& initial_torso);

    AciOutput step(const AciInput& input, double dt);

    ControllerMode mode() const { return reference_.mode; }
    const Pose& ee_in_torso() const { return ee_in_torso_; }
    const std::optional<CubicTrajectory>& active_rotation() const { return rotation_; }
    const RotationIntentionDetector& detector() const { return detector_; }
    const AdaptiveIndex& index() const { return index_; }
    const ReferenceState& reference() const { return reference_; }

private:
    AciParams params_;
    ReferenceState reference_;
    Pose ee_in_torso_;
    Eigen::Vector3d v_adm_ = Eigen::Vector3d::Zero();
    AdaptiveIndex index_;
    RotationIntentionDetector detector_;
    std::optional<CubicTrajectory> rotation_;
};

}  // namespace cotransport::aci
