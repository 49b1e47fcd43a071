#include "cotransport/aci/interface.hpp"

#include "cotransport/errors.hpp"

namespace cotransport::aci {

void AciParams::validate() const {
    admittance.validate();
    index.validate();
    intention.validate();
    if (!(rotation_min_duration > 0)) throw ConfigError("aci.rotation_min_duration must be positive");
    if (!(rotation_yaw_rate > 0)) throw ConfigError("aci.rotation_yaw_rate must be positive");
    if (!(hand_velocity_deadband >= 0)) throw ConfigError("aci.hand_velocity_deadband must be non-negative");
}

AdaptiveCollaborativeInterface::AdaptiveCollaborativeInterface(ControllerMode mode, AciParams params,
                                                               const Pose& initial_ee, const Pose& initial_torso)
    : params_(params),
      reference_{initial_ee, Twist::zero(), mode},
      ee_in_torso_(initial_torso.inverse() * initial_ee),
      index_(params.index),
      detector_(params.intention) {}

AciOutput AdaptiveCollaborativeInterface::step(const AciInput& in, double dt) {
    AciOutput out;
    v_adm_ = admittance_step(in.force, v_adm_, dt, params_.admittance);
    out.v_adm = v_adm_;
    if (!in.hand_velocity.allFinite()) throw RuntimeError("aci: non-finite hand velocity");
    out.v_h = in.hand_velocity.norm() > params_.hand_velocity_deadband ? in.hand_velocity
                                                                       : Eigen::Vector3d::Zero();
    out.alpha = index_.update(in.t, v_adm_, out.v_h);
    out.v_trans = translation_velocity(reference_.mode, v_adm_, out.v_h, out.alpha);

    bool zeta = false;
    Twist xdot_rot = Twist::zero();
    if (reference_.mode == ControllerMode::Aci) {
        if (rotation_ && rotation_->finished(in.t)) {
            rotation_.reset();
            detector_.notify_rotation_complete();
        }
        const IntentionOutput intent = detector_.step(in.yaw);
        if (intent.triggered && intent.detected_torso) {
            const Pose goal = desired_rotation_pose(*intent.detected_torso, ee_in_torso_);
            const double duration =
                rotation_duration(reference_.x_d, goal, params_.rotation_min_duration, params_.rotation_yaw_rate);
            rotation_ = plan_rotation(reference_.x_d, goal, in.t, duration);
        }
        zeta = intent.zeta && rotation_.has_value();
        if (zeta) xdot_rot = rotation_->sample(in.t).twist;
    }

    const Reference ref = reference_step(reference_, zeta, xdot_rot, out.v_trans, dt);
    out.x_d = ref.x_d;
    out.xdot_d = ref.xdot_d;
    out.zeta = zeta;
    return out;
}

}  // namespace cotransport::aci
