#pragma once

#include "cotransport/types.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace cotransport::aci {

/// Aci blends admittance and hand velocities through alpha and enables the
/// rotation unit; the two baselines feed a single source and never rotate.
enum class ControllerMode { Aci, AdmittanceOnly, Teleop };

std::string to_string(ControllerMode mode);
/// Accepts "aci", "admittance", "teleop"; nullopt otherwise.
std::optional<ControllerMode> parse_controller_mode(std::string_view name);

/// v_trans = v_adm + alpha v_h.
Eigen::Vector3d object_translation(const Eigen::Vector3d& v_adm, const Eigen::Vector3d& v_h, double alpha);

/// Translation velocity for a controller mode: the blend for Aci, v_adm or v_h otherwise.
Eigen::Vector3d translation_velocity(ControllerMode mode, const Eigen::Vector3d& v_adm, const Eigen::Vector3d& v_h,
                                     double alpha);

/// T_r,des = T_t,det * T_r,i^{t,i}.
Pose desired_rotation_pose(const Pose& detected_torso, const Pose& ee_in_torso);

struct ReferenceState {
    Pose x_d;
    Twist xdot_d;
    ControllerMode mode = ControllerMode::Aci;
};

struct Reference {
    Pose x_d;
    Twist xdot_d;
};

/// Emits xdot_d = zeta xdot_rot + (1 - zeta) [v_trans; 0] together with the current
/// x_d, then advances state.x_d by xdot_d dt. Zeta is ignored outside Aci mode.
Reference reference_step(ReferenceState& state, bool zeta, const Twist& xdot_rot, const Eigen::Vector3d& v_trans,
                         double dt);

}  // namespace cotransport::aci
