#include "cotransport/aci/reference.hpp"

#include "cotransport/errors.hpp"

namespace cotransport::aci {

std::string to_string(ControllerMode mode) {
    switch (mode) {
        case ControllerMode::Aci: return "aci";
        case ControllerMode::AdmittanceOnly: return "admittance";
        case ControllerMode::Teleop: return "teleop";
    }
    return "unknown";
}

std::optional<ControllerMode> parse_controller_mode(std::string_view name) {
    if (name == "aci") return ControllerMode::Aci;
    if (name == "admittance") return ControllerMode::AdmittanceOnly;
    if (name == "teleop") return ControllerMode::Teleop;
    return std::nullopt;
}

Eigen::Vector3d object_translation(const Eigen::Vector3d& v_adm, const Eigen::Vector3d& v_h, double alpha) {
    return v_adm + alpha * v_h;
}

Eigen::Vector3d translation_velocity(ControllerMode mode, const Eigen::Vector3d& v_adm, const Eigen::Vector3d& v_h,
                                     double alpha) {
    switch (mode) {
        case ControllerMode::AdmittanceOnly: return v_adm;
        case ControllerMode::Teleop: return v_h;
        case ControllerMode::Aci: break;
    }
    return object_translation(v_adm, v_h, alpha);
}

Pose desired_rotation_pose(const Pose& detected_torso, const Pose& ee_in_torso) { return detected_torso * ee_in_torso; }

Reference reference_step(ReferenceState& state, bool zeta, const Twist& xdot_rot, const Eigen::Vector3d& v_trans,
                         double dt) {
    if (!(dt > 0)) throw RuntimeError("reference_step: dt must be positive");
    const bool rotating = zeta && state.mode == ControllerMode::Aci;
    Twist xdot_d;
    if (rotating) {
        xdot_d = xdot_rot;
    } else {
        xdot_d.linear = v_trans;
    }
    const Reference out{state.x_d, xdot_d};
    state.xdot_d = xdot_d;
    state.x_d = integrate(state.x_d, xdot_d, dt);
    return out;
}

}  // namespace cotransport::aci
