#pragma once

#include "cotransport/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cotransport::objects {

/// Spring-damper coupling between the robot EE attachment and the human hand.
///
/// The rest vector is the nominal hand-minus-EE offset expressed in the EE frame,
/// so the object turns with the gripper. Deviations from it split into an axial
/// part (along the rest vector) with separate tension/compression stiffness and a
/// slack dead-zone, and a lateral part with its own stiffness. The lateral part
/// that points along world z may use a separate vertical stiffness (a bag held at
/// both ends sags instead of transmitting vertical force).
struct ObjectModel {
    Eigen::Vector3d rest_vector = Eigen::Vector3d(0.5, 0.0, 0.0);
    double axial_stiffness_tension = 0.0;      // [N/m]
    double axial_stiffness_compression = 0.0;  // [N/m]
    double lateral_stiffness = 0.0;            // [N/m]
    std::optional<double> vertical_stiffness;  // [N/m], lateral_stiffness when unset
    double damping = 0.0;                      // [Ns/m]
    double slack_length = 0.0;                 // [m]
    std::string label = "custom";

    /// Field-level problems; empty when valid.
    std::vector<std::string> problems() const;
    void validate() const;
};

struct CouplingWrench {
    Wrench at_ee;    // force the object applies on the robot
    Wrench at_hand;  // equal and opposite
};

CouplingWrench object_wrench(const ObjectModel& model, const Pose& hand_pose, const Twist& hand_twist,
                             const Pose& ee_pose, const Twist& ee_twist);

/// Potential energy stored in the springs for a given pose pair.
double elastic_energy(const ObjectModel& model, const Pose& hand_pose, const Pose& ee_pose);

ObjectModel rigid_rod();
ObjectModel slack_rope();
ObjectModel peanut_bag();
std::vector<ObjectModel> presets();
std::optional<ObjectModel> preset(std::string_view name);

}  // namespace cotransport::objects
