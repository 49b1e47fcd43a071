#include "cotransport/objects.hpp"

#include "cotransport/errors.hpp"

#include <cmath>

namespace cotransport::objects {

namespace {

struct Decomposition {
    Eigen::Vector3d deviation;
    Eigen::Vector3d axis;  // unit, zero when the rest vector vanishes
    double axial;
    Eigen::Vector3d lateral;     // horizontal lateral part
    Eigen::Vector3d vertical;    // lateral part along world z
};

Decomposition decompose(const ObjectModel& model, const Pose& hand_pose, const Pose& ee_pose) {
    const Eigen::Vector3d rest_world = ee_pose.orientation * model.rest_vector;
    Decomposition d;
    d.deviation = (hand_pose.position - ee_pose.position) - rest_world;
    const double len = rest_world.norm();
    d.axis = len > 0 ? Eigen::Vector3d(rest_world / len) : Eigen::Vector3d::Zero();
    d.axial = d.axis.dot(d.deviation);
    d.lateral = d.deviation - d.axial * d.axis;
    Eigen::Vector3d up = Eigen::Vector3d::UnitZ() - d.axis.z() * d.axis;
    if (up.norm() > 1e-9) {
        up.normalize();
        d.vertical = up.dot(d.lateral) * up;
    } else {
        d.vertical.setZero();
    }
    d.lateral -= d.vertical;
    return d;
}

double vertical_stiffness(const ObjectModel& m) { return m.vertical_stiffness.value_or(m.lateral_stiffness); }

// Signed axial spring force along the rest direction (positive = tension).
double axial_force(const ObjectModel& m, double extension) {
    if (extension > m.slack_length) return m.axial_stiffness_tension * (extension - m.slack_length);
    if (extension < 0) return m.axial_stiffness_compression * extension;
    return 0.0;
}

}  // namespace

std::vector<std::string> ObjectModel::problems() const {
    std::vector<std::string> out;
    if (!rest_vector.allFinite()) out.push_back("object.rest_vector must be finite");
    if (!(axial_stiffness_tension >= 0)) out.push_back("object.axial_stiffness_tension must be non-negative");
    if (!(axial_stiffness_compression >= 0))
        out.push_back("object.axial_stiffness_compression must be non-negative");
    if (!(lateral_stiffness >= 0)) out.push_back("object.lateral_stiffness must be non-negative");
    if (vertical_stiffness && !(*vertical_stiffness >= 0))
        out.push_back("object.vertical_stiffness must be non-negative");
    if (!(damping >= 0)) out.push_back("object.damping must be non-negative");
    if (!(slack_length >= 0)) out.push_back("object.slack_length must be non-negative");
    return out;
}

void ObjectModel::validate() const {
    const auto p = problems();
    if (!p.empty()) throw ConfigError(p.front());
}

CouplingWrench object_wrench(const ObjectModel& model, const Pose& hand_pose, const Twist& hand_twist,
                             const Pose& ee_pose, const Twist& ee_twist) {
    const Decomposition d = decompose(model, hand_pose, ee_pose);
    const Eigen::Vector3d rest_world = ee_pose.orientation * model.rest_vector;
    // rate of the deviation: relative velocity minus the rest vector turning with the EE
    const Eigen::Vector3d deviation_rate =
        hand_twist.linear - ee_twist.linear - ee_twist.angular.cross(rest_world);

    CouplingWrench w;
    w.at_ee.force = axial_force(model, d.axial) * d.axis + model.lateral_stiffness * d.lateral +
                    vertical_stiffness(model) * d.vertical + model.damping * deviation_rate;
    w.at_hand.force = -w.at_ee.force;
    return w;
}

double elastic_energy(const ObjectModel& model, const Pose& hand_pose, const Pose& ee_pose) {
    const Decomposition d = decompose(model, hand_pose, ee_pose);
    double axial = 0.0;
    if (d.axial > model.slack_length) {
        const double s = d.axial - model.slack_length;
        axial = 0.5 * model.axial_stiffness_tension * s * s;
    } else if (d.axial < 0) {
        axial = 0.5 * model.axial_stiffness_compression * d.axial * d.axial;
    }
    return axial + 0.5 * model.lateral_stiffness * d.lateral.squaredNorm() +
           0.5 * vertical_stiffness(model) * d.vertical.squaredNorm();
}

ObjectModel rigid_rod() {
    ObjectModel m;
    m.axial_stiffness_tension = 1e4;
    m.axial_stiffness_compression = 1e4;
    m.lateral_stiffness = 1e4;
    m.damping = 50.0;
    m.label = "rigid_rod";
    return m;
}

ObjectModel slack_rope() {
    ObjectModel m;
    m.axial_stiffness_tension = 1e4;
    m.slack_length = 1.0;
    m.label = "slack_rope";
    return m;
}

ObjectModel peanut_bag() {
    ObjectModel m;
    m.axial_stiffness_tension = 5e3;
    m.axial_stiffness_compression = 300.0;
    m.lateral_stiffness = 150.0;
    m.damping = 20.0;
    m.label = "peanut_bag";
    return m;
}

std::vector<ObjectModel> presets() { return {rigid_rod(), slack_rope(), peanut_bag()}; }

std::optional<ObjectModel> preset(std::string_view name) {
    for (auto& m : presets())
        if (m.label == name) return m;
    return std::nullopt;
}

}  // namespace cotransport::objects
