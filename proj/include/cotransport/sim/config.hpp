#pragma once

#include "cotransport/aci/interface.hpp"
#include "cotransport/human.hpp"
#include "cotransport/kinematics.hpp"
#include "cotransport/objects.hpp"
#include "cotransport/wbc.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cotransport::sim {

struct WaypointSpec {
    // EE positions relative to the initial EE position, achieved in order.
    std::vector<Eigen::Vector3d> offsets;
    double tolerance = 0.02;   // [m]
    double max_speed = 0.05;   // [m/s]
};

/// One scenario: robot, controller, partner, object, script and run settings.
struct ScenarioConfig {
    std::string name = "scenario";
    KinematicModel model = ur16e_on_omni_base();
    Eigen::VectorXd q_initial = ur16e_default_configuration();
    aci::ControllerMode mode = aci::ControllerMode::Aci;
    wbc::WbcParams wbc = wbc::WbcParams::defaults(9, ur16e_default_configuration());
    aci::AciParams aci;
    human::HumanParams human;
    double torso_yaw = 3.141592653589793;  // partner faces the robot
    objects::ObjectModel object = objects::peanut_bag();  // rest_vector in the EE frame
    std::vector<human::Segment> script;
    double dt = 0.001;
    double duration = 10.0;
    bool stop_on_completion = true;
    WaypointSpec waypoints;
    std::vector<double> interval_boundaries;
    double motion_speed_threshold = 0.05;  // hand speed gating the motion mean of alpha [m/s]
    Eigen::Vector3d robot_marker = Eigen::Vector3d::Zero();  // EE frame
    Eigen::Vector3d human_marker = Eigen::Vector3d::Zero();  // hand frame
    std::uint64_t seed = 0;
    std::optional<std::filesystem::path> human_trace;
    std::optional<std::filesystem::path> out_trace;
    std::optional<std::filesystem::path> out_metrics;
};

/// Every violated invariant, one message per field; empty when valid.
std::vector<std::string> validate(const ScenarioConfig& config);

/// Builds a config from a JSON document. Relative paths resolve against base_dir.
/// Throws ConfigError listing every problem found.
ScenarioConfig parse_scenario(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
ScenarioConfig load_scenario(const std::filesystem::path& path);


}  // namespace cotransport::sim
