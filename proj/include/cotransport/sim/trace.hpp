#pragma once

#include "cotransport/types.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace cotransport::sim {

/// One row per tick. The first row of a trace holds the initial state.
struct TraceRecord {
    double t = 0.0;
    Eigen::VectorXd q;
    Pose ee_pose;
    Twist ee_twist;  // J(q) qdot_d over the tick
    Eigen::Vector3d force = Eigen::Vector3d::Zero();  // F_H measured at the EE
    Eigen::Vector3d v_adm = Eigen::Vector3d::Zero();
    Eigen::Vector3d v_h = Eigen::Vector3d::Zero();
    double alpha = 0.0;
    bool zeta = false;
    Pose x_d;
    Pose hand_pose;
    double torso_yaw = 0.0;
    double torso_yaw_rate = 0.0;
    double hand_yaw = 0.0;
};

using Trace = std::vector<TraceRecord>;

std::vector<std::string> trace_header(int dofs);

/// Comma separated, header row, shortest round-trip formatting of every double.
void write_trace(std::ostream& os, const Trace& trace);
void write_trace(const std::filesystem::path& path, const Trace& trace);

}  // namespace cotransport::sim
