#pragma once

#include "cotransport/types.hpp"

namespace cotransport::aci {

/// Rest-to-rest point-to-point motion with s(tau) = 3 tau^2 - 2 tau^3 applied to the
/// straight-line position path and the shortest-arc orientation path.
class CubicTrajectory {
public:
    struct Sample {
        Pose pose;
        Twist twist;
    };

    CubicTrajectory() = default;
    CubicTrajectory(const Pose& start, const Pose& goal, double t0, double duration);

    Sample sample(double t) const;

    bool finished(double t) const { return t >= t0_ + duration_; }
    const Pose& start() const { return start_; }
    const Pose& goal() const { return goal_; }
    double start_time() const { return t0_; }
    double duration() const { return duration_; }
    double end_time() const { return t0_ + duration_; }

private:
    Pose start_;
    Pose goal_;
    double t0_ = 0.0;
    double duration_ = 1.0;
    Eigen::Vector3d delta_position_ = Eigen::Vector3d::Zero();
    Eigen::Vector3d delta_rotation_ = Eigen::Vector3d::Zero();  // log(R_goal R_start^T)
};

/// s(tau) and ds/dtau of the cubic time scaling, tau clamped to [0, 1].
double cubic_scaling(double tau);
double cubic_scaling_rate(double tau);

/// Planned duration for a rotation: max(min_duration, rotation angle / yaw_rate).
double rotation_duration(const Pose& start, const Pose& goal, double min_duration = 2.0, double yaw_rate = 0.3);

CubicTrajectory plan_rotation(const Pose& start, const Pose& goal, double t0, double duration);

}  // namespace cotransport::aci
