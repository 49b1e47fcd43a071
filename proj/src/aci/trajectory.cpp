#include "cotransport/aci/trajectory.hpp"

#include "cotransport/errors.hpp"

#include <algorithm>
#include <cmath>

namespace cotransport::aci {

double cubic_scaling(double tau) {
    tau = std::clamp(tau, 0.0, 1.0);
    return tau * tau * (3.0 - 2.0 * tau);
}

double cubic_scaling_rate(double tau) {
    if (tau <= 0.0 || tau >= 1.0) return 0.0;
    return 6.0 * tau * (1.0 - tau);
}

CubicTrajectory::CubicTrajectory(const Pose& start, const Pose& goal, double t0, double duration)
    : start_(start), goal_(goal), t0_(t0), duration_(duration) {
    if (!(duration > 0)) throw RuntimeError("cubic trajectory: duration must be positive");
    delta_position_ = goal.position - start.position;
    delta_rotation_ = rotation_log<double>(goal.rotation() * start.rotation().transpose());
}

CubicTrajectory::Sample CubicTrajectory::sample(double t) const {
    const double tau = (t - t0_) / duration_;
    if (tau >= 1.0) return {goal_, Twist::zero()};
    const double s = cubic_scaling(tau);
    const double sdot = cubic_scaling_rate(tau) / duration_;

    Sample out;
    out.pose.position = start_.position + s * delta_position_;
    out.pose.orientation = (rotation_exp<double>(s * delta_rotation_) * start_.orientation).normalized();
    out.twist.linear = sdot * delta_position_;
    out.twist.angular = sdot * delta_rotation_;
    return out;
}

double rotation_duration(const Pose& start, const Pose& goal, double min_duration, double yaw_rate) {
    // for the yaw-only goals produced by the rotation unit this is |delta yaw|
    const double angle = rotation_log<double>(goal.rotation() * start.rotation().transpose()).norm();
    return std::max(min_duration, angle / yaw_rate);
}

CubicTrajectory plan_rotation(const Pose& start, const Pose& goal, double t0, double duration) {
    return CubicTrajectory(start, goal, t0, duration);
}

}  // namespace cotransport::aci
