#pragma once

#include "cotransport/types.hpp"

#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace cotransport::human {

struct NoiseParams {
    double hand_velocity = 0.0;  // std of each v_h component [m/s]
    double yaw = 0.0;            // std of each yaw channel [rad]
};

struct HumanParams {
    double hand_mass = 2.0;         // [kg]
    double hand_stiffness = 600.0;  // [N/m]
    double hand_damping = 40.0;     // [Ns/m]
    Eigen::Vector3d reach = Eigen::Vector3d(0.4, 0.0, -0.3);  // hand in torso frame [m]
    double yaw_rate_cutoff = 5.0;   // torso yaw-rate low-pass cutoff [Hz]
    NoiseParams noise;

    std::vector<std::string> problems() const;
};

enum class SegmentKind { Translate, Hold, TorsoYaw, HandYaw };

/// Translate moves the whole body (torso and hand target) by `offset`; TorsoYaw
/// turns the torso by `angle`, swinging the hand target with it while the hand
/// keeps its world yaw; HandYaw turns only the hand. All use cubic timing.
struct Segment {
    SegmentKind kind = SegmentKind::Hold;
    Eigen::Vector3d offset = Eigen::Vector3d::Zero();
    double angle = 0.0;
    double duration = 1.0;
};

std::string to_string(SegmentKind kind);

/// Scripted offsets relative to the initial configuration at time t.
struct ScriptTarget {
    Eigen::Vector3d body_offset = Eigen::Vector3d::Zero();
    Eigen::Vector3d body_velocity = Eigen::Vector3d::Zero();
    double torso_yaw = 0.0;
    double torso_yaw_rate = 0.0;
    double hand_yaw = 0.0;
    double hand_yaw_rate = 0.0;
};

class MotionScript {
public:
    MotionScript() = default;
    explicit MotionScript(std::vector<Segment> segments);

    ScriptTarget evaluate(double t) const;

    const std::vector<Segment>& segments() const { return segments_; }
    double start_time(std::size_t i) const { return starts_.at(i); }
    double total_duration() const { return starts_.empty() ? 0.0 : starts_.back(); }
    /// Start of the first non-hold segment, or total_duration() if there is none.
    double first_motion_time() const;
    /// Cumulative body offsets at the end of each Translate segment.
    std::vector<Eigen::Vector3d> translation_targets() const;

    std::vector<std::string> problems() const;

private:
    std::vector<Segment> segments_;
    std::vector<double> starts_;  // size n+1, last = end of script
};

struct HumanState {
    double t = 0.0;
    Pose hand_pose;
    Twist hand_twist;  // true hand motion
    Pose torso_pose;
    // emitted measurements (noise applied)
    Eigen::Vector3d measured_hand_velocity = Eigen::Vector3d::Zero();
    double theta_h_w = 0.0;
    double theta_t_w = 0.0;
    double theta_h_t = 0.0;
    double thetadot_t_w = 0.0;  // finite-differenced, low-pass filtered
};

/// Everything needed to advance a simulated partner.
struct HumanModel {
    HumanParams params;
    MotionScript script;
    Pose initial_torso;     // position + yaw
    double initial_hand_yaw = 0.0;
};

/// Places the torso so that the hand sits at hand_position with zero relative yaw.
Pose torso_for_hand(const Eigen::Vector3d& hand_position, double torso_yaw, const Eigen::Vector3d& reach);

HumanState initial_state(const HumanModel& model);

/// Advances the hand impedance m a = K (x_des - x) + D (xdot_des - xdot) + F one
/// semi-implicit Euler step; torso follows its script kinematically. Throws
/// RuntimeError for a non-finite force.
HumanState human_step(const HumanState& state, const HumanModel& model, const Eigen::Vector3d& force_on_hand,
                      double dt, std::mt19937_64& rng);

/// Replay trace: t, hand position (3), hand quaternion w x y z (4), hand linear
/// velocity (3), torso yaw, torso yaw rate, hand yaw. Comma separated, optional
/// header line, '#' comments.
void write_trace(const std::filesystem::path& path, const std::vector<HumanState>& states);
void write_trace(std::ostream& os, const std::vector<HumanState>& states);

/// Throws ConfigError with the line number for malformed rows or decreasing
/// timestamps. The torso position is reconstructed from the hand via `reach`.
std::vector<HumanState> load_trace(const std::filesystem::path& path,
                                   const Eigen::Vector3d& reach = HumanParams{}.reach);
std::vector<HumanState> load_trace(std::istream& is, const Eigen::Vector3d& reach = HumanParams{}.reach);

}  // namespace cotransport::human
