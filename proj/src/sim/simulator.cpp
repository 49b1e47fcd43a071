#include "cotransport/sim/simulator.hpp"

#include "cotransport/errors.hpp"
#include "cotransport/kinematics.hpp"
#include "cotransport/wbc.hpp"

#include <algorithm>
#include <cmath>

namespace cotransport::sim {

namespace {

ScenarioConfig checked(ScenarioConfig config) {
    const auto problems = validate(config);
    if (!problems.empty()) {
        std::string msg = problems.front();
        for (std::size_t i = 1; i < problems.size(); ++i) msg += "\n" + problems[i];
        throw ConfigError(msg);
    }
    return config;
}

human::HumanModel make_human_model(const ScenarioConfig& c) {
    const Pose ee = forward_kinematics(c.model, c.q_initial);
    const Eigen::Vector3d hand = ee.position + ee.orientation * c.object.rest_vector;
    human::HumanModel m;
    m.params = c.human;
    m.script = human::MotionScript(c.script);
    m.initial_torso = human::torso_for_hand(hand, c.torso_yaw, c.human.reach);
    m.initial_hand_yaw = c.torso_yaw;
    return m;
}

std::vector<human::HumanState> load_replay(const ScenarioConfig& c) {
    if (!c.human_trace) return {};
    auto states = human::load_trace(*c.human_trace, c.human.reach);
    if (states.empty()) throw ConfigError("human trace has no samples: " + c.human_trace->string());
    const double t0 = states.front().t;
    for (auto& s : states) s.t -= t0;
    return states;
}

aci::YawSample yaw_sample(const human::HumanState& h) {
    aci::YawSample y;
    y.hand_in_torso = h.theta_h_t;
    y.hand_world = h.theta_h_w;
    y.torso_world = h.theta_t_w;
    y.torso_rate = h.thetadot_t_w;
    y.torso_pose = h.torso_pose;
    return y;
}

}  // namespace

Simulator::Simulator(ScenarioConfig config)
    : config_(checked(std::move(config))),
      human_model_(make_human_model(config_)),
      replay_(load_replay(config_)),
      rng_(config_.seed),
      state_{0, 0.0, config_.q_initial, Eigen::VectorXd::Zero(config_.model.dofs()),
             replay_.empty() ? human::initial_state(human_model_) : replay_.front(), {}},
      aci_(config_.mode, config_.aci, forward_kinematics(config_.model, config_.q_initial),
           state_.human.torso_pose) {
    const Pose ee = forward_kinematics(config_.model, state_.q);
    ee_start_ = ee.position;
    for (const auto& off : config_.waypoints.offsets) targets_.push_back(ee_start_ + off);

    if (replay_.empty()) {
        first_motion_ = human_model_.script.first_motion_time();
    } else {
        first_motion_ = replay_.back().t;
        for (const auto& s : replay_)
            if (s.hand_twist.linear.norm() > config_.motion_speed_threshold) {
                first_motion_ = s.t;
                break;
            }
    }

    state_.wrench = objects::object_wrench(config_.object, state_.human.hand_pose, state_.human.hand_twist, ee,
                                           Twist::zero());
    TraceRecord r;
    r.t = 0.0;
    r.q = state_.q;
    r.ee_pose = ee;
    r.force = state_.wrench.at_ee.force;
    r.alpha = aci_.index().alpha();
    r.x_d = ee;
    r.hand_pose = state_.human.hand_pose;
    r.torso_yaw = state_.human.theta_t_w;
    r.torso_yaw_rate = state_.human.thetadot_t_w;
    r.hand_yaw = state_.human.theta_h_w;
    trace_.push_back(std::move(r));
}

human::HumanState Simulator::next_human(const Eigen::Vector3d& force_on_hand) {
    if (replay_.empty()) return human::human_step(state_.human, human_model_, force_on_hand, config_.dt, rng_);
    const double t = state_.t + config_.dt;
    while (replay_index_ + 1 < replay_.size() && replay_[replay_index_ + 1].t <= t + 1e-12) ++replay_index_;
    human::HumanState s = replay_[replay_index_];
    s.t = t;
    return s;
}

const TraceRecord& Simulator::step() {
    try {
        const double dt = config_.dt;
        const double t = state_.t + dt;

        state_.human = next_human(state_.wrench.at_hand.force);
        ++counters_.human;

        const Pose ee = forward_kinematics(config_.model, state_.q);
        const Matrix6X<double> J = whole_body_jacobian(config_.model, state_.q);
        const Twist ee_twist = Twist::from_vector(J * state_.qdot);
        state_.wrench =
            objects::object_wrench(config_.object, state_.human.hand_pose, state_.human.hand_twist, ee, ee_twist);
        ++counters_.object;

        aci::AciInput in;
        in.t = t;
        in.force = state_.wrench.at_ee.force;
        in.hand_velocity = state_.human.measured_hand_velocity;
        in.yaw = yaw_sample(state_.human);
        const aci::AciOutput out = aci_.step(in, dt);
        ++counters_.aci;

        const Eigen::VectorXd qdot = wbc::saturate_joint_velocities<double>(
            wbc::compute<double>(config_.model, state_.q, out.x_d, out.xdot_d, config_.wbc),
            config_.wbc.velocity_limit);
        ++counters_.wbc;
        if (!qdot.allFinite()) throw RuntimeError("non-finite joint velocity command");

        state_.qdot = qdot;
        state_.q += qdot * dt;
        state_.t = t;
        ++state_.step;

        TraceRecord r;
        r.t = t;
        r.q = state_.q;
        r.ee_pose = forward_kinematics(config_.model, state_.q);
        r.ee_twist = Twist::from_vector(J * qdot);
        r.force = in.force;
        r.v_adm = out.v_adm;
        r.v_h = out.v_h;
        r.alpha = out.alpha;
        r.zeta = out.zeta;
        r.x_d = out.x_d;
        r.hand_pose = state_.human.hand_pose;
        r.torso_yaw = state_.human.theta_t_w;
        r.torso_yaw_rate = state_.human.thetadot_t_w;
        r.hand_yaw = state_.human.theta_h_w;
        trace_.push_back(std::move(r));
        track_waypoints(trace_.back());
        return trace_.back();
    } catch (const std::exception& e) {
        throw RuntimeError("step " + std::to_string(state_.step + 1) + ": " + e.what());
    }
}

void Simulator::track_waypoints(const TraceRecord& r) {
    if (completed() || r.t < first_motion_) return;
    const Eigen::Vector3d& target = targets_[waypoint_times_.size()];
    if ((r.ee_pose.position - target).norm() < config_.waypoints.tolerance &&
        r.ee_twist.linear.norm() < config_.waypoints.max_speed)
        waypoint_times_.push_back(r.t);
}

RunResult Simulator::run() {
    const double last_boundary =
        config_.interval_boundaries.empty() ? 0.0 : config_.interval_boundaries.back();
    const auto steps = static_cast<std::uint64_t>(std::llround(config_.duration / config_.dt));
    while (state_.step < steps) {
        step();
        if (config_.stop_on_completion && !targets_.empty() && completed() && state_.t >= last_boundary) break;
    }
    RunResult result{trace_, compute_metrics()};
    if (config_.out_trace) write_trace(*config_.out_trace, result.trace);
    if (config_.out_metrics) write_metrics(*config_.out_metrics, result.metrics);
    return result;
}

Metrics Simulator::compute_metrics() const {
    Metrics m;
    m.completed = !targets_.empty() && completed();
    m.waypoint_times = waypoint_times_;
    m.first_motion_time = first_motion_;
    m.end_time = trace_.back().t;
    if (m.completed) m.t_c = waypoint_times_.back() - first_motion_;

    const double t_e = m.completed ? waypoint_times_.back() : m.end_time;
    std::size_t in_window = 0;
    for (const auto& r : trace_) in_window += (r.t >= first_motion_ && r.t <= t_e);
    if (in_window >= 2)
        m.d_am = alignment_metric(trace_, config_.robot_marker, config_.human_marker, first_motion_, t_e);

    if (!config_.interval_boundaries.empty()) m.intervals = interval_stats(trace_, config_.interval_boundaries);

    std::size_t moving = 0;
    for (const auto& r : trace_) {
        m.mean_alpha += r.alpha;
        m.mean_force += r.force.norm();
        if (r.v_h.norm() > config_.motion_speed_threshold) {
            m.motion_mean_alpha += r.alpha;
            ++moving;
        }
        m.max_ee_displacement = std::max(m.max_ee_displacement, (r.ee_pose.position - ee_start_).norm());
    }
    m.mean_alpha /= static_cast<double>(trace_.size());
    m.mean_force /= static_cast<double>(trace_.size());
    m.motion_mean_alpha = moving ? m.motion_mean_alpha / static_cast<double>(moving) : m.mean_alpha;
    for (const auto& target : targets_)
        m.commanded_displacement = std::max(m.commanded_displacement, (target - ee_start_).norm());
    m.progress = m.commanded_displacement > 0 ? m.max_ee_displacement / m.commanded_displacement : 0.0;

    std::vector<Eigen::Vector3d> path{ee_start_}, ee;
    path.insert(path.end(), targets_.begin(), targets_.end());
    ee.reserve(trace_.size());
    for (const auto& r : trace_) ee.push_back(r.ee_pose.position);
    m.path_deviation = path_deviation(ee, path);
    return m;
}

RunResult run(const ScenarioConfig& config) { return Simulator(config).run(); }

}  // namespace cotransport::sim
