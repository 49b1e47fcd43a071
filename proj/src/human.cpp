#include "cotransport/human.hpp"

#include "cotransport/errors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace cotransport::human {

namespace {

double smooth(double tau) {
    tau = std::clamp(tau, 0.0, 1.0);
    return tau * tau * (3.0 - 2.0 * tau);
}

double smooth_rate(double tau) { return (tau <= 0.0 || tau >= 1.0) ? 0.0 : 6.0 * tau * (1.0 - tau); }

constexpr int kTraceColumns = 14;

}  // namespace

std::vector<std::string> HumanParams::problems() const {
    std::vector<std::string> out;
    if (!(hand_mass > 0)) out.push_back("human.hand_mass must be positive");
    if (!(hand_stiffness >= 0)) out.push_back("human.hand_stiffness must be non-negative");
    if (!(hand_damping >= 0)) out.push_back("human.hand_damping must be non-negative");
    if (!reach.allFinite()) out.push_back("human.reach must be finite");
    if (!(yaw_rate_cutoff > 0)) out.push_back("human.yaw_rate_cutoff must be positive");
    if (!(noise.hand_velocity >= 0)) out.push_back("human.noise.hand_velocity must be non-negative");
    if (!(noise.yaw >= 0)) out.push_back("human.noise.yaw must be non-negative");
    return out;
}

std::string to_string(SegmentKind kind) {
    switch (kind) {
        case SegmentKind::Translate: return "translate";
        case SegmentKind::Hold: return "hold";
        case SegmentKind::TorsoYaw: return "torso_yaw";
        case SegmentKind::HandYaw: return "hand_yaw";
    }
    return "unknown";
}

MotionScript::MotionScript(std::vector<Segment> segments) : segments_(std::move(segments)) {
    starts_.reserve(segments_.size() + 1);
    double t = 0.0;
    starts_.push_back(t);
    for (const auto& s : segments_) {
        t += s.duration;
        starts_.push_back(t);
    }
}

std::vector<std::string> MotionScript::problems() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        if (!(segments_[i].duration > 0))
            out.push_back("script[" + std::to_string(i) + "].duration must be positive");
        if (!segments_[i].offset.allFinite() || !std::isfinite(segments_[i].angle))
            out.push_back("script[" + std::to_string(i) + "] has non-finite values");
    }
    return out;
}

ScriptTarget MotionScript::evaluate(double t) const {
    ScriptTarget target;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
        const Segment& seg = segments_[i];
        const double t0 = starts_[i];
        if (t < t0) break;
        const double tau = (t - t0) / seg.duration;
        const double s = smooth(tau);
        const double sdot = smooth_rate(tau) / seg.duration;
        switch (seg.kind) {
            case SegmentKind::Translate:
                target.body_offset += s * seg.offset;
                target.body_velocity += sdot * seg.offset;
                break;
            case SegmentKind::TorsoYaw:
                target.torso_yaw += s * seg.angle;
                target.torso_yaw_rate += sdot * seg.angle;
                break;
            case SegmentKind::HandYaw:
                target.hand_yaw += s * seg.angle;
                target.hand_yaw_rate += sdot * seg.angle;
                break;
            case SegmentKind::Hold: break;
        }
    }
    return target;
}

double MotionScript::first_motion_time() const {
    for (std::size_t i = 0; i < segments_.size(); ++i)
        if (segments_[i].kind != SegmentKind::Hold) return starts_[i];
    return total_duration();
}

std::vector<Eigen::Vector3d> MotionScript::translation_targets() const {
    std::vector<Eigen::Vector3d> out;
    Eigen::Vector3d acc = Eigen::Vector3d::Zero();
    for (const auto& seg : segments_) {
        if (seg.kind != SegmentKind::Translate) continue;
        acc += seg.offset;
        out.push_back(acc);
    }
    return out;
}

Pose torso_for_hand(const Eigen::Vector3d& hand_position, double torso_yaw, const Eigen::Vector3d& reach) {
    Pose torso;
    torso.orientation = yaw_quaternion(torso_yaw);
    torso.position = hand_position - torso.orientation * reach;
    return torso;
}

namespace {

struct Desired {
    Eigen::Vector3d position;
    Eigen::Vector3d velocity;
    Pose torso;
    double torso_yaw;
    double torso_yaw_rate;
    double hand_yaw;
    double hand_yaw_rate;
};

Desired desired_at(const HumanModel& model, double t) {
    const ScriptTarget target = model.script.evaluate(t);
    const double yaw0 = yaw_of(model.initial_torso.orientation);
    Desired d;
    d.torso_yaw = yaw0 + target.torso_yaw;
    d.torso_yaw_rate = target.torso_yaw_rate;
    d.hand_yaw = model.initial_hand_yaw + target.hand_yaw;
    d.hand_yaw_rate = target.hand_yaw_rate;
    d.torso.position = model.initial_torso.position + target.body_offset;
    d.torso.orientation = yaw_quaternion(d.torso_yaw);
    const Eigen::Vector3d arm = d.torso.orientation * model.params.reach;
    d.position = d.torso.position + arm;
    d.velocity = target.body_velocity + d.torso_yaw_rate * Eigen::Vector3d::UnitZ().cross(arm);
    return d;
}

}  // namespace

HumanState initial_state(const HumanModel& model) {
    const Desired d = desired_at(model, 0.0);
    HumanState s;
    s.t = 0.0;
    s.hand_pose.position = d.position;
    s.hand_pose.orientation = yaw_quaternion(d.hand_yaw);
    s.hand_twist.linear = d.velocity;
    s.hand_twist.angular = d.hand_yaw_rate * Eigen::Vector3d::UnitZ();
    s.torso_pose = d.torso;
    s.measured_hand_velocity = d.velocity;
    s.theta_t_w = d.torso_yaw;
    s.theta_h_w = d.hand_yaw;
    s.theta_h_t = wrap_angle(s.theta_h_w - s.theta_t_w);
    s.thetadot_t_w = 0.0;
    return s;
}

HumanState human_step(const HumanState& state, const HumanModel& model, const Eigen::Vector3d& force_on_hand,
                      double dt, std::mt19937_64& rng) {
    if (!(dt > 0)) throw RuntimeError("human_step: dt must be positive");
    if (!force_on_hand.allFinite()) throw RuntimeError("human_step: non-finite object force on hand");
    const HumanParams& p = model.params;

    const Desired now = desired_at(model, state.t);
    const Eigen::Vector3d accel = (p.hand_stiffness * (now.position - state.hand_pose.position) +
                                   p.hand_damping * (now.velocity - state.hand_twist.linear) + force_on_hand) /
                                  p.hand_mass;

    HumanState next;
    next.t = state.t + dt;
    next.hand_twist.linear = state.hand_twist.linear + accel * dt;
    next.hand_pose.position = state.hand_pose.position + next.hand_twist.linear * dt;

    const Desired then = desired_at(model, next.t);
    next.hand_pose.orientation = yaw_quaternion(then.hand_yaw);
    next.hand_twist.angular = then.hand_yaw_rate * Eigen::Vector3d::UnitZ();
    next.torso_pose = then.torso;

    std::normal_distribution<double> gauss(0.0, 1.0);
    next.measured_hand_velocity = next.hand_twist.linear;
    if (p.noise.hand_velocity > 0)
        for (int i = 0; i < 3; ++i) next.measured_hand_velocity(i) += p.noise.hand_velocity * gauss(rng);
    next.theta_t_w = then.torso_yaw;
    next.theta_h_w = then.hand_yaw;
    if (p.noise.yaw > 0) {
        next.theta_t_w += p.noise.yaw * gauss(rng);
        next.theta_h_w += p.noise.yaw * gauss(rng);
    }
    next.theta_h_t = wrap_angle(next.theta_h_w - next.theta_t_w);

    const double raw_rate = (next.theta_t_w - state.theta_t_w) / dt;
    const double tc = 1.0 / (2.0 * std::numbers::pi * p.yaw_rate_cutoff);
    const double beta = dt / (dt + tc);
    next.thetadot_t_w = state.thetadot_t_w + beta * (raw_rate - state.thetadot_t_w);
    return next;
}

void write_trace(std::ostream& os, const std::vector<HumanState>& states) {
    os << "t,hand_px,hand_py,hand_pz,hand_qw,hand_qx,hand_qy,hand_qz,hand_vx,hand_vy,hand_vz,"
          "torso_yaw,torso_yaw_rate,hand_yaw\n";
    os << std::setprecision(17);
    for (const auto& s : states) {
        const auto& p = s.hand_pose.position;
        const auto& q = s.hand_pose.orientation;
        const auto& v = s.measured_hand_velocity;
        os << s.t << ',' << p.x() << ',' << p.y() << ',' << p.z() << ',' << q.w() << ',' << q.x() << ',' << q.y()
           << ',' << q.z() << ',' << v.x() << ',' << v.y() << ',' << v.z() << ',' << s.theta_t_w << ','
           << s.thetadot_t_w << ',' << s.theta_h_w << '\n';
    }
}

void write_trace(const std::filesystem::path& path, const std::vector<HumanState>& states) {
    std::ofstream os(path);
    if (!os) throw RuntimeError("cannot open human trace for writing: " + path.string());
    write_trace(os, states);
    if (!os) throw RuntimeError("failed writing human trace: " + path.string());
}

std::vector<HumanState> load_trace(std::istream& is, const Eigen::Vector3d& reach) {
    std::vector<HumanState> out;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        if (std::isalpha(static_cast<unsigned char>(line.front())) && out.empty()) continue;  // header

        std::array<double, kTraceColumns> v{};
        std::stringstream ss(line);
        std::string cell;
        int n = 0;
        while (std::getline(ss, cell, ',')) {
            if (n >= kTraceColumns)
                throw ConfigError("human trace line " + std::to_string(line_no) + ": too many columns");
            std::size_t used = 0;
            try {
                v[static_cast<std::size_t>(n)] = std::stod(cell, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || cell.find_first_not_of(" \t\r", used) != std::string::npos)
                throw ConfigError("human trace line " + std::to_string(line_no) + ": malformed value '" + cell +
                                  "'");
            ++n;
        }
        if (n != kTraceColumns)
            throw ConfigError("human trace line " + std::to_string(line_no) + ": expected " +
                              std::to_string(kTraceColumns) + " columns, got " + std::to_string(n));

        HumanState s;
        s.t = v[0];
        if (!out.empty() && !(s.t > out.back().t))
            throw ConfigError("human trace line " + std::to_string(line_no) + ": timestamps must increase");
        s.hand_pose.position = {v[1], v[2], v[3]};
        s.hand_pose.orientation = Eigen::Quaterniond(v[4], v[5], v[6], v[7]);
        if (std::abs(s.hand_pose.orientation.norm() - 1.0) > 1e-6)
            throw ConfigError("human trace line " + std::to_string(line_no) + ": hand quaternion is not unit");
        s.hand_pose.orientation.normalize();
        s.hand_twist.linear = {v[8], v[9], v[10]};
        s.measured_hand_velocity = s.hand_twist.linear;
        s.theta_t_w = v[11];
        s.thetadot_t_w = v[12];
        s.theta_h_w = v[13];
        s.theta_h_t = wrap_angle(s.theta_h_w - s.theta_t_w);
        s.torso_pose = torso_for_hand(s.hand_pose.position, s.theta_t_w, reach);
        out.push_back(s);
    }
    return out;
}

std::vector<HumanState> load_trace(const std::filesystem::path& path, const Eigen::Vector3d& reach) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open human trace: " + path.string());
    return load_trace(is, reach);
}

}  // namespace cotransport::human
