#include "cotransport/sim/config.hpp"

#include "cotransport/errors.hpp"

#include <fstream>
#include <sstream>

namespace cotransport::sim {

using nlohmann::json;

namespace {

// Reads typed fields and collects every problem instead of stopping at the first.
class Reader {
public:
    std::vector<std::string> errors;

    template <typename T>
    void scalar(const json& obj, const char* key, const std::string& path, T& out) {
        if (!obj.contains(key)) return;
        const json& v = obj.at(key);
        if constexpr (std::is_same_v<T, bool>) {
            if (!v.is_boolean()) return fail(path, "must be a boolean");
            out = v.get<bool>();
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (!v.is_string()) return fail(path, "must be a string");
            out = v.get<std::string>();
        } else {
            if (!v.is_number()) return fail(path, "must be a number");
            out = v.get<T>();
        }
    }

    // Fixed-size vector; a single number broadcasts to every entry.
    void vector(const json& obj, const char* key, const std::string& path, Eigen::Ref<Eigen::VectorXd> out) {
        if (!obj.contains(key)) return;
        const json& v = obj.at(key);
        if (v.is_number()) {
            out.setConstant(v.get<double>());
            return;
        }
        if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != out.size())
            return fail(path, "must be a number or an array of " + std::to_string(out.size()) + " numbers");
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) return fail(path, "must contain only numbers");
            out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
        }
    }

    std::optional<Eigen::VectorXd> dynamic_vector(const json& obj, const char* key, const std::string& path) {
        if (!obj.contains(key)) return std::nullopt;
        const json& v = obj.at(key);
        if (!v.is_array()) {
            fail(path, "must be an array of numbers");
            return std::nullopt;
        }
        Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) {
                fail(path, "must contain only numbers");
                return std::nullopt;
            }
            out(static_cast<Eigen::Index>(i)) = v[i].get<double>();
        }
        return out;
    }

    const json* object(const json& obj, const char* key, const std::string& path) {
        if (!obj.contains(key)) return nullptr;
        if (!obj.at(key).is_object()) {
            fail(path, "must be an object");
            return nullptr;
        }
        return &obj.at(key);
    }

    void fail(const std::string& path, const std::string& what) { errors.push_back(path + " " + what); }
};

Isometry3<double> read_transform(Reader& r, const json& obj, const std::string& path) {
    Eigen::Vector3d t = Eigen::Vector3d::Zero(), rpy = Eigen::Vector3d::Zero();
    r.vector(obj, "translation", path + ".translation", t);
    r.vector(obj, "rpy", path + ".rpy", rpy);
    return make_transform<double>(t, rpy);
}

void read_robot(Reader& r, const json& robot, ScenarioConfig& cfg) {
    if (robot.contains("joints")) {
        const json& joints = robot.at("joints");
        if (!joints.is_array()) {
            r.fail("robot.joints", "must be an array");
        } else {
            cfg.model.arm_joints.clear();
            for (std::size_t i = 0; i < joints.size(); ++i) {
                const std::string p = "robot.joints[" + std::to_string(i) + "]";
                RevoluteJoint j;
                j.parent_offset = read_transform(r, joints[i], p);
                r.vector(joints[i], "axis", p + ".axis", j.axis);
                cfg.model.arm_joints.push_back(j);
            }
            cfg.q_initial = Eigen::VectorXd::Zero(cfg.model.dofs());
            cfg.wbc = wbc::WbcParams::defaults(cfg.model.dofs(), cfg.q_initial);
        }
        if (const json* ee = r.object(robot, "ee_offset", "robot.ee_offset"))
            cfg.model.ee_offset = read_transform(r, *ee, "robot.ee_offset");
    } else if (robot.contains("model")) {
        std::string name;
        r.scalar(robot, "model", "robot.model", name);
        if (name != "ur16e") r.fail("robot.model", "unknown kinematic model '" + name + "'");
    }
    r.scalar(robot, "w_threshold", "robot.w_threshold", cfg.model.w_threshold);
    r.scalar(robot, "k_max", "robot.k_max", cfg.model.k_max);
    if (auto q = r.dynamic_vector(robot, "q_initial", "robot.q_initial")) cfg.q_initial = *q;
}

void read_wbc(Reader& r, const json& w, ScenarioConfig& cfg) {
    const int m = cfg.model.dofs();
    auto& p = cfg.wbc;
    r.vector(w, "K", "wbc.K", p.gain);
    r.vector(w, "W1", "wbc.W1", p.task_weight);
    p.damping_weight.conservativeResize(m);
    p.posture_weight.conservativeResize(m);
    p.q_default.conservativeResize(m);
    p.velocity_limit.conservativeResize(m);
    r.vector(w, "W2", "wbc.W2", p.damping_weight);
    r.vector(w, "W3", "wbc.W3", p.posture_weight);
    r.vector(w, "q_default", "wbc.q_default", p.q_default);
    r.scalar(w, "posture_gain", "wbc.posture_gain", p.posture_gain);
    if (const json* lim = r.object(w, "velocity_limits", "wbc.velocity_limits")) {
        double base_linear = p.velocity_limit(0), base_angular = p.velocity_limit(2), arm = p.velocity_limit(3);
        r.scalar(*lim, "base_linear", "wbc.velocity_limits.base_linear", base_linear);
        r.scalar(*lim, "base_angular", "wbc.velocity_limits.base_angular", base_angular);
        r.scalar(*lim, "arm", "wbc.velocity_limits.arm", arm);
        p.velocity_limit.head(2).setConstant(base_linear);
        p.velocity_limit(2) = base_angular;
        p.velocity_limit.tail(m - kBaseDofs).setConstant(arm);
    }
}

void read_aci(Reader& r, const json& a, aci::AciParams& p) {
    r.scalar(a, "window_length", "aci.window_length", p.index.window_length);
    r.scalar(a, "epsilon", "aci.epsilon", p.index.epsilon);
    r.scalar(a, "deadband", "aci.deadband", p.index.deadband);
    r.scalar(a, "initial_alpha", "aci.initial_alpha", p.index.initial_alpha);
    r.scalar(a, "lower_angle_threshold", "aci.lower_angle_threshold", p.intention.lower_angle_threshold);
    r.scalar(a, "upper_angle_threshold", "aci.upper_angle_threshold", p.intention.upper_angle_threshold);
    r.scalar(a, "velocity_threshold", "aci.velocity_threshold", p.intention.velocity_threshold);
    r.scalar(a, "latching", "aci.latching", p.intention.latching);
    r.scalar(a, "rotation_min_duration", "aci.rotation_min_duration", p.rotation_min_duration);
    r.scalar(a, "rotation_yaw_rate", "aci.rotation_yaw_rate", p.rotation_yaw_rate);
    r.scalar(a, "hand_velocity_deadband", "aci.hand_velocity_deadband", p.hand_velocity_deadband);
}

void read_human(Reader& r, const json& h, ScenarioConfig& cfg, const std::filesystem::path& base) {
    auto& p = cfg.human;
    r.scalar(h, "hand_mass", "human.hand_mass", p.hand_mass);
    r.scalar(h, "hand_stiffness", "human.hand_stiffness", p.hand_stiffness);
    r.scalar(h, "hand_damping", "human.hand_damping", p.hand_damping);
    r.vector(h, "reach", "human.reach", p.reach);
    r.scalar(h, "yaw_rate_cutoff", "human.yaw_rate_cutoff", p.yaw_rate_cutoff);
    r.scalar(h, "torso_yaw", "human.torso_yaw", cfg.torso_yaw);
    if (const json* n = r.object(h, "noise", "human.noise")) {
        r.scalar(*n, "hand_velocity", "human.noise.hand_velocity", p.noise.hand_velocity);
        r.scalar(*n, "yaw", "human.noise.yaw", p.noise.yaw);
    }
    std::string trace;
    r.scalar(h, "trace", "human.trace", trace);
    if (!trace.empty()) cfg.human_trace = base / trace;
}

// Rest vector is given in world coordinates at the initial configuration.
std::optional<Eigen::Vector3d> read_object(Reader& r, const json& o, ScenarioConfig& cfg) {
    std::string name = cfg.object.label;
    r.scalar(o, "preset", "object.preset", name);
    if (auto preset = objects::preset(name)) {
        cfg.object = *preset;
    } else if (o.contains("preset")) {
        r.fail("object.preset", "unknown preset '" + name + "'");
    }
    auto& m = cfg.object;
    r.scalar(o, "axial_stiffness_tension", "object.axial_stiffness_tension", m.axial_stiffness_tension);
    r.scalar(o, "axial_stiffness_compression", "object.axial_stiffness_compression", m.axial_stiffness_compression);
    r.scalar(o, "lateral_stiffness", "object.lateral_stiffness", m.lateral_stiffness);
    if (o.contains("vertical_stiffness")) {
        double v = 0.0;
        r.scalar(o, "vertical_stiffness", "object.vertical_stiffness", v);
        m.vertical_stiffness = v;
    }
    r.scalar(o, "damping", "object.damping", m.damping);
    r.scalar(o, "slack_length", "object.slack_length", m.slack_length);
    r.scalar(o, "label", "object.label", m.label);
    if (!o.contains("rest_vector")) return std::nullopt;
    Eigen::Vector3d rest = Eigen::Vector3d::Zero();
    r.vector(o, "rest_vector", "object.rest_vector", rest);
    return rest;
}

void read_script(Reader& r, const json& s, ScenarioConfig& cfg) {
    if (!s.is_array()) return r.fail("script", "must be an array of segments");
    cfg.script.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const std::string p = "script[" + std::to_string(i) + "]";
        const json& seg = s[i];
        if (!seg.is_object()) {
            r.fail(p, "must be an object");
            continue;
        }
        human::Segment out;
        std::string type = "hold";
        r.scalar(seg, "type", p + ".type", type);
        if (type == "translate") out.kind = human::SegmentKind::Translate;
        else if (type == "hold") out.kind = human::SegmentKind::Hold;
        else if (type == "torso_yaw") out.kind = human::SegmentKind::TorsoYaw;
        else if (type == "hand_yaw") out.kind = human::SegmentKind::HandYaw;
        else r.fail(p + ".type", "unknown segment type '" + type + "'");
        r.vector(seg, "offset", p + ".offset", out.offset);
        r.scalar(seg, "angle", p + ".angle", out.angle);
        if (!seg.contains("duration")) r.fail(p + ".duration", "is required");
        r.scalar(seg, "duration", p + ".duration", out.duration);
        cfg.script.push_back(out);
    }
}

void read_waypoints(Reader& r, const json& w, ScenarioConfig& cfg, bool& from_script) {
    r.scalar(w, "tolerance", "waypoints.tolerance", cfg.waypoints.tolerance);
    r.scalar(w, "max_speed", "waypoints.max_speed", cfg.waypoints.max_speed);
    if (!w.contains("points")) return;
    const json& pts = w.at("points");
    if (pts.is_string() && pts.get<std::string>() == "from_script") return;
    from_script = false;
    if (!pts.is_array()) return r.fail("waypoints.points", "must be \"from_script\" or an array of [x, y, z]");
    cfg.waypoints.offsets.clear();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        json holder = {{"p", pts[i]}};
        Eigen::Vector3d v = Eigen::Vector3d::Zero();
        r.vector(holder, "p", "waypoints.points[" + std::to_string(i) + "]", v);
        cfg.waypoints.offsets.push_back(v);
    }
}

}  // namespace

std::vector<std::string> validate(const ScenarioConfig& c) {
    std::vector<std::string> out;
    auto guard = [&out](auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            out.emplace_back(e.what());
        }
    };
    if (!(c.dt > 0)) out.push_back("dt must be positive");
    if (!(c.duration > 0)) out.push_back("duration must be positive");
    if (c.dt > 0 && c.duration > 0 && c.dt > c.duration) out.push_back("dt must not exceed duration");
    guard([&] { c.model.validate(); });
    if (c.q_initial.size() != c.model.dofs())
        out.push_back("robot.q_initial must have " + std::to_string(c.model.dofs()) + " entries");
    guard([&] { c.wbc.validate(c.model.dofs()); });
    guard([&] { c.aci.validate(); });
    for (auto& p : c.human.problems()) out.push_back(p);
    for (auto& p : c.object.problems()) out.push_back(p);
    for (auto& p : human::MotionScript(c.script).problems()) out.push_back(p);
    if (!(c.waypoints.tolerance > 0)) out.push_back("waypoints.tolerance must be positive");
    if (!(c.waypoints.max_speed > 0)) out.push_back("waypoints.max_speed must be positive");
    for (std::size_t i = 0; i < c.interval_boundaries.size(); ++i) {
        const double b = c.interval_boundaries[i];
        if (!(b >= 0 && b <= c.duration))
            out.push_back("metrics.intervals[" + std::to_string(i) + "] must lie within [0, duration]");
        if (i > 0 && !(b > c.interval_boundaries[i - 1]))
            out.push_back("metrics.intervals must be strictly increasing");
    }
    if (c.interval_boundaries.size() == 1) out.push_back("metrics.intervals needs at least two boundaries");
    if (!(c.motion_speed_threshold >= 0)) out.push_back("metrics.motion_speed_threshold must be non-negative");
    if (c.human_trace && !std::filesystem::exists(*c.human_trace))
        out.push_back("human.trace file not found: " + c.human_trace->string());
    return out;
}

ScenarioConfig parse_scenario(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) throw ConfigError("scenario must be a JSON object");
    Reader r;
    ScenarioConfig cfg;

    r.scalar(doc, "name", "name", cfg.name);
    std::string controller = aci::to_string(cfg.mode);
    r.scalar(doc, "controller", "controller", controller);
    if (auto mode = aci::parse_controller_mode(controller)) cfg.mode = *mode;
    else r.fail("controller", "must be one of aci, admittance, teleop (got '" + controller + "')");
    r.scalar(doc, "dt", "dt", cfg.dt);
    r.scalar(doc, "duration", "duration", cfg.duration);
    r.scalar(doc, "seed", "seed", cfg.seed);
    r.scalar(doc, "stop_on_completion", "stop_on_completion", cfg.stop_on_completion);

    if (const json* robot = r.object(doc, "robot", "robot")) read_robot(r, *robot, cfg);
    cfg.wbc.q_default = cfg.q_initial;
    if (const json* w = r.object(doc, "wbc", "wbc")) read_wbc(r, *w, cfg);
    if (const json* adm = r.object(doc, "admittance", "admittance")) {
        r.vector(*adm, "mass", "admittance.mass", cfg.aci.admittance.mass);
        r.vector(*adm, "damping", "admittance.damping", cfg.aci.admittance.damping);
    }
    if (const json* a = r.object(doc, "aci", "aci")) read_aci(r, *a, cfg.aci);
    if (const json* h = r.object(doc, "human", "human")) read_human(r, *h, cfg, base_dir);

    std::optional<Eigen::Vector3d> rest_world;
    if (const json* o = r.object(doc, "object", "object")) rest_world = read_object(r, *o, cfg);
    if (doc.contains("script")) read_script(r, doc.at("script"), cfg);

    bool from_script = true;
    if (const json* w = r.object(doc, "waypoints", "waypoints")) read_waypoints(r, *w, cfg, from_script);
    if (from_script) cfg.waypoints.offsets = human::MotionScript(cfg.script).translation_targets();

    if (const json* m = r.object(doc, "metrics", "metrics")) {
        if (auto b = r.dynamic_vector(*m, "intervals", "metrics.intervals"))
            cfg.interval_boundaries.assign(b->data(), b->data() + b->size());
        r.scalar(*m, "motion_speed_threshold", "metrics.motion_speed_threshold", cfg.motion_speed_threshold);
        r.vector(*m, "robot_marker", "metrics.robot_marker", cfg.robot_marker);
        r.vector(*m, "human_marker", "metrics.human_marker", cfg.human_marker);
    }
    if (const json* o = r.object(doc, "outputs", "outputs")) {
        std::string trace, metrics;
        r.scalar(*o, "trace", "outputs.trace", trace);
        r.scalar(*o, "metrics", "outputs.metrics", metrics);
        if (!trace.empty()) cfg.out_trace = base_dir / trace;
        if (!metrics.empty()) cfg.out_metrics = base_dir / metrics;
    }

    if (r.errors.empty() && rest_world) {
        try {
            const Pose ee = forward_kinematics(cfg.model, cfg.q_initial);
            cfg.object.rest_vector = ee.orientation.conjugate() * *rest_world;
        } catch (const std::exception& e) {
            r.errors.emplace_back(e.what());
        }
    }

    for (auto& p : validate(cfg)) r.errors.push_back(p);
    if (!r.errors.empty()) {
        std::ostringstream os;
        for (std::size_t i = 0; i < r.errors.size(); ++i) os << (i ? "\n" : "") << r.errors[i];
        throw ConfigError(os.str());
    }
    return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot read scenario file: " + path.string());
    json doc;
    try {
        doc = json::parse(is);
    } catch (const json::parse_error& e) {
        throw ConfigError(path.string() + ": invalid JSON: " + e.what());
    }
    return parse_scenario(doc, path.parent_path());
}

}  // namespace cotransport::sim
