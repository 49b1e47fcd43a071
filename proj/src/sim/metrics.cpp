#include "cotransport/sim/metrics.hpp"

#include "cotransport/errors.hpp"

#include <algorithm>
#include <fstream>

namespace cotransport::sim {

double alignment_metric(const std::vector<double>& t, const std::vector<Eigen::Vector3d>& relative,
                        const Eigen::Vector3d& reference) {
    if (t.size() != relative.size()) throw DimensionError("alignment_metric: time and sample counts differ");
    if (t.size() < 2) throw RuntimeError("alignment_metric: needs at least two samples");
    double integral = 0.0;
    double prev = (relative[0] - reference).norm();
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double h = t[i] - t[i - 1];
        if (!(h > 0)) throw RuntimeError("alignment_metric: time axis must increase");
        const double cur = (relative[i] - reference).norm();
        integral += 0.5 * h * (prev + cur);
        prev = cur;
    }
    return integral / (t.back() - t.front());
}

double alignment_metric(const Trace& trace, const Eigen::Vector3d& robot_marker, const Eigen::Vector3d& human_marker,
                        double t_s, double t_e) {
    std::vector<double> t;
    std::vector<Eigen::Vector3d> rel;
    for (const auto& r : trace) {
        if (r.t < t_s || r.t > t_e) continue;
        t.push_back(r.t);
        rel.push_back(r.ee_pose.position + r.ee_pose.orientation * robot_marker -
                      (r.hand_pose.position + r.hand_pose.orientation * human_marker));
    }
    if (rel.empty()) throw RuntimeError("alignment_metric: no samples in the window");
    return alignment_metric(t, rel, rel.front());
}

std::vector<IntervalStats> interval_stats(const Trace& trace, const std::vector<double>& boundaries) {
    std::vector<IntervalStats> out;
    for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
        IntervalStats s;
        s.begin = boundaries[i];
        s.end = boundaries[i + 1];
        for (const auto& r : trace) {
            if (r.t < s.begin || r.t >= s.end) continue;
            s.mean_alpha += r.alpha;
            s.mean_force += r.force.norm();
            ++s.samples;
        }
        if (s.samples == 0)
            throw RuntimeError("interval_stats: interval [" + std::to_string(s.begin) + ", " + std::to_string(s.end) +
                               ") contains no samples");
        s.mean_alpha /= static_cast<double>(s.samples);
        s.mean_force /= static_cast<double>(s.samples);
        out.push_back(s);
    }
    return out;
}

double path_deviation(const std::vector<Eigen::Vector3d>& points, const std::vector<Eigen::Vector3d>& vertices) {
    if (vertices.empty()) throw RuntimeError("path_deviation: empty polyline");
    double worst = 0.0;
    for (const auto& p : points) {
        double best = (p - vertices.front()).norm();
        for (std::size_t i = 1; i < vertices.size(); ++i) {
            const Eigen::Vector3d a = vertices[i - 1], ab = vertices[i] - a;
            const double len2 = ab.squaredNorm();
            const double s = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
            best = std::min(best, (p - a - s * ab).norm());
        }
        worst = std::max(worst, best);
    }
    return worst;
}

nlohmann::json to_json(const Metrics& m) {
    nlohmann::json j;
    j["completed"] = m.completed;
    j["t_c"] = m.t_c ? nlohmann::json(*m.t_c) : nlohmann::json(nullptr);
    j["d_am"] = m.d_am;
    j["waypoint_times"] = m.waypoint_times;
    j["mean_alpha"] = m.mean_alpha;
    j["motion_mean_alpha"] = m.motion_mean_alpha;
    j["mean_force"] = m.mean_force;
    j["max_ee_displacement"] = m.max_ee_displacement;
    j["commanded_displacement"] = m.commanded_displacement;
    j["progress"] = m.progress;
    j["path_deviation"] = m.path_deviation;
    j["first_motion_time"] = m.first_motion_time;
    j["end_time"] = m.end_time;
    auto& iv = j["intervals"] = nlohmann::json::array();
    for (const auto& s : m.intervals)
        iv.push_back({{"begin", s.begin},
                      {"end", s.end},
                      {"mean_alpha", s.mean_alpha},
                      {"mean_force", s.mean_force},
                      {"samples", s.samples}});
    return j;
}

void write_metrics(const std::filesystem::path& path, const Metrics& metrics) {
    std::ofstream os(path);
    if (!os) throw RuntimeError("cannot open metrics for writing: " + path.string());
    os << to_json(metrics).dump(2) << '\n';
    if (!os) throw RuntimeError("failed writing metrics: " + path.string());
}

}  // namespace cotransport::sim
