#pragma once

#include "cotransport/sim/trace.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <vector>

namespace cotransport::sim {

struct IntervalStats {
    double begin = 0.0;
    double end = 0.0;
    double mean_alpha = 0.0;
    double mean_force = 0.0;  // mean ||F_H|| [N]
    std::size_t samples = 0;
};

struct Metrics {
    bool completed = false;
    std::optional<double> t_c;            // first motion to last waypoint [s]
    double d_am = 0.0;                    // [m]
    std::vector<double> waypoint_times;   // absolute achievement times [s]
    std::vector<IntervalStats> intervals;
    double mean_alpha = 0.0;              // over every record
    double motion_mean_alpha = 0.0;       // over records with hand speed above the motion threshold
    double mean_force = 0.0;
    double max_ee_displacement = 0.0;     // [m]
    double commanded_displacement = 0.0;  // farthest waypoint offset [m]
    double progress = 0.0;                // max_ee_displacement / commanded_displacement
    double path_deviation = 0.0;          // logged only, no corridor is enforced [m]
    double first_motion_time = 0.0;
    double end_time = 0.0;
};

/// Time average of ||r(t) - r_ref|| by the trapezoidal rule over the samples.
/// Throws RuntimeError for fewer than two samples or a non-increasing time axis.
double alignment_metric(const std::vector<double>& t, const std::vector<Eigen::Vector3d>& relative,
                        const Eigen::Vector3d& reference);

/// D_AM over the records with t in [t_s, t_e]; r = robot marker - human marker, with
/// markers given in the EE and hand frames and the reference taken from the first
/// record in the window.
double alignment_metric(const Trace& trace, const Eigen::Vector3d& robot_marker, const Eigen::Vector3d& human_marker,
                        double t_s, double t_e);

/// Largest distance from any point to the polyline through `vertices`.
/// Throws RuntimeError for an empty polyline.
double path_deviation(const std::vector<Eigen::Vector3d>& points, const std::vector<Eigen::Vector3d>& vertices);

/// Means of alpha and ||F_H|| over each half-open interval [b_i, b_{i+1}).
/// Throws RuntimeError for an interval containing no records.
std::vector<IntervalStats> interval_stats(const Trace& trace, const std::vector<double>& boundaries);

nlohmann::json to_json(const Metrics& metrics);
void write_metrics(const std::filesystem::path& path, const Metrics& metrics);

}  // namespace cotransport::sim
