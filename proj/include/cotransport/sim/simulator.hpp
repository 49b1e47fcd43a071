#pragma once

#include "cotransport/aci/interface.hpp"
#include "cotransport/human.hpp"
#include "cotransport/objects.hpp"
#include "cotransport/sim/config.hpp"
#include "cotransport/sim/metrics.hpp"
#include "cotransport/sim/trace.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace cotransport::sim {

struct WorldState {
    std::uint64_t step = 0;
    double t = 0.0;
    Eigen::VectorXd q;
    Eigen::VectorXd qdot;  // last commanded joint velocity
    human::HumanState human;
    objects::CouplingWrench wrench;  // last object wrench
};

/// Evaluation counters per block, for checking the per-tick ordering contract.
struct StepCounters {
    std::uint64_t human = 0;
    std::uint64_t object = 0;
    std::uint64_t aci = 0;
    std::uint64_t wbc = 0;
};

struct RunResult {
    Trace trace;
    Metrics metrics;
};

/// Fixed-step loop: human, object, F/T measurement, ACI, WBC, joint integration.
class Simulator {
public:
    /// Loads the replay trace when the config names one. Throws ConfigError for an
    /// invalid config.
    explicit Simulator(ScenarioConfig config);

    /// Advances one tick and returns its record. Errors are rethrown as
    /// RuntimeError carrying the step index.
    const TraceRecord& step();

    /// Steps until the duration elapses or, with stop_on_completion, all waypoints
    /// are reached and every metrics interval is covered.
    RunResult run();

    const WorldState& state() const { return state_; }
    const Trace& trace() const { return trace_; }
    const StepCounters& counters() const { return counters_; }
    const ScenarioConfig& config() const { return config_; }
    const aci::AdaptiveCollaborativeInterface& interface() const { return aci_; }
    const std::vector<Eigen::Vector3d>& waypoint_targets() const { return targets_; }
    const std::vector<double>& waypoint_times() const { return waypoint_times_; }
    bool completed() const { return waypoint_times_.size() == targets_.size(); }
    double first_motion_time() const { return first_motion_; }

    Metrics compute_metrics() const;

private:
    human::HumanState next_human(const Eigen::Vector3d& force_on_hand);
    void track_waypoints(const TraceRecord& r);

    ScenarioConfig config_;
    human::HumanModel human_model_;
    std::vector<human::HumanState> replay_;
    std::size_t replay_index_ = 0;
    std::mt19937_64 rng_;
    WorldState state_;
    aci::AdaptiveCollaborativeInterface aci_;
    Trace trace_;
    StepCounters counters_;
    Eigen::Vector3d ee_start_;
    std::vector<Eigen::Vector3d> targets_;
    std::vector<double> waypoint_times_;
    double first_motion_ = 0.0;
};

/// Convenience: construct, run and write configured outputs.
RunResult run(const ScenarioConfig& config);

}  // namespace cotransport::sim
