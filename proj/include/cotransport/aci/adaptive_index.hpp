#pragma once

#include <Eigen/Core>

#include <deque>

namespace cotransport::aci {

struct AdaptiveIndexParams {
    double window_length = 0.25;  // W_l [s]
    double epsilon = 1e-4;        // [m]
    double deadband = 1e-4;       // displacement noise floor [m]
    double initial_alpha = 0.0;

    void validate() const;
};

/// alpha = clamp(1 - d_adm / (d_h + epsilon), 0, 1).
double adaptive_index(double d_adm, double d_h, double epsilon);

/// Sliding-window estimate of object deformability from the displacement the
/// admittance would produce versus the displacement of the human hand.
class AdaptiveIndex {
public:
    struct Sample {
        double t;
        Eigen::Vector3d v_adm;
        Eigen::Vector3d v_h;
    };

    explicit AdaptiveIndex(AdaptiveIndexParams params = {});

    /// Appends a sample at time t (non-decreasing), evicts samples older than
    /// t - W_l and returns the updated index.
    double update(double t, const Eigen::Vector3d& v_adm, const Eigen::Vector3d& v_h);

    double alpha() const { return alpha_; }
    double admittance_displacement() const { return d_adm_; }
    double hand_displacement() const { return d_h_; }
    const std::deque<Sample>& window() const { return window_; }
    const AdaptiveIndexParams& params() const { return params_; }

private:
    AdaptiveIndexParams params_;
    std::deque<Sample> window_;
    double alpha_;
    double d_adm_ = 0.0;
    double d_h_ = 0.0;
};

}  // namespace cotransport::aci
