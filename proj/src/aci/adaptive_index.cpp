#include "cotransport/aci/adaptive_index.hpp"

#include "cotransport/errors.hpp"

#include <algorithm>

namespace cotransport::aci {

void AdaptiveIndexParams::validate() const {
    if (!(window_length > 0)) throw ConfigError("aci.window_length must be positive");
    if (!(epsilon > 0)) throw ConfigError("aci.epsilon must be positive");
    if (!(deadband >= 0)) throw ConfigError("aci.deadband must be non-negative");
    if (!(initial_alpha >= 0 && initial_alpha <= 1)) throw ConfigError("aci.initial_alpha must lie in [0, 1]");
}

double adaptive_index(double d_adm, double d_h, double epsilon) {
    return std::clamp(1.0 - d_adm / (d_h + epsilon), 0.0, 1.0);
}

AdaptiveIndex::AdaptiveIndex(AdaptiveIndexParams params) : params_(params), alpha_(params.initial_alpha) {}

double AdaptiveIndex::update(double t, const Eigen::Vector3d& v_adm, const Eigen::Vector3d& v_h) {
    if (!window_.empty() && t < window_.back().t)
        throw RuntimeError("adaptive index: samples must be appended in time order");
    window_.push_back({t, v_adm, v_h});
    const double horizon = t - params_.window_length;
    while (window_.size() > 1 && window_.front().t < horizon) window_.pop_front();

    // trapezoidal displacement over the retained samples
    Eigen::Vector3d disp_adm = Eigen::Vector3d::Zero();
    Eigen::Vector3d disp_h = Eigen::Vector3d::Zero();
    for (std::size_t i = 1; i < window_.size(); ++i) {
        const double h = window_[i].t - window_[i - 1].t;
        disp_adm += 0.5 * h * (window_[i].v_adm + window_[i - 1].v_adm);
        disp_h += 0.5 * h * (window_[i].v_h + window_[i - 1].v_h);
    }
    d_adm_ = disp_adm.norm();
    d_h_ = disp_h.norm();

    if (d_adm_ < params_.deadband && d_h_ < params_.deadband) return alpha_;
    alpha_ = adaptive_index(d_adm_, d_h_, params_.epsilon);
    return alpha_;
}

}  // namespace cotransport::aci
