#pragma once

#include "cotransport/types.hpp"

namespace cotransport::aci {

/// Diagonal virtual mass [kg] and damping [Ns/m] of the translational admittance.
struct AdmittanceParams {
    Eigen::Vector3d mass = Eigen::Vector3d::Constant(6.0);
    Eigen::Vector3d damping = Eigen::Vector3d::Constant(30.0);

    void validate() const;
};

/// One zero-order-hold step of M vdot + D v = F per axis:
/// v+ = e^{-(D/M)dt} v + (1 - e^{-(D/M)dt}) F/D.
/// Throws RuntimeError on a non-finite force (sensor fault).
Eigen::Vector3d admittance_step(const Eigen::Vector3d& force, const Eigen::Vector3d& v_prev, double dt,
                                const AdmittanceParams& params);

}  // namespace cotransport::aci
