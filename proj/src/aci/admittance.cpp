#include "cotransport/aci/admittance.hpp"

#include "cotransport/errors.hpp"

#include <cmath>

namespace cotransport::aci {

void AdmittanceParams::validate() const {
    if (!(mass.array() > 0).all()) throw ConfigError("admittance.mass must be strictly positive");
    if (!(damping.array() > 0).all()) throw ConfigError("admittance.damping must be strictly positive");
}

Eigen::Vector3d admittance_step(const Eigen::Vector3d& force, const Eigen::Vector3d& v_prev, double dt,
                                const AdmittanceParams& params) {
    if (!(dt > 0)) throw RuntimeError("admittance_step: dt must be positive");
    if (!force.allFinite()) throw RuntimeError("admittance_step: non-finite force measurement");
    Eigen::Vector3d v;
    for (int i = 0; i < 3; ++i) {
        const double decay = std::exp(-params.damping(i) / params.mass(i) * dt);
        v(i) = decay * v_prev(i) + (1.0 - decay) * force(i) / params.damping(i);
    }
    return v;
}

}  // namespace cotransport::aci
