#pragma once

// Seeded generators shared by the test binaries.

#include "cotransport/kinematics.hpp"
#include "cotransport/types.hpp"

#include <random>

namespace testing_support {

using namespace cotransport;

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

    Eigen::VectorXd vector(int n, double lo = -1.0, double hi = 1.0) {
        Eigen::VectorXd v(n);
        for (int i = 0; i < n; ++i) v(i) = uniform(lo, hi);
        return v;
    }
    Eigen::Vector3d vec3(double lo = -1.0, double hi = 1.0) { return vector(3, lo, hi); }

    Eigen::Vector3d unit3() {
        Eigen::Vector3d v;
        do v = vec3(); while (v.norm() < 1e-3 || v.norm() > 1.0);
        return v.normalized();
    }

    Eigen::Quaterniond quaternion() {
        Eigen::Vector4d c;
        do c = vector(4); while (c.norm() < 1e-3);
        c.normalize();
        return Eigen::Quaterniond(c(0), c(1), c(2), c(3));
    }

    Pose pose(double reach = 2.0) {
        Pose p;
        p.position = vec3(-reach, reach);
        p.orientation = quaternion();
        return p;
    }

    /// Random whole-body configuration for the UR16e model around the default posture.
    Eigen::VectorXd configuration(double spread = 1.0) {
        Eigen::VectorXd q = ur16e_default_configuration();
        q.head<2>() += vector(2, -2.0, 2.0);
        q(2) += uniform(-3.0, 3.0);
        q.tail(6) += vector(6, -spread, spread);
        return q;
    }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace testing_support
