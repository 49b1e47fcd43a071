#pragma once

// Randomized invariant checks. Each returns how many cases ran and how many
// violated the invariant; the unit tests and the acceptance binary share them.

#include "cotransport/aci/adaptive_index.hpp"
#include "cotransport/aci/trajectory.hpp"
#include "cotransport/kinematics.hpp"
#include "cotransport/objects.hpp"
#include "support.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace fuzz {

using namespace cotransport;
using testing_support::Gen;

struct Tally {
    std::string name;
    long cases = 0;
    long violations = 0;

    void check(bool ok) {
        ++cases;
        violations += !ok;
    }
};

// Magnitudes spread over many decades, with exact zeros mixed in.
inline Eigen::Vector3d wild_vec3(Gen& g) {
    if (g.coin(0.1)) return Eigen::Vector3d::Zero();
    return g.vec3() * std::pow(10.0, g.uniform(-8, 3));
}

inline Tally alpha_bounds(std::uint64_t seed, int streams = 100, int samples = 200) {
    Tally t{"alpha in [0, 1]"};
    Gen g(seed);
    for (int s = 0; s < streams; ++s) {
        aci::AdaptiveIndexParams p;
        p.window_length = g.uniform(0.01, 1.0);
        p.epsilon = std::pow(10.0, g.uniform(-9, -1));
        p.deadband = g.coin(0.3) ? 0.0 : std::pow(10.0, g.uniform(-6, -2));
        p.initial_alpha = g.uniform(0, 1);
        aci::AdaptiveIndex index(p);
        double time = 0.0;
        for (int n = 0; n < samples; ++n) {
            time += g.coin(0.05) ? 0.0 : g.uniform(1e-4, 0.05);
            const double a = index.update(time, wild_vec3(g), wild_vec3(g));
            t.check(a >= 0.0 && a <= 1.0 && a == index.alpha());
        }
    }
    for (int n = 0; n < 10000; ++n) {
        const double a = aci::adaptive_index(std::abs(wild_vec3(g).x()), std::abs(wild_vec3(g).x()),
                                             std::pow(10.0, g.uniform(-12, 0)));
        t.check(a >= 0.0 && a <= 1.0);
    }
    return t;
}

inline objects::ObjectModel random_object(Gen& g) {
    objects::ObjectModel m;
    m.rest_vector = g.vec3(-1, 1);
    if (m.rest_vector.norm() < 1e-3) m.rest_vector.x() = 0.5;
    m.axial_stiffness_tension = g.coin(0.2) ? 0.0 : g.uniform(0, 1e4);
    m.axial_stiffness_compression = g.coin(0.2) ? 0.0 : g.uniform(0, 1e4);
    m.lateral_stiffness = g.coin(0.2) ? 0.0 : g.uniform(0, 1e4);
    if (g.coin()) m.vertical_stiffness = g.uniform(0, 1e3);
    m.damping = g.coin(0.2) ? 0.0 : g.uniform(0, 100);
    m.slack_length = g.coin(0.5) ? 0.0 : g.uniform(0, 0.5);
    return m;
}

inline Tally action_reaction(std::uint64_t seed, int cases = 20000) {
    Tally t{"action-reaction"};
    Gen g(seed);
    const auto fixed = objects::presets();
    for (int n = 0; n < cases; ++n) {
        const objects::ObjectModel m = n % 4 == 0 ? fixed[static_cast<std::size_t>(n / 4) % fixed.size()] : random_object(g);
        const Pose hand = g.pose(), ee = g.pose();
        Twist ht, et;
        ht.linear = g.vec3(-2, 2);
        ht.angular = g.vec3(-2, 2);
        et.linear = g.vec3(-2, 2);
        et.angular = g.vec3(-2, 2);
        const auto w = objects::object_wrench(m, hand, ht, ee, et);
        t.check(w.at_ee.force.allFinite() && w.at_hand.force == -w.at_ee.force &&
                w.at_hand.torque == -w.at_ee.torque);
    }
    return t;
}

inline bool unit(const Eigen::Quaterniond& q, double tol = 1e-12) { return std::abs(q.norm() - 1.0) <= tol; }

inline Tally quaternion_normalization(std::uint64_t seed, int cases = 10000) {
    Tally t{"unit quaternions"};
    Gen g(seed);
    const auto model = ur16e_on_omni_base();
    for (int n = 0; n < cases; ++n) {
        t.check(unit(forward_kinematics(model, g.configuration(3.0)).orientation));

        // long chains of integration steps must not drift off the unit sphere
        Pose p = g.pose();
        Twist tw;
        tw.linear = g.vec3();
        tw.angular = g.vec3(-5, 5);
        for (int k = 0; k < 20; ++k) p = integrate(p, tw, g.uniform(0, 0.1));
        t.check(unit(p.orientation));

        Pose c = g.pose();
        for (int k = 0; k < 20; ++k) c = g.coin() ? c * g.pose() : (c * g.pose()).inverse();
        t.check(unit(c.orientation));

        Eigen::Isometry3d T = g.pose().to_isometry();
        t.check(unit(Pose::from_isometry(T).orientation));
    }
    return t;
}

inline Tally cubic_boundaries(std::uint64_t seed, int cases = 10000) {
    Tally t{"cubic boundary conditions"};
    Gen g(seed);
    for (int n = 0; n < cases; ++n) {
        const Pose a = g.pose(3.0), b = g.pose(3.0);
        const double t0 = g.uniform(0, 100), T = g.uniform(0.05, 20);
        const aci::CubicTrajectory traj(a, b, t0, T);
        const auto s0 = traj.sample(t0), s1 = traj.sample(t0 + T);
        const auto before = traj.sample(t0 - g.uniform(0, 5)), after = traj.sample(t0 + T + g.uniform(0, 5));
        const double tau = g.uniform(0, 1);
        const double s = aci::cubic_scaling(tau), sd = aci::cubic_scaling_rate(tau);
        t.check((s0.pose.position - a.position).norm() < 1e-9 &&
                s0.pose.orientation.angularDistance(a.orientation) < 1e-9 &&
                s0.twist.to_vector().norm() < 1e-12 && before.twist.to_vector().norm() < 1e-12 &&
                (before.pose.position - a.position).norm() < 1e-9);
        t.check((s1.pose.position - b.position).norm() < 1e-9 &&
                s1.pose.orientation.angularDistance(b.orientation) < 1e-9 &&
                s1.twist.to_vector().norm() < 1e-9 && after.twist.to_vector().norm() < 1e-12 &&
                (after.pose.position - b.position).norm() < 1e-9);
        t.check(s >= 0 && s <= 1 && sd >= 0 && sd <= 1.5);
    }
    return t;
}

inline std::vector<Tally> run_all(std::uint64_t seed = 2024) {
    return {alpha_bounds(seed), action_reaction(seed + 1), quaternion_normalization(seed + 2),
            cubic_boundaries(seed + 3)};
}

}  // namespace fuzz
