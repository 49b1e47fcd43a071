#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cotransport/errors.hpp"
#include "cotransport/objects.hpp"
#include "support.hpp"

using namespace cotransport;
using namespace cotransport::objects;
using testing_support::Gen;

namespace {

// EE at the origin with identity orientation; hand at rest + deviation.
Wrench force_for(const ObjectModel& m, const Eigen::Vector3d& deviation,
                 const Eigen::Vector3d& hand_velocity = Eigen::Vector3d::Zero()) {
    Pose hand;
    hand.position = m.rest_vector + deviation;
    Twist ht;
    ht.linear = hand_velocity;
    return object_wrench(m, hand, ht, Pose{}, Twist::zero()).at_ee;
}

}  // namespace

TEST_CASE("rest state carries no load") {
    Gen g(71);
    for (const auto& m : presets()) {
        Pose ee = g.pose();
        Pose hand;
        hand.position = ee.position + ee.orientation * m.rest_vector;
        hand.orientation = g.quaternion();
        const auto w = object_wrench(m, hand, Twist::zero(), ee, Twist::zero());
        CHECK(w.at_ee.force.norm() < 1e-9);
        CHECK(elastic_energy(m, hand, ee) < 1e-20);
    }
}

TEST_CASE("rigid rod") {
    const ObjectModel m = rigid_rod();
    const Eigen::Vector3d axis = m.rest_vector.normalized();
    const auto w = force_for(m, 0.01 * axis);
    CHECK((w.force - 100.0 * axis).norm() < 1e-9);  // pulled toward the hand
    CHECK((force_for(m, -0.01 * axis).force + 100.0 * axis).norm() < 1e-9);
    CHECK(force_for(m, {0, 0.01, 0}).force.isApprox(Eigen::Vector3d(0, 100, 0)));
    CHECK(force_for(m, {0, 0, 0.01}).force.isApprox(Eigen::Vector3d(0, 0, 100)));
    // 10 N load deflects the rod by 1 mm
    CHECK(force_for(m, 1e-3 * axis).force.norm() == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("slack rope") {
    const ObjectModel m = slack_rope();
    CHECK(m.lateral_stiffness == 0.0);
    CHECK(m.axial_stiffness_compression == 0.0);
    Gen g(72);
    for (int n = 0; n < 1000; ++n) {
        const Eigen::Vector3d axis = m.rest_vector.normalized();
        const double ext = g.uniform(-0.5, m.slack_length);
        Eigen::Vector3d lateral = g.vec3(-1, 1);
        lateral -= lateral.dot(axis) * axis;
        CHECK(force_for(m, ext * axis + lateral, g.vec3()).force.norm() == 0.0);
    }
    const Eigen::Vector3d axis = m.rest_vector.normalized();
    CHECK(force_for(m, (m.slack_length + 0.01) * axis).force.isApprox(100.0 * axis));
}

TEST_CASE("peanut bag asymmetry") {
    const ObjectModel m = peanut_bag();
    const Eigen::Vector3d axis = m.rest_vector.normalized();
    CHECK(force_for(m, 0.02 * axis).force.norm() == doctest::Approx(100.0).epsilon(1e-12));
    CHECK(force_for(m, -0.02 * axis).force.norm() == doctest::Approx(6.0).epsilon(1e-12));
    CHECK(force_for(m, {0, 0.02, 0}).force.norm() == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("separate vertical stiffness") {
    ObjectModel m = peanut_bag();
    m.rest_vector << 1, 0, 0;
    m.vertical_stiffness = 60.0;
    CHECK(force_for(m, {0, 0, 0.1}).force.isApprox(Eigen::Vector3d(0, 0, 6.0)));
    CHECK(force_for(m, {0, 0.1, 0}).force.isApprox(Eigen::Vector3d(0, 15.0, 0)));
    // a tilted rest vector: the vertical direction is z with its axial part removed
    m.rest_vector << 1, 0, 1;
    const Eigen::Vector3d up = Eigen::Vector3d(-1, 0, 1).normalized();
    CHECK(force_for(m, 0.1 * up).force.isApprox(6.0 * up));
    m.vertical_stiffness = -1.0;
    CHECK_FALSE(m.problems().empty());
}

TEST_CASE("damping acts on the rest-vector rate") {
    ObjectModel m = rigid_rod();
    m.axial_stiffness_tension = m.axial_stiffness_compression = m.lateral_stiffness = 0;
    Pose ee, hand;
    hand.position = m.rest_vector;
    Twist ee_twist;
    ee_twist.angular << 0, 0, 0.2;
    Twist hand_twist;
    hand_twist.linear = ee_twist.angular.cross(m.rest_vector);  // hand follows the rotation exactly
    CHECK(object_wrench(m, hand, hand_twist, ee, ee_twist).at_ee.force.norm() < 1e-12);
    hand_twist.linear << 0.1, 0, 0;
    CHECK(object_wrench(m, hand, hand_twist, ee, Twist::zero()).at_ee.force.isApprox(Eigen::Vector3d(5, 0, 0)));
}

TEST_CASE("action reaction, passivity and continuity") {
    Gen g(73);
    for (const auto& base : presets()) {
        ObjectModel m = base;
        for (int n = 0; n < 2000; ++n) {
            const Pose ee = g.pose(), hand = g.pose();
            Twist he, ee_t;
            he.linear = g.vec3();
            ee_t.linear = g.vec3();
            ee_t.angular = g.vec3();
            const auto w = object_wrench(m, hand, he, ee, ee_t);
            CHECK(w.at_hand.force == -w.at_ee.force);
            CHECK(w.at_hand.torque == -w.at_ee.torque);
            CHECK(elastic_energy(m, hand, ee) >= 0.0);
        }
        // breakpoints: extension 0 and slack_length
        const Eigen::Vector3d axis = m.rest_vector.normalized();
        for (double at : {0.0, m.slack_length}) {
            const double h = 1e-9;
            const auto lo = force_for(m, (at - h) * axis).force, hi = force_for(m, (at + h) * axis).force;
            const double kmax = std::max(m.axial_stiffness_tension, m.axial_stiffness_compression);
            CHECK((lo - hi).norm() <= 2 * h * kmax + 1e-12);
        }
    }
}

TEST_CASE("presets and validation") {
    CHECK(presets().size() == 3);
    CHECK(preset("rigid_rod").has_value());
    CHECK(preset("peanut_bag")->axial_stiffness_compression == 300.0);
    CHECK_FALSE(preset("glass").has_value());
    const auto bag = peanut_bag();
    CHECK(bag.axial_stiffness_tension == 5e3);
    CHECK(bag.lateral_stiffness == 150.0);
    CHECK(bag.damping == 20.0);
    CHECK_FALSE(bag.vertical_stiffness.has_value());
    const auto rod = rigid_rod();
    CHECK(rod.damping == 50.0);
    CHECK(rod.slack_length == 0.0);

    ObjectModel bad = rigid_rod();
    bad.lateral_stiffness = -1;
    bad.damping = -2;
    CHECK(bad.problems().size() == 2);
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}
