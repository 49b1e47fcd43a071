#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cotransport/aci/reference.hpp"
#include "cotransport/aci/trajectory.hpp"
#include "cotransport/errors.hpp"
#include "support.hpp"

using namespace cotransport;
using namespace cotransport::aci;
using testing_support::Gen;

namespace {

Eigen::Matrix4d homogeneous(const Pose& p) {
    Eigen::Matrix4d T = Eigen::Matrix4d::Identity();
    T.block<3, 3>(0, 0) = p.orientation.toRotationMatrix();
    T.block<3, 1>(0, 3) = p.position;
    return T;
}

}  // namespace

TEST_CASE("cubic scaling") {
    CHECK(cubic_scaling(0.0) == 0.0);
    CHECK(cubic_scaling(1.0) == 1.0);
    CHECK(cubic_scaling(0.5) == 0.5);
    CHECK(cubic_scaling(-1.0) == 0.0);
    CHECK(cubic_scaling(2.0) == 1.0);
    CHECK(cubic_scaling_rate(0.0) == 0.0);
    CHECK(cubic_scaling_rate(1.0) == 0.0);
    CHECK(cubic_scaling_rate(0.5) == 1.5);
}

TEST_CASE("trajectory boundary conditions") {
    Gen g(61);
    for (int n = 0; n < 200; ++n) {
        const Pose a = g.pose(), b = g.pose();
        const double t0 = g.uniform(0, 10), T = g.uniform(0.5, 5);
        const auto traj = plan_rotation(a, b, t0, T);
        const auto s0 = traj.sample(t0), s1 = traj.sample(t0 + T), sm = traj.sample(t0 + T / 2);
        CHECK((s0.pose.position - a.position).norm() < 1e-12);
        CHECK(s0.pose.orientation.angularDistance(a.orientation) < 1e-9);
        CHECK(s0.twist.to_vector().norm() == 0.0);
        CHECK((s1.pose.position - b.position).norm() < 1e-12);
        CHECK(s1.pose.orientation.angularDistance(b.orientation) < 1e-12);
        CHECK(s1.twist.to_vector().norm() < 1e-12);
        CHECK((sm.pose.position - 0.5 * (a.position + b.position)).norm() < 1e-12);
        CHECK(sm.twist.linear.norm() == doctest::Approx(1.5 * (b.position - a.position).norm() / T).epsilon(1e-12));
        CHECK_FALSE(traj.finished(t0 + 0.999 * T));
        CHECK(traj.finished(t0 + T));
    }
}

TEST_CASE("sampled twist is the derivative of the sampled pose") {
    Gen g(62);
    for (int n = 0; n < 50; ++n) {
        const Pose a = g.pose(), b = g.pose();
        const auto traj = plan_rotation(a, b, 0.0, 3.0);
        const double h = 1e-6;
        for (double t = 0.1; t < 2.95; t += 0.3) {
            const auto p = traj.sample(t - h), q = traj.sample(t + h), s = traj.sample(t);
            const Eigen::Vector3d lin = (q.pose.position - p.pose.position) / (2 * h);
            const Eigen::Vector3d ang = rotation_log<double>(q.pose.rotation() * p.pose.rotation().transpose()) / (2 * h);
            CHECK((lin - s.twist.linear).norm() < 1e-6);
            CHECK((ang - s.twist.angular).norm() < 1e-6);
        }
    }
}

TEST_CASE("non-positive duration is rejected") {
    CHECK_THROWS_AS(plan_rotation(Pose{}, Pose{}, 0.0, 0.0), RuntimeError);
    CHECK_THROWS_AS(CubicTrajectory(Pose{}, Pose{}, 0.0, -1.0), RuntimeError);
}

TEST_CASE("rotation duration rule") {
    Pose a, b;
    b.orientation = yaw_quaternion(0.3);
    CHECK(rotation_duration(a, b) == 2.0);
    b.orientation = yaw_quaternion(0.9);
    CHECK(rotation_duration(a, b) == doctest::Approx(3.0).epsilon(1e-12));
    b.orientation = yaw_quaternion(-1.2);
    CHECK(rotation_duration(a, b) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(rotation_duration(a, b, 5.0, 0.3) == 5.0);
}

TEST_CASE("desired rotation pose") {
    Gen g(63);
    SUBCASE("identity torso") {
        const Pose rel = g.pose();
        const Pose out = desired_rotation_pose(Pose{}, rel);
        CHECK((out.position - rel.position).norm() < 1e-15);
        CHECK(out.orientation.angularDistance(rel.orientation) < 1e-12);
    }
    SUBCASE("torso yaw rotates the ee about the torso origin") {
        Pose torso;
        torso.position << 1.5, -0.3, 1.0;
        const Pose rel = g.pose();
        const Pose before = desired_rotation_pose(torso, rel);
        const double phi = 0.7;
        torso.orientation = yaw_quaternion(phi);
        const Pose after = desired_rotation_pose(torso, rel);
        const Eigen::Vector3d expected = torso.position + yaw_quaternion(phi) * (before.position - torso.position);
        CHECK((after.position - expected).norm() < 1e-12);
        CHECK(wrap_angle(yaw_of(after.orientation) - yaw_of(before.orientation) - phi) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("matches a homogeneous-matrix product") {
        for (int n = 0; n < 1000; ++n) {
            const Pose a = g.pose(), b = g.pose();
            const Eigen::Matrix4d want = homogeneous(a) * homogeneous(b);
            const Eigen::Matrix4d got = homogeneous(desired_rotation_pose(a, b));
            CHECK((want - got).norm() < 1e-12);
        }
    }
}
