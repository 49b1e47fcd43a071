#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cmath>
#include <numbers>

namespace cotransport {

template <typename Scalar> using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar> using Vector6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar> using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar> using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar> using Matrix6 = Eigen::Matrix<Scalar, 6, 6>;
template <typename Scalar> using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar> using Matrix6X = Eigen::Matrix<Scalar, 6, Eigen::Dynamic>;
template <typename Scalar> using Quaternion = Eigen::Quaternion<Scalar>;
template <typename Scalar> using Isometry3 = Eigen::Transform<Scalar, 3, Eigen::Isometry>;

/// Rigid transform stored as position + unit quaternion.
template <typename Scalar>
struct PoseT {
    Vector3<Scalar> position = Vector3<Scalar>::Zero();
    Quaternion<Scalar> orientation = Quaternion<Scalar>::Identity();

    static PoseT identity() { return {}; }

    static PoseT from_isometry(const Isometry3<Scalar>& T) {
        PoseT p;
        p.position = T.translation();
        p.orientation = Quaternion<Scalar>(T.linear());
        p.orientation.normalize();
        return p;
    }

    Isometry3<Scalar> to_isometry() const {
        Isometry3<Scalar> T = Isometry3<Scalar>::Identity();
        T.linear() = orientation.toRotationMatrix();
        T.translation() = position;
        return T;
    }

    Matrix3<Scalar> rotation() const { return orientation.toRotationMatrix(); }

    PoseT operator*(const PoseT& rhs) const {
        PoseT out;
        out.position = position + orientation * rhs.position;
        out.orientation = (orientation * rhs.orientation).normalized();
        return out;
    }

    PoseT inverse() const {
        PoseT out;
        out.orientation = orientation.conjugate();
        out.position = -(out.orientation * position);
        return out;
    }
};

/// 6-D velocity: linear part first, angular part second, both in world frame.
template <typename Scalar>
struct TwistT {
    Vector3<Scalar> linear = Vector3<Scalar>::Zero();
    Vector3<Scalar> angular = Vector3<Scalar>::Zero();

    static TwistT zero() { return {}; }

    static TwistT from_vector(const Vector6<Scalar>& v) { return {v.template head<3>(), v.template tail<3>()}; }

    Vector6<Scalar> to_vector() const {
        Vector6<Scalar> v;
        v << linear, angular;
        return v;
    }

    bool all_finite() const { return linear.allFinite() && angular.allFinite(); }
};

/// Force/torque pair.
template <typename Scalar>
struct WrenchT {
    Vector3<Scalar> force = Vector3<Scalar>::Zero();
    Vector3<Scalar> torque = Vector3<Scalar>::Zero();
};

using Pose = PoseT<double>;
using Twist = TwistT<double>;
using Wrench = WrenchT<double>;

template <typename Scalar>
Scalar wrap_angle(Scalar a) {
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    a = std::fmod(a + pi, Scalar(2) * pi);
    if (a < Scalar(0)) a += Scalar(2) * pi;
    return a - pi;
}

/// Axis-angle vector of a rotation matrix (log map), angle in [0, pi].
template <typename Scalar>
Vector3<Scalar> rotation_log(const Matrix3<Scalar>& R) {
    Eigen::AngleAxis<Scalar> aa(R);
    return aa.axis() * aa.angle();
}

/// Rotation for an axis-angle vector (exp map).
template <typename Scalar>
Quaternion<Scalar> rotation_exp(const Vector3<Scalar>& w) {
    const Scalar angle = w.norm();
    if (angle < Scalar(1e-15)) {
        Quaternion<Scalar> q(Scalar(1), w.x() / 2, w.y() / 2, w.z() / 2);
        return q.normalized();
    }
    return Quaternion<Scalar>(Eigen::AngleAxis<Scalar>(angle, w / angle));
}

template <typename Scalar>
Quaternion<Scalar> yaw_quaternion(Scalar yaw) {
    return Quaternion<Scalar>(Eigen::AngleAxis<Scalar>(yaw, Vector3<Scalar>::UnitZ()));
}

/// Yaw of the rotation's x-axis projected on the horizontal plane.
template <typename Scalar>
Scalar yaw_of(const Quaternion<Scalar>& q) {
    const Vector3<Scalar> x = q * Vector3<Scalar>::UnitX();
    return std::atan2(x.y(), x.x());
}

/// Pose error [p_d - p; log(R_d R^T)], world frame.
template <typename Scalar>
Vector6<Scalar> pose_error(const PoseT<Scalar>& desired, const PoseT<Scalar>& current) {
    Vector6<Scalar> e;
    e.template head<3>() = desired.position - current.position;
    e.template tail<3>() = rotation_log<Scalar>(desired.rotation() * current.rotation().transpose());
    return e;
}

/// Applies a world-frame twist for dt: Euler on position, exponential map on orientation.
template <typename Scalar>
PoseT<Scalar> integrate(const PoseT<Scalar>& pose, const TwistT<Scalar>& twist, Scalar dt) {
    PoseT<Scalar> out;
    out.position = pose.position + twist.linear * dt;
    out.orientation = (rotation_exp<Scalar>(twist.angular * dt) * pose.orientation).normalized();
    return out;
}

/// Homogeneous transform for translation + intrinsic roll-pitch-yaw (Z-Y-X).
template <typename Scalar>
Isometry3<Scalar> make_transform(const Vector3<Scalar>& translation, const Vector3<Scalar>& rpy) {
    Isometry3<Scalar> T = Isometry3<Scalar>::Identity();
    T.linear() = (Eigen::AngleAxis<Scalar>(rpy.z(), Vector3<Scalar>::UnitZ()) *
                  Eigen::AngleAxis<Scalar>(rpy.y(), Vector3<Scalar>::UnitY()) *
                  Eigen::AngleAxis<Scalar>(rpy.x(), Vector3<Scalar>::UnitX()))
                     .toRotationMatrix();
    T.translation() = translation;
    return T;
}

}  // namespace cotransport
