#pragma once

#include "cotransport/errors.hpp"
#include "cotransport/types.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <string>
#include <vector>

namespace cotransport {

/// Number of planar DoFs of the omni-directional base: x, y, yaw.
inline constexpr int kBaseDofs = 3;

template <typename Scalar>
struct RevoluteJointT {
    Isometry3<Scalar> parent_offset = Isometry3<Scalar>::Identity();  // previous link -> joint frame
    Vector3<Scalar> axis = Vector3<Scalar>::UnitZ();                   // in joint frame
};

/// Omni base (x, y, yaw) carrying a revolute serial arm. The first arm joint's
/// parent_offset is the arm mount on the base.
template <typename Scalar>
struct KinematicModelT {
    std::vector<RevoluteJointT<Scalar>> arm_joints;
    Isometry3<Scalar> ee_offset = Isometry3<Scalar>::Identity();
    Scalar w_threshold = Scalar(0.05);
    Scalar k_max = Scalar(0.1);

    int arm_dofs() const { return static_cast<int>(arm_joints.size()); }
    int dofs() const { return kBaseDofs + arm_dofs(); }

    /// Throws ConfigError naming the first broken invariant.
    void validate() const {
        if (arm_joints.empty()) throw ConfigError("kinematic model: arm must have at least one joint");
        if (dofs() <= 6) throw ConfigError("kinematic model: whole-body dofs must exceed 6");
        auto orthonormal = [](const Isometry3<Scalar>& T) {
            const Matrix3<Scalar> R = T.linear();
            return (R.transpose() * R - Matrix3<Scalar>::Identity()).norm() < Scalar(1e-9) &&
                   std::abs(R.determinant() - Scalar(1)) < Scalar(1e-9);
        };
        for (std::size_t i = 0; i < arm_joints.size(); ++i) {
            if (std::abs(arm_joints[i].axis.norm() - Scalar(1)) > Scalar(1e-9))
                throw ConfigError("kinematic model: joint " + std::to_string(i) + " axis is not unit norm");
            if (!orthonormal(arm_joints[i].parent_offset))
                throw ConfigError("kinematic model: joint " + std::to_string(i) + " offset rotation is not orthonormal");
        }
        if (!orthonormal(ee_offset)) throw ConfigError("kinematic model: ee_offset rotation is not orthonormal");
        if (!(w_threshold > Scalar(0))) throw ConfigError("kinematic model: w_threshold must be positive");
        if (!(k_max >= Scalar(0))) throw ConfigError("kinematic model: k_max must be non-negative");
    }
};

using RevoluteJoint = RevoluteJointT<double>;
using KinematicModel = KinematicModelT<double>;

template <typename Scalar>
struct JointStateT {
    VectorX<Scalar> q;
    VectorX<Scalar> qdot;

    static JointStateT zero(int m) { return {VectorX<Scalar>::Zero(m), VectorX<Scalar>::Zero(m)}; }
};

using JointState = JointStateT<double>;

namespace detail {

template <typename Scalar>
void check_dims(const KinematicModelT<Scalar>& model, const VectorX<Scalar>& q) {
    if (q.size() != model.dofs())
        throw DimensionError("joint vector has " + std::to_string(q.size()) + " entries, model expects " +
                             std::to_string(model.dofs()));
}

template <typename Scalar>
Isometry3<Scalar> base_transform(const VectorX<Scalar>& q) {
    Isometry3<Scalar> T = Isometry3<Scalar>::Identity();
    T.translation() << q(0), q(1), Scalar(0);
    T.linear() = Eigen::AngleAxis<Scalar>(q(2), Vector3<Scalar>::UnitZ()).toRotationMatrix();
    return T;
}

/// Walks the chain; records each joint's world axis and origin, returns the EE transform.
template <typename Scalar>
Isometry3<Scalar> chain(const KinematicModelT<Scalar>& model, const VectorX<Scalar>& q,
                        std::vector<Vector3<Scalar>>* axes, std::vector<Vector3<Scalar>>* origins) {
    Isometry3<Scalar> T = base_transform(q);
    for (int i = 0; i < model.arm_dofs(); ++i) {
        const auto& joint = model.arm_joints[static_cast<std::size_t>(i)];
        T = T * joint.parent_offset;
        if (axes) axes->push_back(T.linear() * joint.axis);
        if (origins) origins->push_back(T.translation());
        T = T * Eigen::AngleAxis<Scalar>(q(kBaseDofs + i), joint.axis);
    }
    return T * model.ee_offset;
}

}  // namespace detail

template <typename Scalar>
PoseT<Scalar> forward_kinematics(const KinematicModelT<Scalar>& model, const VectorX<Scalar>& q) {
    detail::check_dims(model, q);
    return PoseT<Scalar>::from_isometry(detail::chain<Scalar>(model, q, nullptr, nullptr));
}

template <typename Scalar>
PoseT<Scalar> forward_kinematics(const KinematicModelT<Scalar>& model, const JointStateT<Scalar>& state) {
    return forward_kinematics(model, state.q);
}

/// 6 x m geometric Jacobian, rows [linear; angular] in world frame, columns [x, y, yaw, arm...].
template <typename Scalar>
Matrix6X<Scalar> whole_body_jacobian(const KinematicModelT<Scalar>& model, const VectorX<Scalar>& q) {
    detail::check_dims(model, q);
    std::vector<Vector3<Scalar>> axes, origins;
    const Vector3<Scalar> p = detail::chain<Scalar>(model, q, &axes, &origins).translation();

    Matrix6X<Scalar> J = Matrix6X<Scalar>::Zero(6, model.dofs());
    J(0, 0) = Scalar(1);
    J(1, 1) = Scalar(1);
    // yaw about the world z axis through the base origin
    J(0, 2) = -(p.y() - q(1));
    J(1, 2) = p.x() - q(0);
    J(5, 2) = Scalar(1);
    for (int i = 0; i < model.arm_dofs(); ++i) {
        const auto& z = axes[static_cast<std::size_t>(i)];
        J.col(kBaseDofs + i).template head<3>() = z.cross(p - origins[static_cast<std::size_t>(i)]);
        J.col(kBaseDofs + i).template tail<3>() = z;
    }
    return J;
}

/// Arm-only block of the whole-body Jacobian (6 x n_a).
template <typename Scalar>
Matrix6X<Scalar> arm_jacobian(const KinematicModelT<Scalar>& model, const VectorX<Scalar>& q) {
    return whole_body_jacobian(model, q).rightCols(model.arm_dofs());
}

/// sqrt(det(J_a J_a^T)) of the arm Jacobian; negative round-off clamps to 0.
template <typename Scalar>
Scalar manipulability(const KinematicModelT<Scalar>& model, const VectorX<Scalar>& q) {
    const Matrix6X<Scalar> Ja = arm_jacobian(model, q);
    const Scalar det = (Ja * Ja.transpose()).determinant();
    return std::sqrt(std::max(det, Scalar(0)));
}

/// Quadratic ramp: k_max (1 - w/w_threshold)^2 below the threshold, 0 above.
template <typename Scalar>
Scalar damping_factor(Scalar w, Scalar w_threshold, Scalar k_max) {
    if (w >= w_threshold) return Scalar(0);
    const Scalar r = Scalar(1) - std::max(w, Scalar(0)) / w_threshold;
    return k_max * r * r;
}

template <typename Scalar>
Scalar damping_factor(Scalar w, const KinematicModelT<Scalar>& model) {
    return damping_factor(w, model.w_threshold, model.k_max);
}

/// Six-joint chain with UR16e link offsets, mounted 0.2 m ahead of and 0.6 m above
/// the base origin.
template <typename Scalar = double>
KinematicModelT<Scalar> ur16e_on_omni_base() {
    const Scalar half_pi = std::numbers::pi_v<Scalar> / 2;
    // standard DH rows (d, a, alpha)
    const Scalar d[6] = {Scalar(0.1807), 0, 0, Scalar(0.17415), Scalar(0.11985), Scalar(0.11655)};
    const Scalar a[6] = {0, Scalar(-0.4784), Scalar(-0.36), 0, 0, 0};
    const Scalar alpha[6] = {half_pi, 0, 0, half_pi, -half_pi, 0};

    auto dh_link = [&](int i) {
        Isometry3<Scalar> T = Isometry3<Scalar>::Identity();
        T.translate(Vector3<Scalar>(a[i], Scalar(0), d[i]));
        T.rotate(Eigen::AngleAxis<Scalar>(alpha[i], Vector3<Scalar>::UnitX()));
        return T;
    };

    KinematicModelT<Scalar> model;
    Isometry3<Scalar> offset = Isometry3<Scalar>::Identity();
    offset.translation() << Scalar(0.2), Scalar(0), Scalar(0.6);
    for (int i = 0; i < 6; ++i) {
        model.arm_joints.push_back({offset, Vector3<Scalar>::UnitZ()});
        offset = dh_link(i);
    }
    model.ee_offset = offset;
    return model;
}

/// Forward-facing default posture for ur16e_on_omni_base(); EE roughly 1 m high,
/// 0.8 m ahead, manipulability ~0.1.
template <typename Scalar = double>
VectorX<Scalar> ur16e_default_configuration() {
    VectorX<Scalar> q(9);
    q << 0, 0, 0, std::numbers::pi_v<Scalar>, Scalar(-1.3), Scalar(1.6), Scalar(-1.8707963267948966),
        -std::numbers::pi_v<Scalar> / 2, 0;
    return q;
}

}  // namespace cotransport
