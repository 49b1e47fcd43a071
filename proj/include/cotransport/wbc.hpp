#pragma once

#include "cotransport/kinematics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <limits>

namespace cotransport::wbc {

/// Gains and weights of the two-level whole-body controller. Diagonal matrices
/// are stored as their diagonals.
template <typename Scalar>
struct WbcParamsT {
    Vector6<Scalar> gain;            // K
    Vector6<Scalar> task_weight;     // W1
    VectorX<Scalar> damping_weight;  // W2
    VectorX<Scalar> posture_weight;  // W3
    VectorX<Scalar> q_default;
    Scalar posture_gain = Scalar(0.5);
    // component-wise |qdot| limits applied by saturate_joint_velocities
    VectorX<Scalar> velocity_limit;

    static WbcParamsT defaults(int m, const VectorX<Scalar>& q_default) {
        WbcParamsT p;
        p.gain << 1, 1, 1, Scalar(0.1), Scalar(0.1), Scalar(0.1);
        p.task_weight << 10, 10, 10, 5, 5, 5;
        p.task_weight *= Scalar(100);
        p.damping_weight = VectorX<Scalar>::Constant(m, Scalar(3));
        p.posture_weight = VectorX<Scalar>::Ones(m);
        p.posture_weight.head(kBaseDofs).setZero();
        p.q_default = q_default;
        p.velocity_limit = VectorX<Scalar>::Constant(m, Scalar(1.5));
        p.velocity_limit.head(kBaseDofs).setConstant(Scalar(1.0));
        return p;
    }

    void validate(int m) const {
        if (damping_weight.size() != m || posture_weight.size() != m || q_default.size() != m ||
            velocity_limit.size() != m)
            throw ConfigError("wbc: W2, W3, q_default and velocity limits must have " + std::to_string(m) +
                              " entries");
        if ((gain.array() <= 0).any()) throw ConfigError("wbc: K must be positive definite");
        if ((task_weight.array() <= 0).any()) throw ConfigError("wbc: W1 must be positive definite");
        if ((damping_weight.array() <= 0).any()) throw ConfigError("wbc: W2 must be positive definite");
        if ((posture_weight.array() < 0).any()) throw ConfigError("wbc: W3 must be positive semidefinite");
        if (!(posture_gain >= 0)) throw ConfigError("wbc: posture_gain must be non-negative");
        if ((velocity_limit.array() <= 0).any()) throw ConfigError("wbc: velocity limits must be positive");
    }
};

using WbcParams = WbcParamsT<double>;

/// Minimizer of ||b - J qdot||^2_W1 + ||k qdot||^2_W2.
///
/// Evaluated in the 6x6 task space as W2^-1 J^T (J W2^-1 J^T + k^2 W1^-1)^-1 b, which
/// equals (J^T W1 J + k^2 W2)^-1 J^T W1 b for k > 0 and stays defined at k = 0 when J
/// has full row rank (the W2-weighted minimum-norm solution, J qdot = b).
template <typename Scalar>
VectorX<Scalar> damped_weighted_solve(const Matrix6X<Scalar>& J, const Vector6<Scalar>& b,
                                      const Vector6<Scalar>& task_weight, const VectorX<Scalar>& damping_weight,
                                      Scalar k) {
    if (damping_weight.size() != J.cols())
        throw DimensionError("damping weight has " + std::to_string(damping_weight.size()) + " entries, J has " +
                             std::to_string(J.cols()) + " columns");
    const VectorX<Scalar> w2_inv = damping_weight.cwiseInverse();
    const Matrix6X<Scalar> JW = J * w2_inv.asDiagonal();
    Matrix6<Scalar> A = JW * J.transpose();
    A.diagonal() += (k * k) * task_weight.cwiseInverse();

    const Eigen::LDLT<Matrix6<Scalar>> ldlt(A);
    const Scalar scale = A.diagonal().cwiseAbs().maxCoeff();
    const bool singular = ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
                          ldlt.vectorD().minCoeff() <= std::numeric_limits<Scalar>::epsilon() * 64 * scale;
    if (singular)
        throw RuntimeError("wbc: primary task system is singular; a nonzero damping factor is required");
    return JW.transpose() * ldlt.solve(b);
}

/// Task-space command b = xdot_d + K (x_d (-) x).
template <typename Scalar>
Vector6<Scalar> task_reference(const PoseT<Scalar>& x, const PoseT<Scalar>& x_d, const TwistT<Scalar>& xdot_d,
                               const Vector6<Scalar>& gain) {
    return xdot_d.to_vector() + gain.cwiseProduct(pose_error(x_d, x));
}

template <typename Scalar>
VectorX<Scalar> solve_primary(const KinematicModelT<Scalar>& model, const VectorX<Scalar>& q,
                              const PoseT<Scalar>& x_d, const TwistT<Scalar>& xdot_d,
                              const WbcParamsT<Scalar>& params) {
    const Matrix6X<Scalar> J = whole_body_jacobian(model, q);
    const Scalar k = damping_factor(manipulability(model, q), model);
    const Vector6<Scalar> b = task_reference(forward_kinematics(model, q), x_d, xdot_d, params.gain);
    return damped_weighted_solve<Scalar>(J, b, params.task_weight, params.damping_weight, k);
}

/// N = I - J^+ J with J^+ = J^T (J J^T + k^2 I)^-1.
template <typename Scalar>
MatrixX<Scalar> nullspace_projector(const Matrix6X<Scalar>& J, Scalar k) {
    Matrix6<Scalar> A = J * J.transpose();
    A.diagonal().array() += k * k;
    const MatrixX<Scalar> pinv_J_J = J.transpose() * A.partialPivLu().solve(J);
    return MatrixX<Scalar>::Identity(J.cols(), J.cols()) - pinv_J_J;
}

/// Posture velocity posture_gain * W3 (q_def - q).
template <typename Scalar>
VectorX<Scalar> solve_secondary(const VectorX<Scalar>& q, const WbcParamsT<Scalar>& params) {
    if (q.size() != params.q_default.size())
        throw DimensionError("q has " + std::to_string(q.size()) + " entries, q_default has " +
                             std::to_string(params.q_default.size()));
    return params.posture_gain * params.posture_weight.cwiseProduct(params.q_default - q);
}

/// Desired whole-body velocities: primary solution plus projected posture velocity.
template <typename Scalar>
VectorX<Scalar> compute(const KinematicModelT<Scalar>& model, const VectorX<Scalar>& q, const PoseT<Scalar>& x_d,
                        const TwistT<Scalar>& xdot_d, const WbcParamsT<Scalar>& params) {
    const Matrix6X<Scalar> J = whole_body_jacobian(model, q);
    const Scalar k = damping_factor(manipulability(model, q), model);
    const Vector6<Scalar> b = task_reference(forward_kinematics(model, q), x_d, xdot_d, params.gain);
    const VectorX<Scalar> qdot1 = damped_weighted_solve<Scalar>(J, b, params.task_weight, params.damping_weight, k);
    return qdot1 + nullspace_projector<Scalar>(J, k) * solve_secondary(q, params);
}

template <typename Scalar>
VectorX<Scalar> saturate_joint_velocities(const VectorX<Scalar>& qdot, const VectorX<Scalar>& limit) {
    return qdot.cwiseMax(-limit).cwiseMin(limit);
}

}  // namespace cotransport::wbc
