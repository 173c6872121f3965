#pragma once

// Rigid-body attitude plant on SO(3) and the manifold-free angular-speed
// observer. All quantities are expressed in the inertial frame.

#include <utility>

#include "mfobs/linalg.hpp"

namespace mfobs {

/// Body-frame inertia J0 (kg m^2) with its cached inverse.
class InertiaSO3 {
public:
    /// Throws ValidationError("inertia.J0", ...) unless J0 is symmetric
    /// positive definite.
    explicit InertiaSO3(const Mat3& j0);

    const Mat3& j0() const noexcept { return j0_; }
    const Mat3& j0_inv() const noexcept { return j0_inv_; }

    /// R J0^{-1} R^T, the inertial-frame inverse inertia.
    Mat3 inverse_in_frame(const Mat3& r) const { return r * j0_inv_ * r.transpose(); }

private:
    Mat3 j0_;
    Mat3 j0_inv_;
};

struct PlantStateSO3 {
    RotationMatrix3 R;
    Vec3 q = Vec3::Zero();  // angular momentum, N m s
};

/// Observer state. Rhat is deliberately unconstrained: it is not kept on
/// SO(3) and is not an attitude estimate.
struct ObserverStateSO3 {
    Mat3 Rhat = Mat3::Identity();
    Vec3 qhat = Vec3::Zero();
};

/// Positive-definite correction map Gamma on 3x3 matrices.
/// Scalar: Gamma(X) = gamma X. Diagonal: Gamma(X) = X diag(w).
class CorrectionMap {
public:
    enum class Kind { scalar, diagonal };

    static CorrectionMap scalar(double gamma);
    static CorrectionMap diagonal(const Vec3& weights);

    Kind kind() const noexcept { return kind_; }
    double gamma() const noexcept { return weights_.x(); }
    const Vec3& weights() const noexcept { return weights_; }

    Mat3 apply(const Mat3& x) const {
        return kind_ == Kind::scalar ? Mat3(weights_.x() * x) : Mat3(x * weights_.asDiagonal());
    }

    bool operator==(const CorrectionMap&) const = default;

private:
    CorrectionMap(Kind kind, const Vec3& w) : kind_(kind), weights_(w) {}

    Kind kind_;
    Vec3 weights_;
};

struct GainsSO3 {
    /// Throws ValidationError("gains.K" / "gains.gamma", ...) on invalid gains.
    GainsSO3(const Mat3& k, CorrectionMap gamma);

    Mat3 K;
    Mat3 K_inv;
    CorrectionMap gamma;
};

struct PlantDerivativeSO3 {
    Mat3 dR;
    Vec3 dq;
};

struct ObserverDerivativeSO3 {
    Mat3 dRhat;
    Vec3 dqhat;
};

/// dR = [R J0^{-1} R^T q]_x R, dq = u. Evaluated on any 3x3 R so that
/// integrator stages off the group can use it.
PlantDerivativeSO3 plant_rhs(const Mat3& r, const Vec3& q, const Vec3& u, const InertiaSO3& inertia);
inline PlantDerivativeSO3 plant_rhs(const PlantStateSO3& s, const Vec3& u, const InertiaSO3& inertia) {
    return plant_rhs(s.R.matrix(), s.q, u, inertia);
}

/// omega = R J0^{-1} R^T q.
Vec3 omega_true(const PlantStateSO3& s, const InertiaSO3& inertia);

/// vec(Rt R^T - R Rt^T) with Rt = R - Rhat.
Vec3 innovation(const Mat3& r, const Mat3& rhat);

/// Observer vector field driven by the (possibly noisy) measurement R_meas:
///   dRhat = [R J0^{-1} R^T qhat]_x R + Gamma(R - Rhat)
///   dqhat = u + K R J0^{-1} R^T vec(Rt R^T - R Rt^T)
ObserverDerivativeSO3 observer_rhs(const ObserverStateSO3& o, const Mat3& r_meas, const Vec3& u,
                                   const GainsSO3& gains, const InertiaSO3& inertia);

/// omega_hat = R J0^{-1} R^T qhat.
Vec3 omega_hat(const Mat3& r_meas, const Vec3& qhat, const InertiaSO3& inertia);

/// V = 1/2 <Rt, Rt>_F + 1/2 qt^T K^{-1} qt.
double lyapunov_V(const Mat3& rtilde, const Vec3& qtilde, const Mat3& k);

/// dV/dt along noise-free solutions: -<Rt, Gamma(Rt)>_F.
double lyapunov_Vdot(const Mat3& rtilde, const GainsSO3& gains);

/// Distance to the attractor {Rt = 0, qt = 0}.
double distance_to_attractor(const Mat3& rtilde, const Vec3& qtilde);

/// 1/2 q^T R J0^{-1} R^T q.
double kinetic_energy(const PlantStateSO3& s, const InertiaSO3& inertia);

}  // namespace mfobs
