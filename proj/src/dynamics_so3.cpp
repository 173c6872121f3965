#include "mfobs/dynamics_so3.hpp"

#include <cmath>

#include "mfobs/errors.hpp"

namespace mfobs {

namespace {

bool is_spd(const Mat3& m) {
    if (!m.allFinite() || (m - m.transpose()).norm() > 1e-12 * (1.0 + m.norm())) {
        return false;
    }
    Eigen::SelfAdjointEigenSolver<Mat3> eig(m, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff() > 0.0;
}

}  // namespace

InertiaSO3::InertiaSO3(const Mat3& j0) : j0_(j0) {
    if (!is_spd(j0)) {
        throw ValidationError("inertia.J0", "must be symmetric positive definite");
    }
    j0_inv_ = j0.inverse();
}

CorrectionMap CorrectionMap::scalar(double gamma) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw ValidationError("gains.gamma", "must be a finite positive scalar");
    }
    return {Kind::scalar, Vec3::Constant(gamma)};
}

CorrectionMap CorrectionMap::diagonal(const Vec3& weights) {
    if (!weights.allFinite() || !(weights.minCoeff() > 0.0)) {
        throw ValidationError("gains.gamma_weights", "all weights must be finite and positive");
    }
    return {Kind::diagonal, weights};
}

GainsSO3::GainsSO3(const Mat3& k, CorrectionMap g) : K(k), gamma(g) {
    if (!is_spd(k)) {
        throw ValidationError("gains.K", "must be symmetric positive definite");
    }
    K_inv = k.inverse();
}

PlantDerivativeSO3 plant_rhs(const Mat3& r, const Vec3& q, const Vec3& u, const InertiaSO3& inertia) {
    const Vec3 w = inertia.inverse_in_frame(r) * q;
    return {skew(w) * r, u};
}

Vec3 omega_true(const PlantStateSO3& s, const InertiaSO3& inertia) {
    return inertia.inverse_in_frame(s.R.matrix()) * s.q;
}

Vec3 innovation(const Mat3& r, const Mat3& rhat) {
    const Mat3 m = (r - rhat) * r.transpose();
    return antisym_vee(m);
}

ObserverDerivativeSO3 observer_rhs(const ObserverStateSO3& o, const Mat3& r_meas, const Vec3& u,
                                   const GainsSO3& gains, const InertiaSO3& inertia) {
    const Mat3 w_of = inertia.inverse_in_frame(r_meas);
    const Mat3 rtilde = r_meas - o.Rhat;
    ObserverDerivativeSO3 d;
    d.dRhat = skew(w_of * o.qhat) * r_meas + gains.gamma.apply(rtilde);
    d.dqhat = u + gains.K * (w_of * innovation(r_meas, o.Rhat));
    return d;
}

Vec3 omega_hat(const Mat3& r_meas, const Vec3& qhat, const InertiaSO3& inertia) {
    return inertia.inverse_in_frame(r_meas) * qhat;
}

double lyapunov_V(const Mat3& rtilde, const Vec3& qtilde, const Mat3& k) {
    const Vec3 kinv_q = k.llt().solve(qtilde);
    return 0.5 * rtilde.squaredNorm() + 0.5 * qtilde.dot(kinv_q);
}

double lyapunov_Vdot(const Mat3& rtilde, const GainsSO3& gains) {
    return -frobenius_inner(rtilde, gains.gamma.apply(rtilde));
}

double distance_to_attractor(const Mat3& rtilde, const Vec3& qtilde) {
    return std::sqrt(rtilde.squaredNorm() + qtilde.squaredNorm());
}

double kinetic_energy(const PlantStateSO3& s, const InertiaSO3& inertia) {
    return 0.5 * s.q.dot(omega_true(s, inertia));
}

}  // namespace mfobs
