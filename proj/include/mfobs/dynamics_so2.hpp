#pragma once

// Planar spinning body on SO(2), its observer, the wrapped-angle maps and
// the closed-form nearest-rotation projection used for angle filtering.

#include <variant>

#include "mfobs/linalg.hpp"

namespace mfobs {

struct PlantStateSO2 {
    RotationMatrix2 R;
    double omega = 0.0;  // rad/s
};

struct ObserverStateSO2 {
    Mat2 Rhat = Mat2::Identity();  // unconstrained
    double omega_hat = 0.0;
};

struct GainsSO2 {
    /// Throws ValidationError("gains.gamma" / "gains.kappa", ...) unless both are positive.
    GainsSO2(double gamma, double kappa);

    double gamma;
    double kappa;
};

struct PlantDerivativeSO2 {
    Mat2 dR;
    double domega;
};

struct ObserverDerivativeSO2 {
    Mat2 dRhat;
    double domega_hat;
};

/// dR = omega S R, domega = u / J with S = [[0, -1], [1, 0]].
PlantDerivativeSO2 so2_plant_rhs(const Mat2& r, double omega, double u, double inertia);
inline PlantDerivativeSO2 so2_plant_rhs(const PlantStateSO2& s, double u, double inertia) {
    return so2_plant_rhs(s.R.matrix(), s.omega, u, inertia);
}

/// dRhat = omega_hat S R + gamma (R - Rhat), domega_hat = kappa trace((R - Rhat)^T S R).
/// The torque does not feed through, so a nonzero input biases omega_hat.
ObserverDerivativeSO2 so2_observer_rhs(const ObserverStateSO2& o, const Mat2& r_meas, const GainsSO2& gains);

/// Wrapped angle in (-pi, pi] to SO(2). Throws OutOfRange outside that interval.
RotationMatrix2 wrap_angle_to_so2(double theta);

/// atan2(R21, R11) in (-pi, pi]; the half turn maps to +pi.
double so2_to_wrapped_angle(const RotationMatrix2& r);

/// Wraps any finite angle into (-pi, pi].
double wrap_angle(double theta);

struct ProjectionUnique {
    RotationMatrix2 R;
};

/// H is symmetric with zero trace: every element of SO(2) is a nearest rotation.
struct ProjectionDegenerate {};

using ProjectionResult = std::variant<ProjectionUnique, ProjectionDegenerate>;

inline bool is_degenerate(const ProjectionResult& p) {
    return std::holds_alternative<ProjectionDegenerate>(p);
}

/// Nearest rotation to H in Frobenius norm. H is treated as degenerate when
/// both |h11 + h22| and |h12 - h21| are at most 1e-12 max(1, ||H||_F).
ProjectionResult project_so2(const Mat2& h);

/// Wrapped angle of the projection of Rhat. Throws DegenerateProjection when
/// the projection is not unique.
double filtered_angle(const Mat2& rhat);

/// V = 1/2 <Rt, Rt>_F + wt^2 / (2 kappa).
double so2_lyapunov_V(const Mat2& rtilde, double omega_tilde, double kappa);

/// -<Rt, Gamma(Rt)>_F = -gamma ||Rt||_F^2.
double so2_lyapunov_Vdot(const Mat2& rtilde, const GainsSO2& gains);

/// Distance to the attractor {Rt = 0, wt = 0}.
double so2_distance_to_attractor(const Mat2& rtilde, double omega_tilde);

}  // namespace mfobs
