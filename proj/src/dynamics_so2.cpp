#include "mfobs/dynamics_so2.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mfobs/errors.hpp"

namespace mfobs {

GainsSO2::GainsSO2(double g, double k) : gamma(g), kappa(k) {
    if (!(gamma > 0.0) || !std::isfinite(gamma)) {
        throw ValidationError("gains.gamma", "must be a finite positive scalar");
    }
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
        throw ValidationError("gains.kappa", "must be a finite positive scalar");
    }
}

PlantDerivativeSO2 so2_plant_rhs(const Mat2& r, double omega, double u, double inertia) {
    return {omega * so2_generator() * r, u / inertia};
}

ObserverDerivativeSO2 so2_observer_rhs(const ObserverStateSO2& o, const Mat2& r_meas, const GainsSO2& gains) {
    const Mat2 sr = so2_generator() * r_meas;
    const Mat2 rtilde = r_meas - o.Rhat;
    return {o.omega_hat * sr + gains.gamma * rtilde, gains.kappa * frobenius_inner(rtilde, sr)};
}

RotationMatrix2 wrap_angle_to_so2(double theta) {
    if (!(theta > -std::numbers::pi && theta <= std::numbers::pi)) {
        std::ostringstream os;
        os.precision(17);
        os << "wrapped angle " << theta << " is outside (-pi, pi]";
        throw OutOfRange(os.str());
    }
    return rot2(theta);
}

double so2_to_wrapped_angle(const RotationMatrix2& r) {
    const double a = std::atan2(r.matrix()(1, 0), r.matrix()(0, 0));
    return a <= -std::numbers::pi ? std::numbers::pi : a;
}

double wrap_angle(double theta) {
    double r = std::remainder(theta, 2.0 * std::numbers::pi);
    if (r <= -std::numbers::pi) {
        r += 2.0 * std::numbers::pi;
    }
    return r;
}

ProjectionResult project_so2(const Mat2& h) {
    const double c = h(0, 0) + h(1, 1);
    const double s = h(0, 1) - h(1, 0);
    const double tol = 1e-12 * std::max(1.0, h.norm());
    if (std::abs(c) <= tol && std::abs(s) <= tol) {
        return ProjectionDegenerate{};
    }
    const double rho = std::hypot(c, s);
    const double cs = c / rho;
    const double sn = s / rho;
    Mat2 r;
    r << cs, sn, -sn, cs;
    return ProjectionUnique{RotationMatrix2::unchecked(r)};
}

double filtered_angle(const Mat2& rhat) {
    const auto p = project_so2(rhat);
    if (is_degenerate(p)) {
        throw DegenerateProjection("observer matrix is symmetric with zero trace; nearest rotation is not unique");
    }
    return so2_to_wrapped_angle(std::get<ProjectionUnique>(p).R);
}

double so2_lyapunov_V(const Mat2& rtilde, double omega_tilde, double kappa) {
    return 0.5 * rtilde.squaredNorm() + 0.5 * omega_tilde * omega_tilde / kappa;
}

double so2_lyapunov_Vdot(const Mat2& rtilde, const GainsSO2& gains) {
    return -gains.gamma * rtilde.squaredNorm();
}

double so2_distance_to_attractor(const Mat2& rtilde, double omega_tilde) {
    return std::sqrt(rtilde.squaredNorm() + omega_tilde * omega_tilde);
}

}  // namespace mfobs
