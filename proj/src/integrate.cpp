#include "mfobs/integrate.hpp"

#include <cmath>
#include <optional>

namespace mfobs {

std::string_view to_string(PlantMethod m) {
    switch (m) {
        case PlantMethod::lie_midpoint:
            return "lie_midpoint";
        case PlantMethod::lie_rk4:
            return "lie_rk4";
        case PlantMethod::ambient_rk4_with_monitor:
            return "ambient_rk4_with_monitor";
    }
    return "?";
}

std::string_view to_string(ObserverMethod m) {
    return m == ObserverMethod::rk4 ? "rk4" : "euler";
}

PlantMethod plant_method_from_string(std::string_view s) {
    for (auto m : {PlantMethod::lie_midpoint, PlantMethod::lie_rk4, PlantMethod::ambient_rk4_with_monitor}) {
        if (s == to_string(m)) {
            return m;
        }
    }
    throw ValidationError("integrator.plant_method", "unknown method '" + std::string(s) + "'");
}

ObserverMethod observer_method_from_string(std::string_view s) {
    if (s == "rk4") {
        return ObserverMethod::rk4;
    }
    if (s == "euler") {
        return ObserverMethod::euler;
    }
    throw ValidationError("integrator.observer_method", "unknown method '" + std::string(s) + "'");
}

void IntegratorConfig::validate() const {
    if (!(dt > 0.0 && dt <= 0.1)) {
        throw ValidationError("integrator.dt", "must satisfy 0 < dt <= 0.1");
    }
}

long step_count(double horizon, double dt) {
    return std::lround(horizon / dt);
}

namespace {

using Flat12 = Eigen::Matrix<double, 12, 1>;
using Flat5 = Eigen::Matrix<double, 5, 1>;

Flat12 pack(const Mat3& m, const Vec3& v) {
    Flat12 x;
    x.head<9>() = Eigen::Map<const Eigen::Matrix<double, 9, 1>>(m.data());
    x.tail<3>() = v;
    return x;
}

Mat3 unpack_mat(const Flat12& x) {
    return Eigen::Map<const Mat3>(x.data());
}

Flat5 pack(const Mat2& m, double w) {
    Flat5 x;
    x.head<4>() = Eigen::Map<const Eigen::Vector4d>(m.data());
    x(4) = w;
    return x;
}

Mat2 unpack_mat(const Flat5& x) {
    return Eigen::Map<const Mat2>(x.data());
}

/// dexp^{-1}_sigma(v) truncated after the second bracket, which is enough
/// for a fourth-order method.
Vec3 dexp_inv(const Vec3& sigma, const Vec3& v) {
    const Vec3 c = sigma.cross(v);
    return v - 0.5 * c + (1.0 / 12.0) * sigma.cross(c);
}

/// Newton-Schulz iteration towards the orthogonal polar factor.
Mat3 reorthonormalize(Mat3 r) {
    for (int i = 0; i < 8 && orthonormality_error(r) > 1e-15; ++i) {
        r = 0.5 * r * (3.0 * Mat3::Identity() - r.transpose() * r);
    }
    return r;
}

void require_finite_plant(const Mat3& r, const Vec3& q, double t) {
    if (!r.allFinite() || !q.allFinite()) {
        throw NonFinite(t, "plant state");
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// SO(3)

PlantStepSO3 plant_step_so3(PlantMethod method, const PlantStateSO3& s, const TorqueProfile& torque, double t,
                            const InertiaSO3& inertia, double dt) {
    const Mat3& r0 = s.R.matrix();
    const Vec3 u0 = torque.at(t);
    const Vec3 uh = torque.at(t + 0.5 * dt);
    const Vec3 u1 = torque.at(t + dt);
    auto omega_at = [&](const Mat3& r, const Vec3& q) -> Vec3 { return inertia.inverse_in_frame(r) * q; };

    PlantStepSO3 out;
    switch (method) {
        case PlantMethod::lie_midpoint: {
            const Vec3 w0 = omega_at(r0, s.q);
            const Mat3 r_half = so3_exp(0.5 * dt * w0).matrix() * r0;
            const Vec3 w_mid = omega_at(r_half, s.q + 0.5 * dt * u0);
            // Stages follow the step's own geodesic so that the observer sees
            // a measurement consistent with the plant update.
            const Mat3 r_mid = so3_exp(0.5 * dt * w_mid).matrix() * r0;
            const Vec3 q_mid = s.q + 0.5 * dt * uh;
            out.next.R = RotationMatrix3::unchecked(so3_exp(dt * w_mid).matrix() * r0);
            out.next.q = s.q + dt * uh;
            out.stages = {{{r0, s.q}, {r_mid, q_mid}, {r_mid, q_mid}, {out.next.R.matrix(), out.next.q}}};
            break;
        }
        case PlantMethod::lie_rk4: {
            const Vec3 q2 = s.q + 0.5 * dt * u0;
            const Vec3 q3 = s.q + 0.5 * dt * uh;
            const Vec3 q4 = s.q + dt * uh;
            const Vec3 k1 = omega_at(r0, s.q);
            const Vec3 sig2 = 0.5 * dt * k1;
            const Mat3 y2 = so3_exp(sig2).matrix() * r0;
            const Vec3 k2 = dexp_inv(sig2, omega_at(y2, q2));
            const Vec3 sig3 = 0.5 * dt * k2;
            const Mat3 y3 = so3_exp(sig3).matrix() * r0;
            const Vec3 k3 = dexp_inv(sig3, omega_at(y3, q3));
            const Vec3 sig4 = dt * k3;
            const Mat3 y4 = so3_exp(sig4).matrix() * r0;
            const Vec3 k4 = dexp_inv(sig4, omega_at(y4, q4));
            const Vec3 sig = (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            out.next.R = RotationMatrix3::unchecked(so3_exp(sig).matrix() * r0);
            out.next.q = s.q + (dt / 6.0) * (u0 + 4.0 * uh + u1);
            out.stages = {{{r0, s.q}, {y2, q2}, {y3, q3}, {y4, q4}}};
            break;
        }
        case PlantMethod::ambient_rk4_with_monitor: {
            auto f = [&](const Mat3& r, const Vec3& q) { return skew(omega_at(r, q)) * r; };
            const Mat3 k1 = f(r0, s.q);
            const Vec3 q2 = s.q + 0.5 * dt * u0;
            const Mat3 y2 = r0 + 0.5 * dt * k1;
            const Mat3 k2 = f(y2, q2);
            const Vec3 q3 = s.q + 0.5 * dt * uh;
            const Mat3 y3 = r0 + 0.5 * dt * k2;
            const Mat3 k3 = f(y3, q3);
            const Vec3 q4 = s.q + dt * uh;
            const Mat3 y4 = r0 + dt * k3;
            const Mat3 k4 = f(y4, q4);
            Mat3 r1 = r0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (orthonormality_error(r1) > kTolOrth) {
                r1 = reorthonormalize(r1);
            }
            out.next.R = RotationMatrix3::unchecked(r1);
            out.next.q = s.q + (dt / 6.0) * (u0 + 4.0 * uh + u1);
            out.stages = {{{r0, s.q}, {y2, q2}, {y3, q3}, {y4, q4}}};
            break;
        }
    }
    require_finite_plant(out.next.R.matrix(), out.next.q, t);
    return out;
}

PlantStateSO3 lie_midpoint_step_so3(const PlantStateSO3& s, const TorqueProfile& torque, double t,
                                    const InertiaSO3& inertia, double dt) {
    return plant_step_so3(PlantMethod::lie_midpoint, s, torque, t, inertia, dt).next;
}

PlantStateSO3 lie_rk4_step_so3(const PlantStateSO3& s, const TorqueProfile& torque, double t,
                               const InertiaSO3& inertia, double dt) {
    return plant_step_so3(PlantMethod::lie_rk4, s, torque, t, inertia, dt).next;
}

ObserverStateSO3 observer_step_so3(ObserverMethod method, const ObserverStateSO3& o,
                                   const std::array<Mat3, 4>& measured, const TorqueProfile& torque, double t,
                                   const GainsSO3& gains, const InertiaSO3& inertia, double dt) {
    auto rhs = [&](int stage, const Flat12& x) -> Flat12 {
        const ObserverStateSO3 os{unpack_mat(x), x.tail<3>()};
        const auto d = observer_rhs(os, measured[stage], torque.at(t + kRk4Nodes[stage] * dt), gains, inertia);
        return pack(d.dRhat, d.dqhat);
    };
    const Flat12 x0 = pack(o.Rhat, o.qhat);
    Flat12 x1;
    if (method == ObserverMethod::rk4) {
        x1 = rk4_step_staged(rhs, x0, dt, t);
    } else {
        x1 = x0 + dt * rhs(0, x0);
        if (!x1.allFinite()) {
            throw NonFinite(t, "Euler step produced NaN/Inf");
        }
    }
    return {unpack_mat(x1), x1.tail<3>()};
}

namespace {

SampleSO3 record_so3(double t, const SystemSO3& sys, const PlantStateSO3& p, const ObserverStateSO3& o,
                     const Mat3& r_meas) {
    SampleSO3 s;
    s.t = t;
    s.plant = p;
    s.observer = o;
    s.omega = omega_true(p, sys.inertia);
    s.omega_hat = omega_hat(r_meas, o.qhat, sys.inertia);
    const Mat3 rtilde = p.R.matrix() - o.Rhat;
    const Vec3 qtilde = p.q - o.qhat;
    s.V = lyapunov_V(rtilde, qtilde, sys.gains.K);
    s.Vdot = lyapunov_Vdot(rtilde, sys.gains);
    s.dist = distance_to_attractor(rtilde, qtilde);
    return s;
}

}  // namespace

Trajectory co_simulate_so3(const SystemSO3& sys, const PlantStateSO3& plant0, const ObserverStateSO3& obs0,
                           NoiseSource& noise, const IntegratorConfig& config, double horizon) {
    config.validate();
    const double dt = config.dt;
    const long n = step_count(horizon, dt);

    Trajectory traj;
    traj.mode = Mode::so3;
    traj.dt = dt;
    traj.so3.reserve(static_cast<std::size_t>(n) + 1);

    PlantStateSO3 p = plant0;
    ObserverStateSO3 o = obs0;
    for (long k = 0;; ++k) {
        const double t = static_cast<double>(k) * dt;
        const Mat3 eta = noise.sample<3>(t);
        traj.so3.push_back(record_so3(t, sys, p, o, p.R.matrix() + eta));
        if (k == n) {
            break;
        }
        const PlantStepSO3 step = plant_step_so3(config.plant_method, p, sys.torque, t, sys.inertia, dt);
        std::array<Mat3, 4> measured;
        for (std::size_t i = 0; i < 4; ++i) {
            measured[i] = step.stages[i].R + eta;
        }
        o = observer_step_so3(config.observer_method, o, measured, sys.torque, t, sys.gains, sys.inertia, dt);
        p = step.next;
    }
    return traj;
}

// ---------------------------------------------------------------------------
// SO(2)

PlantStepSO2 plant_step_so2(PlantMethod method, const PlantStateSO2& s, const TorqueProfile& torque, double t,
                            double inertia, double dt) {
    const Mat2& r0 = s.R.matrix();
    const double a0 = torque.at(t).z() / inertia;
    const double ah = torque.at(t + 0.5 * dt).z() / inertia;
    const double a1 = torque.at(t + dt).z() / inertia;

    PlantStepSO2 out;
    switch (method) {
        case PlantMethod::lie_midpoint: {
            const double w_mid = s.omega + 0.5 * dt * a0;
            const Mat2 r_mid = rot2(0.5 * dt * w_mid).matrix() * r0;
            out.next.R = RotationMatrix2::unchecked(rot2(dt * w_mid).matrix() * r0);
            out.next.omega = s.omega + dt * ah;
            const double w_half = s.omega + 0.5 * dt * ah;
            out.stages = {{{r0, s.omega}, {r_mid, w_half}, {r_mid, w_half}, {out.next.R.matrix(), out.next.omega}}};
            break;
        }
        case PlantMethod::lie_rk4: {
            const double w1 = s.omega;
            const double w2 = s.omega + 0.5 * dt * a0;
            const double w3 = s.omega + 0.5 * dt * ah;
            const double w4 = s.omega + dt * ah;
            const Mat2 y2 = rot2(0.5 * dt * w1).matrix() * r0;
            const Mat2 y3 = rot2(0.5 * dt * w2).matrix() * r0;
            const Mat2 y4 = rot2(dt * w3).matrix() * r0;
            const double sig = (dt / 6.0) * (w1 + 2.0 * w2 + 2.0 * w3 + w4);
            out.next.R = RotationMatrix2::unchecked(rot2(sig).matrix() * r0);
            out.next.omega = s.omega + (dt / 6.0) * (a0 + 4.0 * ah + a1);
            out.stages = {{{r0, w1}, {y2, w2}, {y3, w3}, {y4, w4}}};
            break;
        }
        case PlantMethod::ambient_rk4_with_monitor: {
            const Mat2 g = so2_generator();
            const Mat2 k1 = s.omega * g * r0;
            const double w2 = s.omega + 0.5 * dt * a0;
            const Mat2 y2 = r0 + 0.5 * dt * k1;
            const Mat2 k2 = w2 * g * y2;
            const double w3 = s.omega + 0.5 * dt * ah;
            const Mat2 y3 = r0 + 0.5 * dt * k2;
            const Mat2 k3 = w3 * g * y3;
            const double w4 = s.omega + dt * ah;
            const Mat2 y4 = r0 + dt * k3;
            const Mat2 k4 = w4 * g * y4;
            Mat2 r1 = r0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (orthonormality_error(r1) > kTolOrth) {
                // A 2x2 matrix of the form [[c, -s], [s, c]] is normalized by
                // its column norm; ambient RK4 preserves that structure.
                r1 /= r1.col(0).norm();
            }
            out.next.R = RotationMatrix2::unchecked(r1);
            out.next.omega = s.omega + (dt / 6.0) * (a0 + 4.0 * ah + a1);
            out.stages = {{{r0, s.omega}, {y2, w2}, {y3, w3}, {y4, w4}}};
            break;
        }
    }
    if (!out.next.R.matrix().allFinite() || !std::isfinite(out.next.omega)) {
        throw NonFinite(t, "plant state");
    }
    return out;
}

PlantStateSO2 lie_midpoint_step_so2(const PlantStateSO2& s, const TorqueProfile& torque, double t, double inertia,
                                    double dt) {
    return plant_step_so2(PlantMethod::lie_midpoint, s, torque, t, inertia, dt).next;
}

ObserverStateSO2 observer_step_so2(ObserverMethod method, const ObserverStateSO2& o,
                                   const std::array<Mat2, 4>& measured, const GainsSO2& gains, double dt, double t) {
    auto rhs = [&](int stage, const Flat5& x) -> Flat5 {
        const ObserverStateSO2 os{unpack_mat(x), x(4)};
        const auto d = so2_observer_rhs(os, measured[stage], gains);
        return pack(d.dRhat, d.domega_hat);
    };
    const Flat5 x0 = pack(o.Rhat, o.omega_hat);
    Flat5 x1;
    if (method == ObserverMethod::rk4) {
        x1 = rk4_step_staged(rhs, x0, dt, t);
    } else {
        x1 = x0 + dt * rhs(0, x0);
        if (!x1.allFinite()) {
            throw NonFinite(t, "Euler step produced NaN/Inf");
        }
    }
    return {unpack_mat(x1), x1(4)};
}

namespace {

Mat2 sensor_matrix(const Mat2& r, bool wrapped) {
    if (!wrapped) {
        return r;
    }
    return wrap_angle_to_so2(so2_to_wrapped_angle(RotationMatrix2::unchecked(r))).matrix();
}

SampleSO2 record_so2(double t, const SystemSO2& sys, const PlantStateSO2& p, const ObserverStateSO2& o) {
    SampleSO2 s;
    s.t = t;
    s.plant = p;
    s.observer = o;
    s.theta = so2_to_wrapped_angle(p.R);
    const auto proj = project_so2(o.Rhat);
    if (!is_degenerate(proj)) {
        s.theta_hat = so2_to_wrapped_angle(std::get<ProjectionUnique>(proj).R);
    }
    const Mat2 rtilde = p.R.matrix() - o.Rhat;
    const double wtilde = p.omega - o.omega_hat;
    s.V = so2_lyapunov_V(rtilde, wtilde, sys.gains.kappa);
    s.Vdot = so2_lyapunov_Vdot(rtilde, sys.gains);
    s.dist = so2_distance_to_attractor(rtilde, wtilde);
    return s;
}

}  // namespace

Trajectory co_simulate_so2(const SystemSO2& sys, const PlantStateSO2& plant0, const ObserverStateSO2& obs0,
                           NoiseSource& noise, const IntegratorConfig& config, double horizon) {
    config.validate();
    const double dt = config.dt;
    const long n = step_count(horizon, dt);

    Trajectory traj;
    traj.mode = Mode::so2;
    traj.dt = dt;
    traj.so2.reserve(static_cast<std::size_t>(n) + 1);

    PlantStateSO2 p = plant0;
    ObserverStateSO2 o = obs0;
    for (long k = 0;; ++k) {
        const double t = static_cast<double>(k) * dt;
        const Mat2 eta = noise.sample<2>(t);
        traj.so2.push_back(record_so2(t, sys, p, o));
        if (k == n) {
            break;
        }
        const PlantStepSO2 step = plant_step_so2(config.plant_method, p, sys.torque, t, sys.inertia, dt);
        std::array<Mat2, 4> measured;
        for (std::size_t i = 0; i < 4; ++i) {
            measured[i] = sensor_matrix(step.stages[i].R, sys.wrapped_measurements) + eta;
        }
        o = observer_step_so2(config.observer_method, o, measured, sys.gains, dt, t);
        p = step.next;
    }
    return traj;
}

}  // namespace mfobs
