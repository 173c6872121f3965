#pragma once

// Fixed-step integration of the plant/observer interconnection. The plant
// rotation is advanced with exponential-map steps so it stays on the group;
// the observer lives in the ambient matrix space and uses classical RK4.

#include <array>
#include <string>
#include <string_view>

#include "mfobs/dynamics_so2.hpp"
#include "mfobs/dynamics_so3.hpp"
#include "mfobs/errors.hpp"
#include "mfobs/noise.hpp"
#include "mfobs/torque.hpp"
#include "mfobs/trajectory.hpp"

namespace mfobs {

enum class PlantMethod {
    lie_midpoint,              // exponential-map explicit midpoint, order 2
    lie_rk4,                   // Runge-Kutta-Munthe-Kaas with the RK4 tableau, order 4
    ambient_rk4_with_monitor,  // RK4 on the 3x3 entries, re-orthonormalized when drift exceeds kTolOrth
};

enum class ObserverMethod { rk4, euler };

std::string_view to_string(PlantMethod m);
std::string_view to_string(ObserverMethod m);
PlantMethod plant_method_from_string(std::string_view s);
ObserverMethod observer_method_from_string(std::string_view s);

struct IntegratorConfig {
    double dt = 1e-3;
    PlantMethod plant_method = PlantMethod::lie_rk4;
    ObserverMethod observer_method = ObserverMethod::rk4;

    /// Throws ValidationError("integrator.dt", ...) unless 0 < dt <= 0.1.
    void validate() const;

    bool operator==(const IntegratorConfig&) const = default;
};

/// Classical RK4 nodes.
inline constexpr std::array<double, 4> kRk4Nodes{0.0, 0.5, 0.5, 1.0};

/// One classical RK4 step where the vector field may depend on the stage
/// index (used when an exogenous signal is supplied per stage). `rhs(i, x)`
/// is evaluated at node kRk4Nodes[i]. Throws NonFinite(t) if a stage or the
/// result is not finite.
template <typename X, typename Rhs>
X rk4_step_staged(const Rhs& rhs, const X& x, double dt, double t) {
    auto check = [t](const X& v) {
        if (!v.allFinite()) {
            throw NonFinite(t, "RK4 stage produced NaN/Inf");
        }
    };
    const X k1 = rhs(0, x);
    check(k1);
    const X k2 = rhs(1, X(x + 0.5 * dt * k1));
    check(k2);
    const X k3 = rhs(2, X(x + 0.5 * dt * k2));
    check(k3);
    const X k4 = rhs(3, X(x + dt * k3));
    check(k4);
    X out = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    check(out);
    return out;
}

/// Classical RK4 step for x' = rhs(t, x).
template <typename X, typename Rhs>
X rk4_step(const Rhs& rhs, double t, const X& x, double dt) {
    return rk4_step_staged([&](int i, const X& xi) { return X(rhs(t + kRk4Nodes[i] * dt, xi)); }, x, dt, t);
}

// ---------------------------------------------------------------------------
// SO(3)

/// Plant configuration at one RK4 node of a step. Under the ambient method
/// R is only approximately orthonormal.
struct PlantStageSO3 {
    Mat3 R;
    Vec3 q;
};

struct PlantStepSO3 {
    std::array<PlantStageSO3, 4> stages;  // at kRk4Nodes
    PlantStateSO3 next;
};

PlantStepSO3 plant_step_so3(PlantMethod method, const PlantStateSO3& s, const TorqueProfile& torque, double t,
                            const InertiaSO3& inertia, double dt);

/// R+ = exp(dt w_mid) R with w_mid taken at an explicit Euler half step;
/// q+ = q + dt u(t + dt/2).
PlantStateSO3 lie_midpoint_step_so3(const PlantStateSO3& s, const TorqueProfile& torque, double t,
                                    const InertiaSO3& inertia, double dt);

/// Fourth-order Runge-Kutta-Munthe-Kaas step.
PlantStateSO3 lie_rk4_step_so3(const PlantStateSO3& s, const TorqueProfile& torque, double t,
                               const InertiaSO3& inertia, double dt);

/// Advances the observer one step. `measured[i]` is the measurement used at
/// RK4 node i (the Euler method uses only node 0).
ObserverStateSO3 observer_step_so3(ObserverMethod method, const ObserverStateSO3& o,
                                   const std::array<Mat3, 4>& measured, const TorqueProfile& torque, double t,
                                   const GainsSO3& gains, const InertiaSO3& inertia, double dt);

struct SystemSO3 {
    InertiaSO3 inertia;
    GainsSO3 gains;
    TorqueProfile torque;
};

/// Synchronous lockstep simulation over [0, horizon]. At step k the observer
/// sees R + eta_k at every stage, with eta_k drawn once per step. Records
/// floor(horizon / dt + 0.5) + 1 samples. Throws NonFinite with the failing
/// step time.
Trajectory co_simulate_so3(const SystemSO3& sys, const PlantStateSO3& plant0, const ObserverStateSO3& obs0,
                           NoiseSource& noise, const IntegratorConfig& config, double horizon);

// ---------------------------------------------------------------------------
// SO(2)

struct PlantStageSO2 {
    Mat2 R;
    double omega;
};

struct PlantStepSO2 {
    std::array<PlantStageSO2, 4> stages;
    PlantStateSO2 next;
};

/// Spin-axis torque is the third component of the profile.
PlantStepSO2 plant_step_so2(PlantMethod method, const PlantStateSO2& s, const TorqueProfile& torque, double t,
                            double inertia, double dt);

/// R+ = rot2(dt w_mid) R.
PlantStateSO2 lie_midpoint_step_so2(const PlantStateSO2& s, const TorqueProfile& torque, double t, double inertia,
                                    double dt);

ObserverStateSO2 observer_step_so2(ObserverMethod method, const ObserverStateSO2& o,
                                   const std::array<Mat2, 4>& measured, const GainsSO2& gains, double dt, double t);

struct SystemSO2 {
    double inertia;
    GainsSO2 gains;
    TorqueProfile torque;
    /// Feed the observer rot2(wrapped angle) instead of the plant matrix.
    bool wrapped_measurements = true;
};

Trajectory co_simulate_so2(const SystemSO2& sys, const PlantStateSO2& plant0, const ObserverStateSO2& obs0,
                           NoiseSource& noise, const IntegratorConfig& config, double horizon);

/// Number of steps for a horizon: round(horizon / dt).
long step_count(double horizon, double dt);

}  // namespace mfobs
