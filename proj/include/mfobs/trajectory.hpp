#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mfobs/dynamics_so2.hpp"
#include "mfobs/dynamics_so3.hpp"

namespace mfobs {

enum class Mode { so3, so2 };

struct SampleSO3 {
    double t = 0.0;
    PlantStateSO3 plant;
    ObserverStateSO3 observer;
    Vec3 omega = Vec3::Zero();
    Vec3 omega_hat = Vec3::Zero();
    double V = 0.0;
    double Vdot = 0.0;
    double dist = 0.0;  // distance to the attractor

    Vec3 speed_error() const { return omega - omega_hat; }
};

struct SampleSO2 {
    double t = 0.0;
    PlantStateSO2 plant;
    ObserverStateSO2 observer;
    double theta = 0.0;                // wrapped plant angle
    std::optional<double> theta_hat;   // empty when the projection is degenerate
    double V = 0.0;
    double Vdot = 0.0;
    double dist = 0.0;

    double speed_error() const { return plant.omega - observer.omega_hat; }
};

/// Uniformly sampled record of a closed-loop run. Exactly one of the sample
/// vectors is populated, according to `mode`.
struct Trajectory {
    Mode mode = Mode::so3;
    double dt = 0.0;
    std::vector<SampleSO3> so3;
    std::vector<SampleSO2> so2;

    std::size_t size() const { return mode == Mode::so3 ? so3.size() : so2.size(); }
    bool empty() const { return size() == 0; }
    double t(std::size_t i) const { return mode == Mode::so3 ? so3[i].t : so2[i].t; }
    double V(std::size_t i) const { return mode == Mode::so3 ? so3[i].V : so2[i].V; }
    double Vdot(std::size_t i) const { return mode == Mode::so3 ? so3[i].Vdot : so2[i].Vdot; }
    double dist(std::size_t i) const { return mode == Mode::so3 ? so3[i].dist : so2[i].dist; }

    /// ||omega - omega_hat|| at sample i.
    double speed_error_norm(std::size_t i) const {
        return mode == Mode::so3 ? so3[i].speed_error().norm() : std::abs(so2[i].speed_error());
    }
};

}  // namespace mfobs
