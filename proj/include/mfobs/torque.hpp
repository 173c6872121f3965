#pragma once

#include <optional>

#include "mfobs/linalg.hpp"

namespace mfobs {

/// Deterministic input torque u(t) (N m, inertial frame) with declared bounds
/// ||u|| <= k_u_radius and ||du/dt|| <= rate_bound. In SO(2) mode only the
/// third component (the spin axis) is used.
class TorqueProfile {
public:
    enum class Kind { zero, constant, sinusoid };

    TorqueProfile() = default;

    static TorqueProfile zero();

    /// u(t) = c. Bounds default to the tightest admissible values.
    static TorqueProfile constant(const Vec3& c, std::optional<double> k_u_radius = {},
                                  std::optional<double> rate_bound = {});

    /// u(t) = amplitude sin(frequency t + phase).
    static TorqueProfile sinusoid(const Vec3& amplitude, double frequency, double phase,
                                  std::optional<double> k_u_radius = {},
                                  std::optional<double> rate_bound = {});

    Vec3 at(double t) const;

    Kind kind() const noexcept { return kind_; }
    const Vec3& value() const noexcept { return value_; }  // constant value or sinusoid amplitude
    double frequency() const noexcept { return frequency_; }
    double phase() const noexcept { return phase_; }
    double k_u_radius() const noexcept { return k_u_radius_; }
    double rate_bound() const noexcept { return rate_bound_; }

    bool operator==(const TorqueProfile&) const = default;

private:
    void check_bounds() const;

    Kind kind_ = Kind::zero;
    Vec3 value_ = Vec3::Zero();
    double frequency_ = 0.0;
    double phase_ = 0.0;
    double k_u_radius_ = 0.0;
    double rate_bound_ = 0.0;
};

}  // namespace mfobs
