#include "mfobs/torque.hpp"

#include <cmath>

#include "mfobs/errors.hpp"

namespace mfobs {

TorqueProfile TorqueProfile::zero() {
    return {};
}

TorqueProfile TorqueProfile::constant(const Vec3& c, std::optional<double> k_u_radius,
                                      std::optional<double> rate_bound) {
    TorqueProfile p;
    p.kind_ = Kind::constant;
    p.value_ = c;
    p.k_u_radius_ = k_u_radius.value_or(c.norm());
    p.rate_bound_ = rate_bound.value_or(0.0);
    p.check_bounds();
    return p;
}

TorqueProfile TorqueProfile::sinusoid(const Vec3& amplitude, double frequency, double phase,
                                      std::optional<double> k_u_radius, std::optional<double> rate_bound) {
    TorqueProfile p;
    p.kind_ = Kind::sinusoid;
    p.value_ = amplitude;
    p.frequency_ = frequency;
    p.phase_ = phase;
    p.k_u_radius_ = k_u_radius.value_or(amplitude.norm());
    p.rate_bound_ = rate_bound.value_or(amplitude.norm() * std::abs(frequency));
    p.check_bounds();
    return p;
}

Vec3 TorqueProfile::at(double t) const {
    switch (kind_) {
        case Kind::zero:
            return Vec3::Zero();
        case Kind::constant:
            return value_;
        case Kind::sinusoid:
            return value_ * std::sin(frequency_ * t + phase_);
    }
    return Vec3::Zero();
}

void TorqueProfile::check_bounds() const {
    if (!value_.allFinite() || !std::isfinite(frequency_) || !std::isfinite(phase_)) {
        throw ValidationError("torque", "non-finite parameters");
    }
    if (!(k_u_radius_ >= 0.0) || !(rate_bound_ >= 0.0)) {
        throw ValidationError("torque", "bounds must be non-negative");
    }
    // Relative slack so that defaulted (tight) bounds always validate.
    const double slack = 1.0 + 1e-12;
    if (value_.norm() > k_u_radius_ * slack) {
        throw ValidationError("torque.K_u_radius", "signal magnitude exceeds the declared bound");
    }
    const double rate = kind_ == Kind::sinusoid ? value_.norm() * std::abs(frequency_) : 0.0;
    if (rate > rate_bound_ * slack) {
        throw ValidationError("torque.M", "signal rate exceeds the declared bound");
    }
}

}  // namespace mfobs
