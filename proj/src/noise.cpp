#include "mfobs/noise.hpp"

#include <cmath>
#include <numbers>

#include "mfobs/errors.hpp"

namespace mfobs {

void NoiseSpec::validate() const {
    if (!(power >= 0.0) || !std::isfinite(power)) {
        throw ValidationError("noise.power", "must be finite and non-negative");
    }
    if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
        throw ValidationError("noise.amplitude", "must be finite and non-negative");
    }
    if (!std::isfinite(frequency)) {
        throw ValidationError("noise.frequency", "must be finite");
    }
}

double NormalSource::operator()() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

}  // namespace mfobs
