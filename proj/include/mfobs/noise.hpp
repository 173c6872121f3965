#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "mfobs/linalg.hpp"

namespace mfobs {

/// Additive measurement noise eta(t) applied to every entry of the measured
/// rotation matrix.
struct NoiseSpec {
    enum class Kind { none, gaussian_per_step, sinusoid };

    Kind kind = Kind::none;
    double power = 0.0;      // gaussian_per_step: flat spectral density
    double amplitude = 0.0;  // sinusoid
    double frequency = 0.0;  // sinusoid, rad/s

    static NoiseSpec none() { return {}; }
    static NoiseSpec gaussian(double power) { return {Kind::gaussian_per_step, power, 0.0, 0.0}; }
    static NoiseSpec sinusoid(double amplitude, double frequency) {
        return {Kind::sinusoid, 0.0, amplitude, frequency};
    }

    /// Throws ValidationError("noise.power" / "noise.amplitude" / "noise.frequency", ...).
    void validate() const;

    bool operator==(const NoiseSpec&) const = default;
};

/// Standard normal deviates from mt19937_64. Uniforms take the top 53 bits
/// of each output; normals use the Box-Muller transform and are consumed in
/// pairs (cos branch first). The sequence depends only on the seed and the
/// platform's libm.
class NormalSource {
public:
    explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double operator()();

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// Zero-order-hold sampler of the noise process: one draw per integration
/// step, held over the step. Gaussian entries have standard deviation
/// sqrt(power / dt) and are drawn in row-major order.
class NoiseSource {
public:
    NoiseSource(const NoiseSpec& spec, std::uint64_t seed, double dt)
        : spec_(spec), normals_(seed), sigma_(std::sqrt(spec.power / dt)) {}

    template <int N>
    Eigen::Matrix<double, N, N> sample(double t) {
        using M = Eigen::Matrix<double, N, N>;
        switch (spec_.kind) {
            case NoiseSpec::Kind::none:
                return M::Zero();
            case NoiseSpec::Kind::sinusoid:
                return M::Constant(spec_.amplitude * std::sin(spec_.frequency * t));
            case NoiseSpec::Kind::gaussian_per_step: {
                M m;
                for (int i = 0; i < N; ++i) {
                    for (int j = 0; j < N; ++j) {
                        m(i, j) = sigma_ * normals_();
                    }
                }
                return m;
            }
        }
        return M::Zero();
    }

private:
    NoiseSpec spec_;
    NormalSource normals_;
    double sigma_;
};

}  // namespace mfobs
