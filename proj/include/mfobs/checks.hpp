#pragma once

// Randomized property suites: algebraic identities of the rotation
// operators, Lyapunov decrease along simulated trajectories, conservation
// laws of the torque-free plant and optimality of the SO(2) projection.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mfobs/harness.hpp"
#include "mfobs/integrate.hpp"

namespace mfobs {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;  // measured statistic, or the counterexample on failure
};

/// trace([w]_x Theta) == w^T vec(Theta^T - Theta) on random (w, Theta).
/// Returns the largest absolute discrepancy.
double property1_max_error(std::uint64_t seed, int trials);

/// ||[w]_x Theta||_F > 0 for nonsingular Theta and w != 0, and [0]_x Theta == 0.
/// Returns the number of violating trials.
int property2_violations(std::uint64_t seed, int trials);

/// Random 2x2 matrices with entries in [-2, 2], excluding the degenerate set.
std::vector<Mat2> random_nondegenerate_mat2(std::uint64_t seed, int count);

/// Random symmetric trace-free 2x2 matrices.
std::vector<Mat2> random_degenerate_mat2(std::uint64_t seed, int count);

/// Noise-free SO(3) scenarios with random inertia, attitude, momenta, gains
/// and observer initial conditions away from the attractor.
std::vector<Scenario> random_so3_scenarios(std::uint64_t seed, int count, double dt, double horizon);

/// Max relative change of kinetic energy and max |q(t) - q(0)| of a
/// torque-free plant.
struct ConservationStats {
    double max_energy_rel_change = 0.0;
    double max_momentum_change = 0.0;
};
ConservationStats torque_free_conservation(PlantMethod method, double dt, double horizon);

/// ||R^T R - I||_F after `steps` torque-free steps.
double orthonormality_drift(PlantMethod method, double dt, long steps);

const std::vector<std::string>& suite_names();

/// Runs a named suite ("linalg", "lyapunov", "projection", "conservation"
/// or "all"). Throws UnknownParameter for any other name.
std::vector<CheckResult> run_suite(std::string_view suite, std::uint64_t seed);

}  // namespace mfobs
