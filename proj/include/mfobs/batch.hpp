#pragma once

// Data-parallel kernels over independent scenarios or oracle inputs.
// Each OpenMP kernel has a *_serial twin that is the reference
// implementation; both return identical results in input order.

#include <cstddef>
#include <span>
#include <vector>

#include "mfobs/harness.hpp"

namespace mfobs {

/// Runs every scenario and returns its metrics. If any run throws, the
/// exception of the lowest-index failing scenario is rethrown.
std::vector<Metrics> run_batch(std::span<const Scenario> scenarios);
std::vector<Metrics> run_batch_serial(std::span<const Scenario> scenarios);

/// Per-trajectory Lyapunov statistics used by the decrease checks.
struct LyapunovStats {
    /// max_k (V_{k+1} - V_k) / (1 + V_k).
    double max_rel_increase = 0.0;
    /// max_k |(V_{k+1} - V_k)/dt - (Vdot_k + Vdot_{k+1})/2| / |(Vdot_k + Vdot_{k+1})/2|
    /// over steps where |Vdot| is at least `vdot_floor` times its maximum.
    double max_fd_rel_error = 0.0;
    std::size_t fd_samples = 0;
};

LyapunovStats lyapunov_stats(const Trajectory& traj, double vdot_floor);

std::vector<LyapunovStats> lyapunov_batch(std::span<const Scenario> scenarios, double vdot_floor);
std::vector<LyapunovStats> lyapunov_batch_serial(std::span<const Scenario> scenarios, double vdot_floor);

/// min over grid angles theta_j = -pi + 2 pi j / grid of ||rot2(theta_j) - H||_F^2.
double grid_min_objective(const Mat2& h, int grid);

struct ProjectionOracleResult {
    /// max_i (||Pi(H_i) - H_i||_F^2 - grid minimum) over non-degenerate inputs.
    double max_excess = 0.0;
    std::size_t worst_index = 0;
    std::size_t degenerate_count = 0;
};

ProjectionOracleResult projection_oracle(std::span<const Mat2> inputs, int grid);
ProjectionOracleResult projection_oracle_serial(std::span<const Mat2> inputs, int grid);

}  // namespace mfobs
