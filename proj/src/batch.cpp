#include "mfobs/batch.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

namespace mfobs {

namespace {

void rethrow_first(const std::vector<std::exception_ptr>& errors) {
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
}

double projection_excess(const Mat2& h, int grid, bool& degenerate) {
    const auto p = project_so2(h);
    degenerate = is_degenerate(p);
    if (degenerate) {
        return -std::numeric_limits<double>::infinity();
    }
    const double closed = (std::get<ProjectionUnique>(p).R.matrix() - h).squaredNorm();
    return closed - grid_min_objective(h, grid);
}

ProjectionOracleResult reduce_excess(const std::vector<double>& excess) {
    ProjectionOracleResult r;
    r.max_excess = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < excess.size(); ++i) {
        if (std::isinf(excess[i]) && excess[i] < 0.0) {
            ++r.degenerate_count;
        } else if (excess[i] > r.max_excess) {
            r.max_excess = excess[i];
            r.worst_index = i;
        }
    }
    return r;
}

}  // namespace

std::vector<Metrics> run_batch(std::span<const Scenario> scenarios) {
    const auto n = static_cast<long>(scenarios.size());
    std::vector<Metrics> out(scenarios.size());
    std::vector<std::exception_ptr> errors(scenarios.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = run(scenarios[i]).metrics;
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    rethrow_first(errors);
    return out;
}

std::vector<Metrics> run_batch_serial(std::span<const Scenario> scenarios) {
    std::vector<Metrics> out;
    out.reserve(scenarios.size());
    for (const auto& s : scenarios) {
        out.push_back(run(s).metrics);
    }
    return out;
}

LyapunovStats lyapunov_stats(const Trajectory& traj, double vdot_floor) {
    LyapunovStats st;
    const std::size_t n = traj.size();
    if (n < 2) {
        return st;
    }
    double vdot_max = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        vdot_max = std::max(vdot_max, std::abs(traj.Vdot(i)));
    }
    st.max_rel_increase = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double v0 = traj.V(k);
        const double v1 = traj.V(k + 1);
        st.max_rel_increase = std::max(st.max_rel_increase, (v1 - v0) / (1.0 + v0));
        const double slope = 0.5 * (traj.Vdot(k) + traj.Vdot(k + 1));
        if (std::abs(slope) < vdot_floor * vdot_max || slope == 0.0) {
            continue;
        }
        const double fd = (v1 - v0) / (traj.t(k + 1) - traj.t(k));
        st.max_fd_rel_error = std::max(st.max_fd_rel_error, std::abs(fd - slope) / std::abs(slope));
        ++st.fd_samples;
    }
    return st;
}

std::vector<LyapunovStats> lyapunov_batch(std::span<const Scenario> scenarios, double vdot_floor) {
    const auto n = static_cast<long>(scenarios.size());
    std::vector<LyapunovStats> out(scenarios.size());
    std::vector<std::exception_ptr> errors(scenarios.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < n; ++i) {
        try {
            out[i] = lyapunov_stats(run(scenarios[i]).trajectory, vdot_floor);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    rethrow_first(errors);
    return out;
}

std::vector<LyapunovStats> lyapunov_batch_serial(std::span<const Scenario> scenarios, double vdot_floor) {
    std::vector<LyapunovStats> out;
    out.reserve(scenarios.size());
    for (const auto& s : scenarios) {
        out.push_back(lyapunov_stats(run(s).trajectory, vdot_floor));
    }
    return out;
}

double grid_min_objective(const Mat2& h, int grid) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < grid; ++j) {
        const double theta = -std::numbers::pi + 2.0 * std::numbers::pi * j / grid;
        best = std::min(best, (rot2(theta).matrix() - h).squaredNorm());
    }
    return best;
}

ProjectionOracleResult projection_oracle(std::span<const Mat2> inputs, int grid) {
    const auto n = static_cast<long>(inputs.size());
    std::vector<double> excess(inputs.size());
#pragma omp parallel for schedule(static)
    for (long i = 0; i < n; ++i) {
        bool degenerate = false;
        excess[i] = projection_excess(inputs[i], grid, degenerate);
    }
    return reduce_excess(excess);
}

ProjectionOracleResult projection_oracle_serial(std::span<const Mat2> inputs, int grid) {
    std::vector<double> excess(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        bool degenerate = false;
        excess[i] = projection_excess(inputs[i], grid, degenerate);
    }
    return reduce_excess(excess);
}

}  // namespace mfobs
