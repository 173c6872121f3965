#pragma once

// Scenario description, preset demonstration scenarios,
// metrics and CSV persistence.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mfobs/integrate.hpp"
#include "mfobs/noise.hpp"
#include "mfobs/torque.hpp"
#include "mfobs/trajectory.hpp"

namespace mfobs {

struct ScenarioSO3 {
    Mat3 J0 = Mat3::Identity();
    Mat3 R0 = Mat3::Identity();
    Vec3 q0 = Vec3::Zero();
    Mat3 Rhat0 = Mat3::Identity();
    Vec3 qhat0 = Vec3::Zero();
    Mat3 K = Mat3::Identity();
    CorrectionMap gamma = CorrectionMap::scalar(1.0);

    bool operator==(const ScenarioSO3&) const = default;
};

struct ScenarioSO2 {
    double J = 1.0;
    double theta0 = 0.0;  // wrapped, (-pi, pi]
    double omega0 = 0.0;
    Mat2 Rhat0 = Mat2::Identity();
    double omega_hat0 = 0.0;
    double gamma = 1.0;
    double kappa = 1.0;
    bool wrapped_measurements = true;

    bool operator==(const ScenarioSO2&) const = default;
};

struct MetricsConfig {
    /// Convergence threshold as a fraction of ||omega(0) - omega_hat(0)||.
    double convergence_fraction = 0.02;
    /// Length of the final window for steady-state statistics, seconds.
    double steady_window = 2.0;

    bool operator==(const MetricsConfig&) const = default;
};

struct Scenario {
    std::string name;
    Mode mode = Mode::so3;
    ScenarioSO3 so3;
    ScenarioSO2 so2;
    TorqueProfile torque;
    NoiseSpec noise;
    IntegratorConfig integrator;
    double horizon = 1.0;
    std::uint64_t seed = 0;
    MetricsConfig metrics;

    bool operator==(const Scenario&) const = default;
};

/// Throws ValidationError naming the first offending field by its config path.
void validate(const Scenario& s);

/// Known preset names, in a fixed order.
const std::vector<std::string>& preset_names();

/// Throws UnknownPreset.
Scenario preset(std::string_view name);

struct Metrics {
    /// First time after which ||omega - omega_hat|| stays at or below the
    /// threshold; empty when the last sample is above it.
    std::optional<double> convergence_time;
    double convergence_threshold = 0.0;
    /// RMS and supremum of ||omega - omega_hat|| over the final window.
    double steady_state_rms = 0.0;
    double steady_state_sup = 0.0;
    /// Largest positive one-step increase of V (0 if V is nonincreasing).
    double max_V_increase = 0.0;
    double final_d = 0.0;
};

/// The threshold is max(fraction * ||e(0)||, 1e-9) so that an observer
/// started on the attractor reports convergence at t = 0.
Metrics compute_metrics(const Trajectory& traj, const MetricsConfig& cfg);

/// Threshold-only variant of the convergence time.
std::optional<double> convergence_time(const Trajectory& traj, double threshold);

struct RunResult {
    Trajectory trajectory;
    Metrics metrics;
};

/// Validates and simulates. Propagates NonFinite.
RunResult run(const Scenario& s);

/// Column names of the CSV written for a trajectory of the given mode.
std::vector<std::string> csv_columns(Mode mode);

/// Header row then one row per sample; numbers use 17 significant digits.
/// Throws IoError.
void write_csv(const Trajectory& traj, const std::filesystem::path& path);
void write_csv(const Trajectory& traj, std::ostream& out);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Parses a numeric CSV with a header row. Throws IoError.
CsvTable read_csv(const std::filesystem::path& path);

/// Sets a scalar scenario parameter by dotted path. Throws UnknownParameter.
void set_parameter(Scenario& s, std::string_view path, double value);

/// Parameter paths accepted by set_parameter().
const std::vector<std::string>& parameter_names();

struct SweepRow {
    double value;
    Metrics metrics;
};

/// One run per value with every other field (including the seed) fixed.
/// Rows are evaluated in parallel and returned in input order.
std::vector<SweepRow> sweep(const Scenario& base, std::string_view parameter, const std::vector<double>& values);

/// Writes a sweep table: value then the metric columns. Throws IoError.
void write_sweep_csv(const std::vector<SweepRow>& rows, std::string_view parameter,
                     const std::filesystem::path& path);

}  // namespace mfobs
