#include "mfobs/harness.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "mfobs/batch.hpp"
#include "mfobs/errors.hpp"

namespace mfobs {

// ---------------------------------------------------------------------------
// Validation

void validate(const Scenario& s) {
    auto finite = [](const auto& m, const char* field) {
        if (!m.allFinite()) {
            throw ValidationError(field, "non-finite entries");
        }
    };
    auto positive = [](double v, const char* field) {
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw ValidationError(field, "must be finite and positive");
        }
    };

    if (s.mode == Mode::so3) {
        (void)InertiaSO3(s.so3.J0);
        try {
            (void)RotationMatrix3(s.so3.R0);
        } catch (const ValidationError& e) {
            throw ValidationError("plant.R0", e.what());
        }
        finite(s.so3.q0, "plant.q0");
        finite(s.so3.Rhat0, "observer.Rhat0");
        finite(s.so3.qhat0, "observer.qhat0");
        (void)GainsSO3(s.so3.K, s.so3.gamma);
    } else {
        positive(s.so2.J, "inertia.J");
        if (!(s.so2.theta0 > -std::numbers::pi && s.so2.theta0 <= std::numbers::pi)) {
            throw ValidationError("plant.theta0", "must lie in (-pi, pi]");
        }
        if (!std::isfinite(s.so2.omega0)) {
            throw ValidationError("plant.omega0", "must be finite");
        }
        finite(s.so2.Rhat0, "observer.Rhat0");
        if (!std::isfinite(s.so2.omega_hat0)) {
            throw ValidationError("observer.omega_hat0", "must be finite");
        }
        (void)GainsSO2(s.so2.gamma, s.so2.kappa);
    }
    s.noise.validate();
    s.integrator.validate();
    positive(s.horizon, "horizon");
    const double f = s.metrics.convergence_fraction;
    if (!(f > 0.0 && f <= 1.0)) {
        throw ValidationError("metrics.convergence_fraction", "must lie in (0, 1]");
    }
    positive(s.metrics.steady_window, "metrics.steady_window");
}

// ---------------------------------------------------------------------------
// Presets

namespace {

Scenario wu_so3_base(std::string name, double k_over_j0, double gamma) {
    Scenario s;
    s.name = std::move(name);
    s.mode = Mode::so3;
    s.so3.J0 = Vec3(5.0, 1.0, 2.0).asDiagonal();
    s.so3.R0 = so3_exp(std::numbers::pi / 4.0 * Vec3::UnitX()).matrix();
    const Vec3 omega0(1.0, -1.5, 2.5);
    s.so3.q0 = s.so3.R0 * s.so3.J0 * s.so3.R0.transpose() * omega0;
    s.so3.Rhat0 = s.so3.R0;
    s.so3.qhat0 = Vec3::Zero();
    s.so3.K = k_over_j0 * s.so3.J0;
    s.so3.gamma = CorrectionMap::scalar(gamma);
    s.torque = TorqueProfile::zero();
    s.noise = NoiseSpec::none();
    s.integrator = IntegratorConfig{};
    s.horizon = 5.0;
    s.seed = 1;
    s.metrics = MetricsConfig{0.02, 2.0};
    return s;
}

Scenario so2_base(std::string name) {
    Scenario s;
    s.name = std::move(name);
    s.mode = Mode::so2;
    s.so2.J = 1.0;
    s.so2.theta0 = std::numbers::pi / 2.0;
    s.so2.omega0 = 10.0;
    s.so2.Rhat0 = Mat2::Identity();
    s.so2.omega_hat0 = 0.0;
    s.so2.gamma = 40.0;
    s.so2.kappa = 200.0;
    s.so2.wrapped_measurements = true;
    s.torque = TorqueProfile::zero();
    s.noise = NoiseSpec::none();
    s.integrator = IntegratorConfig{};
    s.horizon = 5.0;
    s.seed = 1;
    s.metrics = MetricsConfig{0.02, 1.0};
    return s;
}

}  // namespace

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"wu-so3-K1",  "wu-so3-K2",    "wu-so3-K3", "wu-so3-K4a",
                                                "wu-so3-K4b", "wu-so3-noisy", "so2-demo",  "so2-noisy"};
    return names;
}

Scenario preset(std::string_view name) {
    if (name == "wu-so3-K1") {
        return wu_so3_base(std::string(name), 100.0, 20.0);
    }
    if (name == "wu-so3-K2") {
        return wu_so3_base(std::string(name), 10.0, 20.0);
    }
    if (name == "wu-so3-K3") {
        return wu_so3_base(std::string(name), 30.0, 20.0);
    }
    if (name == "wu-so3-K4a") {
        Scenario s = wu_so3_base(std::string(name), 1.0, 20.0);
        s.so3.K = 5.0 * Mat3::Identity();
        return s;
    }
    if (name == "wu-so3-K4b") {
        return wu_so3_base(std::string(name), 100.0, 1000.0);
    }
    if (name == "wu-so3-noisy") {
        Scenario s = wu_so3_base(std::string(name), 100.0, 20.0);
        s.noise = NoiseSpec::gaussian(1e-5);
        s.horizon = 10.0;
        return s;
    }
    if (name == "so2-demo") {
        return so2_base(std::string(name));
    }
    if (name == "so2-noisy") {
        Scenario s = so2_base(std::string(name));
        s.noise = NoiseSpec::sinusoid(0.1, 1e4);
        return s;
    }
    throw UnknownPreset("unknown preset '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Metrics

std::optional<double> convergence_time(const Trajectory& traj, double threshold) {
    const std::size_t n = traj.size();
    if (n == 0) {
        return std::nullopt;
    }
    std::size_t first_ok = n;
    for (std::size_t i = n; i-- > 0;) {
        if (!(traj.speed_error_norm(i) <= threshold)) {
            break;
        }
        first_ok = i;
    }
    if (first_ok == n) {
        return std::nullopt;
    }
    return traj.t(first_ok);
}

Metrics compute_metrics(const Trajectory& traj, const MetricsConfig& cfg) {
    Metrics m;
    const std::size_t n = traj.size();
    if (n == 0) {
        return m;
    }
    m.convergence_threshold = std::max(cfg.convergence_fraction * traj.speed_error_norm(0), 1e-9);
    m.convergence_time = convergence_time(traj, m.convergence_threshold);

    const double t_end = traj.t(n - 1);
    const double t_start = t_end - cfg.steady_window;
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        // Half-step slack keeps the sample count stable against roundoff in t.
        if (traj.t(i) < t_start - 0.5 * traj.dt) {
            continue;
        }
        const double e = traj.speed_error_norm(i);
        sum_sq += e * e;
        m.steady_state_sup = std::max(m.steady_state_sup, e);
        ++count;
    }
    m.steady_state_rms = count > 0 ? std::sqrt(sum_sq / static_cast<double>(count)) : 0.0;

    for (std::size_t i = 1; i < n; ++i) {
        m.max_V_increase = std::max(m.max_V_increase, traj.V(i) - traj.V(i - 1));
    }
    m.final_d = traj.dist(n - 1);
    return m;
}

// ---------------------------------------------------------------------------
// Running

RunResult run(const Scenario& s) {
    validate(s);
    NoiseSource noise(s.noise, s.seed, s.integrator.dt);
    RunResult out;
    if (s.mode == Mode::so3) {
        const SystemSO3 sys{InertiaSO3(s.so3.J0), GainsSO3(s.so3.K, s.so3.gamma), s.torque};
        const PlantStateSO3 p0{RotationMatrix3(s.so3.R0), s.so3.q0};
        const ObserverStateSO3 o0{s.so3.Rhat0, s.so3.qhat0};
        out.trajectory = co_simulate_so3(sys, p0, o0, noise, s.integrator, s.horizon);
    } else {
        const SystemSO2 sys{s.so2.J, GainsSO2(s.so2.gamma, s.so2.kappa), s.torque, s.so2.wrapped_measurements};
        const PlantStateSO2 p0{wrap_angle_to_so2(s.so2.theta0), s.so2.omega0};
        const ObserverStateSO2 o0{s.so2.Rhat0, s.so2.omega_hat0};
        out.trajectory = co_simulate_so2(sys, p0, o0, noise, s.integrator, s.horizon);
    }
    out.metrics = compute_metrics(out.trajectory, s.metrics);
    return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

void append_number(std::string& line, double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
    line.append(buf, res.ptr);
}

template <typename M>
void append_matrix(std::string& line, const M& m) {
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            line += ',';
            append_number(line, m(i, j));
        }
    }
}

template <typename V>
void append_vector(std::string& line, const V& v) {
    for (int i = 0; i < v.size(); ++i) {
        line += ',';
        append_number(line, v(i));
    }
}

void append_scalar(std::string& line, double v) {
    line += ',';
    append_number(line, v);
}

}  // namespace

std::vector<std::string> csv_columns(Mode mode) {
    std::vector<std::string> cols{"t"};
    if (mode == Mode::so2) {
        cols.insert(cols.end(), {"theta", "omega", "omega_hat", "err_omega", "theta_hat", "V", "Vdot", "dist_W",
                                 "degenerate_flag"});
        return cols;
    }
    auto mat = [&](const std::string& p) {
        for (int i = 1; i <= 3; ++i) {
            for (int j = 1; j <= 3; ++j) {
                cols.push_back(p + std::to_string(i) + std::to_string(j));
            }
        }
    };
    auto vec = [&](const std::string& p) {
        for (int i = 1; i <= 3; ++i) {
            cols.push_back(p + std::to_string(i));
        }
    };
    mat("R");
    vec("q");
    mat("Rhat");
    vec("qhat");
    vec("w");
    vec("what");
    vec("err_w");
    cols.insert(cols.end(), {"V", "Vdot", "dist_A"});
    return cols;
}

void write_csv(const Trajectory& traj, std::ostream& out) {
    const auto cols = csv_columns(traj.mode);
    std::string line;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        line += (i ? "," : "") + cols[i];
    }
    out << line << '\n';
    for (std::size_t i = 0; i < traj.size(); ++i) {
        line.clear();
        if (traj.mode == Mode::so3) {
            const SampleSO3& s = traj.so3[i];
            append_number(line, s.t);
            append_matrix(line, s.plant.R.matrix());
            append_vector(line, s.plant.q);
            append_matrix(line, s.observer.Rhat);
            append_vector(line, s.observer.qhat);
            append_vector(line, s.omega);
            append_vector(line, s.omega_hat);
            append_vector(line, s.speed_error());
            append_scalar(line, s.V);
            append_scalar(line, s.Vdot);
            append_scalar(line, s.dist);
        } else {
            const SampleSO2& s = traj.so2[i];
            append_number(line, s.t);
            append_scalar(line, s.theta);
            append_scalar(line, s.plant.omega);
            append_scalar(line, s.observer.omega_hat);
            append_scalar(line, s.speed_error());
            if (s.theta_hat) {
                append_scalar(line, *s.theta_hat);
            } else {
                line += ",nan";
            }
            append_scalar(line, s.V);
            append_scalar(line, s.Vdot);
            append_scalar(line, s.dist);
            line += s.theta_hat ? ",0" : ",1";
        }
        out << line << '\n';
    }
}

void write_csv(const Trajectory& traj, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    write_csv(traj, out);
    out.flush();
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError("'" + path.string() + "' is empty");
    }
    {
        std::istringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            table.header.push_back(cell);
        }
    }
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        std::vector<double> row;
        row.reserve(table.header.size());
        std::size_t pos = 0;
        while (pos <= line.size()) {
            const std::size_t end = std::min(line.find(',', pos), line.size());
            double v = 0.0;
            const char* first = line.data() + pos;
            const char* last = line.data() + end;
            const auto res = std::from_chars(first, last, v);
            if (res.ec != std::errc{} || res.ptr != last) {
                throw IoError("bad number on line " + std::to_string(lineno) + " of '" + path.string() + "'");
            }
            row.push_back(v);
            pos = end + 1;
        }
        if (row.size() != table.header.size()) {
            throw IoError("wrong column count on line " + std::to_string(lineno) + " of '" + path.string() + "'");
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

// ---------------------------------------------------------------------------
// Parameters and sweeps

const std::vector<std::string>& parameter_names() {
    static const std::vector<std::string> names{
        "gains.gamma",      "gains.kappa",     "gains.K_over_J0",  "gains.K_scalar",
        "noise.power",      "noise.amplitude", "noise.frequency",  "integrator.dt",
        "horizon",          "seed",            "plant.omega0",     "inertia.J",
        "metrics.steady_window", "metrics.convergence_fraction",
    };
    return names;
}

void set_parameter(Scenario& s, std::string_view path, double value) {
    if (path == "gains.gamma") {
        if (s.mode == Mode::so3) {
            s.so3.gamma = CorrectionMap::scalar(value);
        } else {
            s.so2.gamma = value;
        }
    } else if (path == "gains.kappa" && s.mode == Mode::so2) {
        s.so2.kappa = value;
    } else if (path == "gains.K_over_J0" && s.mode == Mode::so3) {
        s.so3.K = value * s.so3.J0;
    } else if (path == "gains.K_scalar" && s.mode == Mode::so3) {
        s.so3.K = value * Mat3::Identity();
    } else if (path == "noise.power") {
        s.noise.power = value;
        if (s.noise.kind == NoiseSpec::Kind::none) {
            s.noise.kind = NoiseSpec::Kind::gaussian_per_step;
        }
    } else if (path == "noise.amplitude") {
        s.noise.amplitude = value;
        if (s.noise.kind == NoiseSpec::Kind::none) {
            s.noise.kind = NoiseSpec::Kind::sinusoid;
        }
    } else if (path == "noise.frequency") {
        s.noise.frequency = value;
    } else if (path == "integrator.dt") {
        s.integrator.dt = value;
    } else if (path == "horizon") {
        s.horizon = value;
    } else if (path == "seed") {
        if (!(value >= 0.0) || value != std::floor(value) || value > 9007199254740992.0) {
            throw ValidationError("seed", "must be a non-negative integer");
        }
        s.seed = static_cast<std::uint64_t>(value);
    } else if (path == "plant.omega0" && s.mode == Mode::so2) {
        s.so2.omega0 = value;
    } else if (path == "inertia.J" && s.mode == Mode::so2) {
        s.so2.J = value;
    } else if (path == "metrics.steady_window") {
        s.metrics.steady_window = value;
    } else if (path == "metrics.convergence_fraction") {
        s.metrics.convergence_fraction = value;
    } else {
        throw UnknownParameter("unknown parameter '" + std::string(path) + "' for " +
                               (s.mode == Mode::so3 ? "so3" : "so2") + " scenarios");
    }
}

std::vector<SweepRow> sweep(const Scenario& base, std::string_view parameter, const std::vector<double>& values) {
    if (values.empty()) {
        throw ValidationError("values", "sweep needs at least one value");
    }
    std::vector<Scenario> scenarios;
    scenarios.reserve(values.size());
    for (double v : values) {
        Scenario s = base;
        set_parameter(s, parameter, v);
        validate(s);
        scenarios.push_back(std::move(s));
    }
    const auto metrics = run_batch(scenarios);
    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        rows.push_back({values[i], metrics[i]});
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::string_view parameter,
                     const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << parameter
        << ",convergence_time,convergence_threshold,steady_state_rms,steady_state_sup,max_V_increase,final_d\n";
    for (const auto& r : rows) {
        std::string line;
        append_number(line, r.value);
        if (r.metrics.convergence_time) {
            append_scalar(line, *r.metrics.convergence_time);
        } else {
            line += ",nan";
        }
        append_scalar(line, r.metrics.convergence_threshold);
        append_scalar(line, r.metrics.steady_state_rms);
        append_scalar(line, r.metrics.steady_state_sup);
        append_scalar(line, r.metrics.max_V_increase);
        append_scalar(line, r.metrics.final_d);
        out << line << '\n';
    }
    out.flush();
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

}  // namespace mfobs
