// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Tolerances are pinned below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mfobs/batch.hpp"
#include "mfobs/checks.hpp"
#include "mfobs/harness.hpp"

using namespace mfobs;

namespace {

constexpr double kC1ConvergeBy = 1.5;       // s
constexpr double kC1MaxRuntime = 5.0;       // s, wall clock
constexpr double kC2Horizon = 80.0;         // long enough for every gain to converge
constexpr double kC3Window = 2.0;           // s
constexpr double kC4MaxRelIncrease = 1e-9;  // per step, relative to 1 + V
constexpr double kC4MaxFdRelError = 1e-2;
constexpr double kC4Dt = 1e-4;
constexpr double kC4Horizon = 1.0;
constexpr int kC4Scenarios = 20;
constexpr double kC4VdotFloor = 1e-3;
constexpr double kC5EnergyRel = 1e-6;
constexpr double kC5Horizon = 10.0;
constexpr long kC5DriftSteps = 1000000;
constexpr double kC5MaxDrift = 1e-9;
constexpr int kC6Inputs = 10000;
constexpr int kC6Grid = 3600;
constexpr double kC6MaxExcess = 1e-9;
constexpr double kC7SpeedTol = 0.05;   // rad/s, for t >= 2 s
constexpr double kC7AngleTol = 0.01;   // rad, for t >= 2 s
constexpr double kC7From = 2.0;
constexpr double kC8Window = 1.0;
constexpr int kC9Trials = 10000;
constexpr double kC9Tol = 1e-10;
constexpr std::uint64_t kSeed = 20240601;

struct Verdict {
    bool passed;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string opt(const std::optional<double>& t) {
    return t ? fmt("%.3f", *t) : std::string("NotConverged");
}

Verdict c1_wu_reproduction() {
    const auto t0 = std::chrono::steady_clock::now();
    const RunResult r = run(preset("wu-so3-K1"));
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const auto& ct = r.metrics.convergence_time;
    const bool ok = ct && *ct <= kC1ConvergeBy && wall <= kC1MaxRuntime;
    return {ok, fmt("convergence_time=%s s (<= %.1f), threshold=%.4g, runtime=%.3f s (<= %.0f)", opt(ct).c_str(),
                    kC1ConvergeBy, r.metrics.convergence_threshold, wall, kC1MaxRuntime)};
}

Verdict c2_tuning_ordering() {
    std::vector<Scenario> batch;
    for (const char* n : {"wu-so3-K1", "wu-so3-K3", "wu-so3-K2", "wu-so3-K4b"}) {
        Scenario s = preset(n);
        s.horizon = kC2Horizon;
        batch.push_back(s);
    }
    const auto m = run_batch(batch);
    const auto& k1 = m[0].convergence_time;
    const auto& k3 = m[1].convergence_time;
    const auto& k2 = m[2].convergence_time;
    const auto& k4b = m[3].convergence_time;
    const bool finite = k1 && k3 && k2 && k4b;
    const bool ok = finite && *k1 < *k3 && *k3 < *k2 && *k4b > *k1;
    return {ok, fmt("T=%.0f s: K1=%s < K3=%s < K2=%s; K4b(gamma=1e3)=%s > K1", kC2Horizon, opt(k1).c_str(),
                    opt(k3).c_str(), opt(k2).c_str(), opt(k4b).c_str())};
}

Verdict c3_noise_ordering() {
    std::vector<Scenario> batch;
    for (double f : {10.0, 30.0, 100.0}) {
        Scenario s = preset("wu-so3-noisy");
        set_parameter(s, "gains.K_over_J0", f);
        s.metrics.steady_window = kC3Window;
        batch.push_back(s);
    }
    const auto m = run_batch(batch);
    const double a = m[0].steady_state_rms;
    const double b = m[1].steady_state_rms;
    const double c = m[2].steady_state_rms;
    return {a < b && b < c, fmt("steady_state_rms over final %.0f s: 10J0=%.6g < 30J0=%.6g < 100J0=%.6g", kC3Window,
                                a, b, c)};
}

Verdict c4_lyapunov() {
    const auto scenarios = random_so3_scenarios(kSeed, kC4Scenarios, kC4Dt, kC4Horizon);
    const auto stats = lyapunov_batch(scenarios, kC4VdotFloor);
    double inc = -INFINITY;
    double fd = 0.0;
    std::size_t samples = 0;
    for (const auto& s : stats) {
        inc = std::max(inc, s.max_rel_increase);
        fd = std::max(fd, s.max_fd_rel_error);
        samples += s.fd_samples;
    }
    const bool ok = inc <= kC4MaxRelIncrease && fd <= kC4MaxFdRelError && samples > 0;
    return {ok, fmt("%d scenarios, dt=%.0e: max rel dV=%.3e (<= %.0e), max FD rel error=%.3e (<= %.0e) over %zu steps",
                    kC4Scenarios, kC4Dt, inc, kC4MaxRelIncrease, fd, kC4MaxFdRelError, samples)};
}

Verdict c5_conservation() {
    bool ok = true;
    std::string detail;
    for (PlantMethod m : {PlantMethod::lie_rk4, PlantMethod::lie_midpoint, PlantMethod::ambient_rk4_with_monitor}) {
        const auto c = torque_free_conservation(m, 1e-3, kC5Horizon);
        ok = ok && c.max_momentum_change == 0.0 && c.max_energy_rel_change <= kC5EnergyRel;
        detail += fmt("%s: |dq|=%.1e dE/E=%.2e; ", std::string(to_string(m)).c_str(), c.max_momentum_change,
                      c.max_energy_rel_change);
    }
    for (PlantMethod m : {PlantMethod::lie_midpoint, PlantMethod::lie_rk4}) {
        const double d = orthonormality_drift(m, 1e-3, kC5DriftSteps);
        ok = ok && d <= kC5MaxDrift;
        detail += fmt("%s drift(1e6 steps)=%.2e; ", std::string(to_string(m)).c_str(), d);
    }
    detail += fmt("bounds dE/E<=%.0e, drift<=%.0e", kC5EnergyRel, kC5MaxDrift);
    return {ok, detail};
}

Verdict c6_projection() {
    const auto inputs = random_nondegenerate_mat2(kSeed, kC6Inputs);
    const auto r = projection_oracle(inputs, kC6Grid);
    const auto degen = random_degenerate_mat2(kSeed + 1, 1000);
    const auto d = projection_oracle(degen, 8);
    const bool ok = r.max_excess <= kC6MaxExcess && r.degenerate_count == 0 && d.degenerate_count == degen.size();
    return {ok, fmt("%d inputs vs %d-point grid: max excess=%.3e (<= %.0e); degenerate inputs classified %zu/%zu",
                    kC6Inputs, kC6Grid, r.max_excess, kC6MaxExcess, d.degenerate_count, degen.size())};
}

Verdict c7_so2_demo() {
    const RunResult r = run(preset("so2-demo"));
    double speed = 0.0;
    double angle = 0.0;
    bool defined = true;
    for (const auto& s : r.trajectory.so2) {
        if (s.t < kC7From) {
            continue;
        }
        speed = std::max(speed, std::abs(s.plant.omega - s.observer.omega_hat));
        if (!s.theta_hat) {
            defined = false;
            continue;
        }
        angle = std::max(angle, std::abs(wrap_angle(*s.theta_hat - s.theta)));
    }
    const bool ok = defined && speed <= kC7SpeedTol && angle <= kC7AngleTol;
    return {ok, fmt("for t >= %.0f s: sup|w - w_hat|=%.3e (<= %.2f), sup|theta_hat - theta|=%.3e (<= %.2f)", kC7From,
                    speed, kC7SpeedTol, angle, kC7AngleTol)};
}

Verdict c8_so2_noise() {
    std::vector<Scenario> batch;
    for (double a : {0.1, 0.01, 0.001}) {
        Scenario s = preset("so2-noisy");
        s.noise.amplitude = a;
        s.metrics.steady_window = kC8Window;
        batch.push_back(s);
    }
    const auto m = run_batch(batch);
    const double a = m[0].steady_state_sup;
    const double b = m[1].steady_state_sup;
    const double c = m[2].steady_state_sup;
    const bool ok = std::isfinite(a) && a > b && b > c;
    return {ok, fmt("sup|w - w_hat| over final %.0f s: amp 0.1 -> %.4g, 0.01 -> %.4g, 0.001 -> %.4g", kC8Window, a,
                    b, c)};
}

Verdict c9_properties() {
    const double e1 = property1_max_error(kSeed, kC9Trials);
    const int v2 = property2_violations(kSeed, kC9Trials);
    return {e1 <= kC9Tol && v2 == 0,
            fmt("%d trials each: trace identity max error=%.3e (<= %.0e), nonvanishing product violations=%d", kC9Trials, e1, kC9Tol,
                v2)};
}

Verdict c10_determinism() {
    std::size_t identical = 0;
    std::string bad;
    for (const auto& name : preset_names()) {
        const Scenario s = preset(name);
        std::ostringstream a;
        std::ostringstream b;
        write_csv(run(s).trajectory, a);
        write_csv(run(s).trajectory, b);
        if (a.str() == b.str() && !a.str().empty()) {
            ++identical;
        } else {
            bad += " " + name;
        }
    }
    const std::size_t n = preset_names().size();
    return {identical == n, fmt("byte-identical CSV for %zu/%zu presets%s", identical, n, bad.c_str())};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
        {"wu-so3-K1 converges by 1.5 s", c1_wu_reproduction},
        {"gain tuning ordering", c2_tuning_ordering},
        {"noise sensitivity ordering", c3_noise_ordering},
        {"Lyapunov suite", c4_lyapunov},
        {"conservation suite", c5_conservation},
        {"projection oracle", c6_projection},
        {"so2-demo convergence", c7_so2_demo},
        {"so2 noise practical stability", c8_so2_noise},
        {"property oracles", c9_properties},
        {"determinism", c10_determinism},
    };
    int failed = 0;
    int index = 0;
    for (const auto& [title, fn] : criteria) {
        ++index;
        Verdict v{false, ""};
        try {
            v = fn();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += v.passed ? 0 : 1;
        std::printf("%s criterion %d (%s): %s\n", v.passed ? "PASS" : "FAIL", index, title, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
