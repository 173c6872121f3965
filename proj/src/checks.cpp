#include "mfobs/checks.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mfobs/batch.hpp"
#include "mfobs/errors.hpp"

namespace mfobs {

namespace {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : src_(seed) {}

    double uniform(double lo, double hi) { return lo + (hi - lo) * src_.uniform(); }
    double normal() { return src_(); }

    Vec3 vec3(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi), uniform(lo, hi)}; }

    Mat3 mat3(double lo, double hi) {
        Mat3 m;
        for (int i = 0; i < 9; ++i) {
            m.data()[i] = uniform(lo, hi);
        }
        return m;
    }

    Mat2 mat2(double lo, double hi) {
        Mat2 m;
        for (int i = 0; i < 4; ++i) {
            m.data()[i] = uniform(lo, hi);
        }
        return m;
    }

    Mat3 rotation() { return so3_exp(vec3(-std::numbers::pi, std::numbers::pi)).matrix(); }

    /// Q diag(d) Q^T with d in [lo, hi].
    Mat3 spd(double lo, double hi) {
        const Mat3 q = rotation();
        const Vec3 d = vec3(lo, hi);
        Mat3 m = q * d.asDiagonal() * q.transpose();
        return 0.5 * (m + m.transpose());
    }

private:
    NormalSource src_;
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

CheckResult check_le(std::string name, double measured, double bound, std::string what) {
    return {std::move(name), measured <= bound, what + " = " + fmt(measured) + " (bound " + fmt(bound) + ")"};
}

}  // namespace

double property1_max_error(std::uint64_t seed, int trials) {
    Sampler rng(seed);
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
        const Vec3 w = rng.vec3(-1.0, 1.0);
        const Mat3 theta = rng.mat3(-1.0, 1.0);
        const double lhs = (skew(w) * theta).trace();
        const double rhs = w.dot(vee(theta.transpose() - theta));
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

int property2_violations(std::uint64_t seed, int trials) {
    Sampler rng(seed);
    int bad = 0;
    for (int i = 0; i < trials; ++i) {
        Mat3 theta = rng.mat3(-1.0, 1.0);
        while (std::abs(theta.determinant()) <= 1e-6) {
            theta = rng.mat3(-1.0, 1.0);
        }
        Vec3 w = rng.vec3(-1.0, 1.0);
        while (w.norm() < 1e-6) {
            w = rng.vec3(-1.0, 1.0);
        }
        if (!((skew(w) * theta).norm() > 0.0)) {
            ++bad;
        }
        if ((skew(Vec3::Zero()) * theta).norm() != 0.0) {
            ++bad;
        }
    }
    return bad;
}

std::vector<Mat2> random_nondegenerate_mat2(std::uint64_t seed, int count) {
    Sampler rng(seed);
    std::vector<Mat2> out;
    out.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        const Mat2 h = rng.mat2(-2.0, 2.0);
        if (!is_degenerate(project_so2(h))) {
            out.push_back(h);
        }
    }
    return out;
}

std::vector<Mat2> random_degenerate_mat2(std::uint64_t seed, int count) {
    Sampler rng(seed);
    std::vector<Mat2> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double a = rng.uniform(-2.0, 2.0);
        const double b = rng.uniform(-2.0, 2.0);
        Mat2 h;
        h << a, b, b, -a;
        out.push_back(h);
    }
    return out;
}

std::vector<Scenario> random_so3_scenarios(std::uint64_t seed, int count, double dt, double horizon) {
    Sampler rng(seed);
    std::vector<Scenario> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        Scenario s;
        s.name = "random-so3-" + std::to_string(i);
        s.mode = Mode::so3;
        s.so3.J0 = rng.spd(0.5, 5.0);
        s.so3.R0 = rng.rotation();
        s.so3.q0 = rng.vec3(-3.0, 3.0);
        s.so3.Rhat0 = s.so3.R0 + rng.mat3(-0.5, 0.5);
        s.so3.qhat0 = s.so3.q0 + rng.vec3(-2.0, 2.0);
        s.so3.K = rng.spd(1.0, 100.0);
        s.so3.gamma = (i % 2 == 0) ? CorrectionMap::scalar(rng.uniform(2.0, 50.0))
                                   : CorrectionMap::diagonal(rng.vec3(2.0, 50.0));
        s.noise = NoiseSpec::none();
        s.integrator.dt = dt;
        s.horizon = horizon;
        s.seed = seed + static_cast<std::uint64_t>(i);
        out.push_back(std::move(s));
    }
    return out;
}

ConservationStats torque_free_conservation(PlantMethod method, double dt, double horizon) {
    const Scenario base = preset("wu-so3-K1");
    const InertiaSO3 inertia(base.so3.J0);
    const TorqueProfile torque = TorqueProfile::zero();
    PlantStateSO3 s{RotationMatrix3(base.so3.R0), base.so3.q0};
    const Vec3 q0 = s.q;
    const double e0 = kinetic_energy(s, inertia);
    ConservationStats st;
    const long n = step_count(horizon, dt);
    for (long k = 0; k < n; ++k) {
        s = plant_step_so3(method, s, torque, static_cast<double>(k) * dt, inertia, dt).next;
        st.max_energy_rel_change = std::max(st.max_energy_rel_change, std::abs(kinetic_energy(s, inertia) - e0) / e0);
        st.max_momentum_change = std::max(st.max_momentum_change, (s.q - q0).cwiseAbs().maxCoeff());
    }
    return st;
}

double orthonormality_drift(PlantMethod method, double dt, long steps) {
    const Scenario base = preset("wu-so3-K1");
    const InertiaSO3 inertia(base.so3.J0);
    const TorqueProfile torque = TorqueProfile::zero();
    PlantStateSO3 s{RotationMatrix3(base.so3.R0), base.so3.q0};
    for (long k = 0; k < steps; ++k) {
        s = plant_step_so3(method, s, torque, static_cast<double>(k) * dt, inertia, dt).next;
    }
    return orthonormality_error(s.R.matrix());
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"linalg", "lyapunov", "projection", "conservation", "all"};
    return names;
}

namespace {

void linalg_suite(std::uint64_t seed, std::vector<CheckResult>& out) {
    out.push_back(check_le("property1_trace_identity", property1_max_error(seed, 10000), 1e-10, "max |error|"));
    out.push_back(check_le("property2_nonvanishing_product", property2_violations(seed + 1, 10000), 0.0,
                           "violations"));

    Sampler rng(seed + 2);
    double vee_err = 0.0;
    double exp_err = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Vec3 v = rng.vec3(-4.0, 4.0);
        vee_err = std::max(vee_err, (vee(skew(v)) - v).norm());
        const Mat3 r = so3_exp(v).matrix();
        exp_err = std::max(exp_err, std::max(orthonormality_error(r), std::abs(r.determinant() - 1.0)));
    }
    out.push_back(check_le("skew_vee_inverse", vee_err, 0.0, "max ||vee(skew(v)) - v||"));
    out.push_back(check_le("so3_exp_on_group", exp_err, 1e-12, "max orthonormality/det error"));
}

void lyapunov_suite(std::uint64_t seed, std::vector<CheckResult>& out) {
    const auto scenarios = random_so3_scenarios(seed, 20, 1e-4, 1.0);
    const auto stats = lyapunov_batch(scenarios, 1e-3);
    double inc = -1.0;
    double fd = 0.0;
    std::size_t worst_inc = 0;
    std::size_t worst_fd = 0;
    for (std::size_t i = 0; i < stats.size(); ++i) {
        if (stats[i].max_rel_increase > inc) {
            inc = stats[i].max_rel_increase;
            worst_inc = i;
        }
        if (stats[i].max_fd_rel_error > fd) {
            fd = stats[i].max_fd_rel_error;
            worst_fd = i;
        }
    }
    auto r1 = check_le("lyapunov_nonincreasing", inc, 1e-9, "max (V_{k+1} - V_k)/(1 + V_k)");
    r1.detail += " worst " + scenarios[worst_inc].name;
    out.push_back(std::move(r1));
    auto r2 = check_le("lyapunov_derivative_matches_fd", fd, 1e-2, "max relative error");
    r2.detail += " worst " + scenarios[worst_fd].name;
    out.push_back(std::move(r2));
}

void projection_suite(std::uint64_t seed, std::vector<CheckResult>& out) {
    const auto inputs = random_nondegenerate_mat2(seed, 10000);
    const auto opt = projection_oracle(inputs, 3600);
    auto r = check_le("projection_optimal_vs_grid", opt.max_excess, 1e-9, "max objective excess");
    if (!r.passed) {
        std::ostringstream os;
        os.precision(17);
        os << " counterexample H = [" << inputs[opt.worst_index].reshaped().transpose() << "] (column-major)";
        r.detail += os.str();
    }
    out.push_back(std::move(r));

    int not_degenerate = 0;
    for (const auto& h : random_degenerate_mat2(seed + 1, 1000)) {
        not_degenerate += is_degenerate(project_so2(h)) ? 0 : 1;
    }
    out.push_back(check_le("projection_degenerate_set", not_degenerate, 0.0, "misclassified inputs"));

    Sampler rng(seed + 2);
    double scale_err = 0.0;
    double lipschitz = 0.0;
    for (const auto& h : random_nondegenerate_mat2(seed + 3, 2000)) {
        const Mat2 p = std::get<ProjectionUnique>(project_so2(h)).R.matrix();
        const double c = rng.uniform(1e-3, 1e3);
        scale_err = std::max(scale_err, (std::get<ProjectionUnique>(project_so2(c * h)).R.matrix() - p).norm());
        const double rho = std::hypot(h(0, 0) + h(1, 1), h(0, 1) - h(1, 0));
        if (rho / std::sqrt(2.0) < 0.1) {
            continue;
        }
        Mat2 delta = rng.mat2(-1.0, 1.0);
        delta *= rng.uniform(1e-6, 1e-4) / delta.norm();
        const Mat2 pd = std::get<ProjectionUnique>(project_so2(h + delta)).R.matrix();
        lipschitz = std::max(lipschitz, (pd - p).norm() / delta.norm());
    }
    out.push_back(check_le("projection_scale_invariant", scale_err, 1e-12, "max ||Pi(cH) - Pi(H)||_F"));
    out.push_back(check_le("projection_local_lipschitz", lipschitz, 100.0, "empirical Lipschitz constant"));
}

void conservation_suite(std::vector<CheckResult>& out) {
    const auto st = torque_free_conservation(PlantMethod::lie_rk4, 1e-3, 10.0);
    out.push_back(check_le("momentum_constant", st.max_momentum_change, 0.0, "max |q(t) - q(0)|"));
    out.push_back(check_le("kinetic_energy_constant", st.max_energy_rel_change, 1e-6, "max relative change"));
    out.push_back(check_le("orthonormality_drift_1e6_steps",
                           orthonormality_drift(PlantMethod::lie_rk4, 1e-3, 1000000), 1e-9, "||R^T R - I||_F"));
}

}  // namespace

std::vector<CheckResult> run_suite(std::string_view suite, std::uint64_t seed) {
    std::vector<CheckResult> out;
    const bool all = suite == "all";
    bool known = all;
    if (all || suite == "linalg") {
        linalg_suite(seed, out);
        known = true;
    }
    if (all || suite == "lyapunov") {
        lyapunov_suite(seed, out);
        known = true;
    }
    if (all || suite == "projection") {
        projection_suite(seed, out);
        known = true;
    }
    if (all || suite == "conservation") {
        conservation_suite(out);
        known = true;
    }
    if (!known) {
        throw UnknownParameter("unknown suite '" + std::string(suite) + "'");
    }
    return out;
}

}  // namespace mfobs
