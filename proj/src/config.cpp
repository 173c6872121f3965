#include "mfobs/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "mfobs/errors.hpp"

namespace mfobs {

using nlohmann::json;

namespace {

std::string mode_name(Mode m) {
    return m == Mode::so3 ? "so3" : "so2";
}

template <typename M>
json matrix_json(const M& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) {
            row.push_back(m(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

json vec_json(const Vec3& v) {
    return json::array({v.x(), v.y(), v.z()});
}

/// Object reader that tracks its dotted path and rejects keys that were
/// never asked for.
class Reader {
public:
    Reader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) {
            throw ValidationError(display(), "expected an object");
        }
    }

    bool has(const std::string& key) const { return node_.contains(key); }

    std::string child(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json& at(const std::string& key) {
        seen_.insert(key);
        if (!node_.contains(key)) {
            throw ValidationError(child(key), "missing required field");
        }
        return node_.at(key);
    }

    double number(const std::string& key) {
        const json& v = at(key);
        if (!v.is_number()) {
            throw ValidationError(child(key), "expected a number");
        }
        return v.get<double>();
    }

    double number_or(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

    std::string string(const std::string& key) {
        const json& v = at(key);
        if (!v.is_string()) {
            throw ValidationError(child(key), "expected a string");
        }
        return v.get<std::string>();
    }

    bool boolean(const std::string& key) {
        const json& v = at(key);
        if (!v.is_boolean()) {
            throw ValidationError(child(key), "expected a boolean");
        }
        return v.get<bool>();
    }

    std::uint64_t unsigned_integer(const std::string& key) {
        const json& v = at(key);
        if (!v.is_number_unsigned()) {
            if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
                return static_cast<std::uint64_t>(v.get<std::int64_t>());
            }
            throw ValidationError(child(key), "expected a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    Vec3 vec3(const std::string& key) {
        const json& v = at(key);
        if (!v.is_array() || v.size() != 3) {
            throw ValidationError(child(key), "expected an array of 3 numbers");
        }
        Vec3 out;
        for (int i = 0; i < 3; ++i) {
            if (!v[i].is_number()) {
                throw ValidationError(child(key), "expected an array of 3 numbers");
            }
            out(i) = v[i].get<double>();
        }
        return out;
    }

    template <int N>
    Eigen::Matrix<double, N, N> matrix(const std::string& key) {
        const json& v = at(key);
        const std::string msg = "expected a " + std::to_string(N) + "x" + std::to_string(N) + " nested array";
        if (!v.is_array() || v.size() != static_cast<std::size_t>(N)) {
            throw ValidationError(child(key), msg);
        }
        Eigen::Matrix<double, N, N> m;
        for (int i = 0; i < N; ++i) {
            if (!v[i].is_array() || v[i].size() != static_cast<std::size_t>(N)) {
                throw ValidationError(child(key), msg);
            }
            for (int j = 0; j < N; ++j) {
                if (!v[i][j].is_number()) {
                    throw ValidationError(child(key), msg);
                }
                m(i, j) = v[i][j].get<double>();
            }
        }
        return m;
    }

    Reader object(const std::string& key) { return Reader(at(key), child(key)); }

    /// Rejects keys that were not read.
    void finish() const {
        for (const auto& [key, value] : node_.items()) {
            if (!seen_.contains(key)) {
                throw ValidationError(child(key), "unknown key");
            }
        }
    }

private:
    std::string display() const { return path_.empty() ? "<root>" : path_; }

    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

void exclusive(const Reader& r, const std::string& a, const std::string& b) {
    if (r.has(a) && r.has(b)) {
        throw ValidationError(r.child(b), "conflicts with '" + a + "'");
    }
    if (!r.has(a) && !r.has(b)) {
        throw ValidationError(r.child(a), "missing required field (or '" + b + "')");
    }
}

TorqueProfile read_torque(Reader r) {
    const std::string kind = r.string("kind");
    std::optional<double> ku;
    std::optional<double> rate;
    auto bounds = [&] {
        if (r.has("K_u_radius")) {
            ku = r.number("K_u_radius");
        }
        if (r.has("M")) {
            rate = r.number("M");
        }
    };
    TorqueProfile out;
    if (kind == "zero") {
        out = TorqueProfile::zero();
    } else if (kind == "constant") {
        const Vec3 v = r.vec3("value");
        bounds();
        out = TorqueProfile::constant(v, ku, rate);
    } else if (kind == "sinusoid") {
        const Vec3 a = r.vec3("amplitude");
        const double f = r.number("frequency");
        const double ph = r.number_or("phase", 0.0);
        bounds();
        out = TorqueProfile::sinusoid(a, f, ph, ku, rate);
    } else {
        throw ValidationError(r.child("kind"), "expected one of zero, constant, sinusoid");
    }
    r.finish();
    return out;
}

NoiseSpec read_noise(Reader r) {
    const std::string kind = r.string("kind");
    NoiseSpec n;
    if (kind == "none") {
        n = NoiseSpec::none();
    } else if (kind == "gaussian_per_step") {
        n = NoiseSpec::gaussian(r.number("power"));
    } else if (kind == "sinusoid") {
        const double a = r.number("amplitude");
        n = NoiseSpec::sinusoid(a, r.number("frequency"));
    } else {
        throw ValidationError(r.child("kind"), "expected one of none, gaussian_per_step, sinusoid");
    }
    r.finish();
    return n;
}

std::string noise_kind(NoiseSpec::Kind k) {
    switch (k) {
        case NoiseSpec::Kind::none:
            return "none";
        case NoiseSpec::Kind::gaussian_per_step:
            return "gaussian_per_step";
        case NoiseSpec::Kind::sinusoid:
            return "sinusoid";
    }
    return "none";
}

}  // namespace

json scenario_to_json(const Scenario& s) {
    json doc;
    doc["name"] = s.name;
    doc["mode"] = mode_name(s.mode);
    doc["seed"] = s.seed;
    doc["horizon"] = s.horizon;
    if (s.mode == Mode::so3) {
        doc["inertia"] = {{"J0", matrix_json(s.so3.J0)}};
        doc["plant"] = {{"R0", matrix_json(s.so3.R0)}, {"q0", vec_json(s.so3.q0)}};
        doc["observer"] = {{"Rhat0", matrix_json(s.so3.Rhat0)}, {"qhat0", vec_json(s.so3.qhat0)}};
        json gains = {{"K", matrix_json(s.so3.K)}};
        if (s.so3.gamma.kind() == CorrectionMap::Kind::scalar) {
            gains["gamma"] = s.so3.gamma.gamma();
        } else {
            gains["gamma_weights"] = vec_json(s.so3.gamma.weights());
        }
        doc["gains"] = std::move(gains);
    } else {
        doc["inertia"] = {{"J", s.so2.J}};
        doc["plant"] = {{"theta0", s.so2.theta0}, {"omega0", s.so2.omega0}};
        doc["observer"] = {{"Rhat0", matrix_json(s.so2.Rhat0)}, {"omega_hat0", s.so2.omega_hat0}};
        doc["gains"] = {{"gamma", s.so2.gamma}, {"kappa", s.so2.kappa}};
        doc["measurement"] = {{"wrapped_angle", s.so2.wrapped_measurements}};
    }

    json torque;
    switch (s.torque.kind()) {
        case TorqueProfile::Kind::zero:
            torque = {{"kind", "zero"}};
            break;
        case TorqueProfile::Kind::constant:
            torque = {{"kind", "constant"}, {"value", vec_json(s.torque.value())}};
            break;
        case TorqueProfile::Kind::sinusoid:
            torque = {{"kind", "sinusoid"},
                      {"amplitude", vec_json(s.torque.value())},
                      {"frequency", s.torque.frequency()},
                      {"phase", s.torque.phase()}};
            break;
    }
    if (s.torque.kind() != TorqueProfile::Kind::zero) {
        torque["K_u_radius"] = s.torque.k_u_radius();
        torque["M"] = s.torque.rate_bound();
    }
    doc["torque"] = std::move(torque);

    json noise = {{"kind", noise_kind(s.noise.kind)}};
    if (s.noise.kind == NoiseSpec::Kind::gaussian_per_step) {
        noise["power"] = s.noise.power;
    } else if (s.noise.kind == NoiseSpec::Kind::sinusoid) {
        noise["amplitude"] = s.noise.amplitude;
        noise["frequency"] = s.noise.frequency;
    }
    doc["noise"] = std::move(noise);

    doc["integrator"] = {{"dt", s.integrator.dt},
                         {"plant_method", std::string(to_string(s.integrator.plant_method))},
                         {"observer_method", std::string(to_string(s.integrator.observer_method))}};
    doc["metrics"] = {{"convergence_fraction", s.metrics.convergence_fraction},
                      {"steady_window", s.metrics.steady_window}};
    return doc;
}

Scenario scenario_from_json(const json& doc) {
    Reader root(doc, "");
    Scenario s;
    if (root.has("name")) {
        s.name = root.string("name");
    }
    const std::string mode = root.string("mode");
    if (mode == "so3") {
        s.mode = Mode::so3;
    } else if (mode == "so2") {
        s.mode = Mode::so2;
    } else {
        throw ValidationError("mode", "expected 'so3' or 'so2'");
    }
    if (root.has("seed")) {
        s.seed = root.unsigned_integer("seed");
    }
    s.horizon = root.number("horizon");

    if (s.mode == Mode::so3) {
        {
            Reader r = root.object("inertia");
            s.so3.J0 = r.matrix<3>("J0");
            r.finish();
        }
        {
            Reader r = root.object("plant");
            exclusive(r, "R0", "R0_rotvec");
            s.so3.R0 = r.has("R0") ? r.matrix<3>("R0") : so3_exp(r.vec3("R0_rotvec")).matrix();
            exclusive(r, "q0", "omega0");
            if (r.has("q0")) {
                s.so3.q0 = r.vec3("q0");
            } else {
                // q = R J0 R^T omega
                s.so3.q0 = s.so3.R0 * s.so3.J0 * s.so3.R0.transpose() * r.vec3("omega0");
            }
            r.finish();
        }
        {
            s.so3.Rhat0 = s.so3.R0;
            s.so3.qhat0 = Vec3::Zero();
            if (root.has("observer")) {
                Reader r = root.object("observer");
                if (r.has("Rhat0")) {
                    s.so3.Rhat0 = r.matrix<3>("Rhat0");
                }
                if (r.has("qhat0")) {
                    s.so3.qhat0 = r.vec3("qhat0");
                }
                r.finish();
            }
        }
        {
            Reader r = root.object("gains");
            exclusive(r, "K", "K_over_J0");
            s.so3.K = r.has("K") ? r.matrix<3>("K") : Mat3(r.number("K_over_J0") * s.so3.J0);
            exclusive(r, "gamma", "gamma_weights");
            s.so3.gamma = r.has("gamma") ? CorrectionMap::scalar(r.number("gamma"))
                                         : CorrectionMap::diagonal(r.vec3("gamma_weights"));
            r.finish();
        }
    } else {
        {
            Reader r = root.object("inertia");
            s.so2.J = r.number("J");
            r.finish();
        }
        {
            Reader r = root.object("plant");
            s.so2.theta0 = r.number("theta0");
            s.so2.omega0 = r.number("omega0");
            r.finish();
        }
        if (root.has("observer")) {
            Reader r = root.object("observer");
            if (r.has("Rhat0")) {
                s.so2.Rhat0 = r.matrix<2>("Rhat0");
            }
            s.so2.omega_hat0 = r.number_or("omega_hat0", 0.0);
            r.finish();
        }
        {
            Reader r = root.object("gains");
            s.so2.gamma = r.number("gamma");
            s.so2.kappa = r.number("kappa");
            r.finish();
        }
        if (root.has("measurement")) {
            Reader r = root.object("measurement");
            if (r.has("wrapped_angle")) {
                s.so2.wrapped_measurements = r.boolean("wrapped_angle");
            }
            r.finish();
        }
    }

    if (root.has("torque")) {
        s.torque = read_torque(root.object("torque"));
    }
    if (root.has("noise")) {
        s.noise = read_noise(root.object("noise"));
    }
    if (root.has("integrator")) {
        Reader r = root.object("integrator");
        s.integrator.dt = r.number_or("dt", s.integrator.dt);
        if (r.has("plant_method")) {
            s.integrator.plant_method = plant_method_from_string(r.string("plant_method"));
        }
        if (r.has("observer_method")) {
            s.integrator.observer_method = observer_method_from_string(r.string("observer_method"));
        }
        r.finish();
    }
    if (root.has("metrics")) {
        Reader r = root.object("metrics");
        s.metrics.convergence_fraction = r.number_or("convergence_fraction", s.metrics.convergence_fraction);
        s.metrics.steady_window = r.number_or("steady_window", s.metrics.steady_window);
        r.finish();
    }
    root.finish();
    validate(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config '" + path.string() + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("<root>", std::string("malformed JSON: ") + e.what());
    }
    return scenario_from_json(doc);
}

json metrics_to_json(const Metrics& m) {
    json j;
    j["convergence_time"] = m.convergence_time ? json(*m.convergence_time) : json(nullptr);
    j["convergence_threshold"] = m.convergence_threshold;
    j["steady_state_rms"] = m.steady_state_rms;
    j["steady_state_sup"] = m.steady_state_sup;
    j["max_V_increase"] = m.max_V_increase;
    j["final_d"] = m.final_d;
    return j;
}

}  // namespace mfobs
