#include "mfobs/cli.hpp"

#include <charconv>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfobs/checks.hpp"
#include "mfobs/config.hpp"
#include "mfobs/errors.hpp"
#include "mfobs/harness.hpp"

namespace mfobs {

namespace {

struct Source {
    std::string preset;
    std::string config;
};

void add_source_options(CLI::App* cmd, Source& src) {
    auto* p = cmd->add_option("--preset", src.preset, "Named preset scenario");
    auto* c = cmd->add_option("--config", src.config, "Path to a JSON scenario document");
    p->excludes(c);
    c->excludes(p);
}

Scenario load_source(const Source& src) {
    if (src.preset.empty() == src.config.empty()) {
        throw ValidationError("--preset/--config", "exactly one of --preset or --config is required");
    }
    if (!src.preset.empty()) {
        return preset(src.preset);
    }
    return load_scenario(src.config);
}

std::string opt_time(const std::optional<double>& t) {
    if (!t) {
        return "NotConverged";
    }
    std::ostringstream os;
    os << std::setprecision(10) << *t;
    return os.str();
}

void print_metrics_text(std::ostream& out, const std::string& name, const Metrics& m) {
    out << "scenario: " << (name.empty() ? "<unnamed>" : name) << '\n'
        << std::setprecision(10)
        << "convergence_time: " << opt_time(m.convergence_time) << '\n'
        << "convergence_threshold: " << m.convergence_threshold << '\n'
        << "steady_state_rms: " << m.steady_state_rms << '\n'
        << "steady_state_sup: " << m.steady_state_sup << '\n'
        << "max_V_increase: " << m.max_V_increase << '\n'
        << "final_d: " << m.final_d << '\n';
}

std::vector<double> parse_values(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string::npos) {
            end = text.size();
        }
        std::string cell = text.substr(pos, end - pos);
        const auto b = cell.find_first_not_of(" \t");
        const auto e = cell.find_last_not_of(" \t");
        cell = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
        double v = 0.0;
        const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (cell.empty() || res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
            throw ValidationError("--values", "cannot parse '" + cell + "' as a number");
        }
        out.push_back(v);
        pos = end + 1;
    }
    if (out.empty()) {
        throw ValidationError("--values", "value list is empty");
    }
    return out;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Manifold-free angular-speed observer simulator"};
    app.require_subcommand(1);

    Source run_src;
    std::string run_out;
    std::string summary = "text";
    auto* run_cmd = app.add_subcommand("run", "Simulate a scenario, write its trajectory CSV and print metrics");
    add_source_options(run_cmd, run_src);
    run_cmd->add_option("--out", run_out, "Trajectory CSV path");
    run_cmd->add_option("--summary", summary, "Summary format")->check(CLI::IsMember({"text", "json"}));

    Source sweep_src;
    std::string sweep_param;
    std::string sweep_values;
    std::string sweep_out;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a scenario for each value of one parameter");
    add_source_options(sweep_cmd, sweep_src);
    sweep_cmd->add_option("--param", sweep_param, "Dotted parameter path, e.g. gains.gamma")->required();
    sweep_cmd->add_option("--values", sweep_values, "Comma-separated values")->required();
    sweep_cmd->add_option("--out", sweep_out, "Metrics table CSV path");

    std::string suite = "all";
    std::uint64_t check_seed = 0;
    auto* check_cmd = app.add_subcommand("check", "Run randomized property suites");
    check_cmd->add_option("--suite", suite, "linalg, lyapunov, projection, conservation or all");
    check_cmd->add_option("--seed", check_seed, "Seed for the random inputs");

    Source cfg_src;
    auto* config_cmd = app.add_subcommand("config", "Print the JSON scenario document of a preset or config");
    add_source_options(config_cmd, cfg_src);

    app.add_subcommand("presets", "List preset names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*run_cmd) {
            const Scenario s = load_source(run_src);
            const RunResult r = run(s);
            if (!run_out.empty()) {
                write_csv(r.trajectory, std::filesystem::path(run_out));
            }
            if (summary == "json") {
                out << metrics_to_json(r.metrics).dump(2) << '\n';
            } else {
                print_metrics_text(out, s.name, r.metrics);
            }
            return kExitOk;
        }
        if (*sweep_cmd) {
            const Scenario s = load_source(sweep_src);
            const auto values = parse_values(sweep_values);
            const auto rows = sweep(s, sweep_param, values);
            if (!sweep_out.empty()) {
                write_sweep_csv(rows, sweep_param, sweep_out);
            }
            out << sweep_param << "\tconvergence_time\tsteady_state_rms\tsteady_state_sup\tfinal_d\n"
                << std::setprecision(10);
            for (const auto& row : rows) {
                out << row.value << '\t' << opt_time(row.metrics.convergence_time) << '\t'
                    << row.metrics.steady_state_rms << '\t' << row.metrics.steady_state_sup << '\t'
                    << row.metrics.final_d << '\n';
            }
            return kExitOk;
        }
        if (*check_cmd) {
            const auto results = run_suite(suite, check_seed);
            bool ok = true;
            for (const auto& r : results) {
                out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
                ok = ok && r.passed;
            }
            return ok ? kExitOk : kExitCheckFailed;
        }
        if (*config_cmd) {
            out << scenario_to_json(load_source(cfg_src)).dump(2) << '\n';
            return kExitOk;
        }
        for (const auto& n : preset_names()) {
            out << n << '\n';
        }
        return kExitOk;
    } catch (const NonFinite& e) {
        err << "error: numerical blow-up: " << e.what() << '\n';
        return kExitBlowUp;
    } catch (const ValidationError& e) {
        err << "error: invalid " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace mfobs
