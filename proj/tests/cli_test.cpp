#include "mfobs/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "mfobs/config.hpp"

namespace mfobs {
namespace {

namespace fs = std::filesystem;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome cli(std::vector<std::string> args) {
    args.insert(args.begin(), "mfobs");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path tmp(const std::string& name) {
    return fs::temp_directory_path() / ("mfobs_cli_" + name);
}

void write_config(const fs::path& p, const nlohmann::json& doc) {
    std::ofstream out(p);
    out << doc.dump(2);
}

TEST(Cli, PresetsListsEveryName) {
    const auto r = cli({"presets"});
    EXPECT_EQ(r.code, kExitOk);
    for (const auto& n : preset_names()) {
        EXPECT_NE(r.out.find(n + "\n"), std::string::npos) << n;
    }
}

TEST(Cli, RunWritesByteIdenticalCsv) {
    const auto a = tmp("a.csv");
    const auto b = tmp("b.csv");
    ASSERT_EQ(cli({"run", "--preset", "so2-noisy", "--out", a.string()}).code, kExitOk);
    ASSERT_EQ(cli({"run", "--preset", "so2-noisy", "--out", b.string()}).code, kExitOk);
    const std::string ta = slurp(a);
    EXPECT_FALSE(ta.empty());
    EXPECT_EQ(ta, slurp(b));
    fs::remove(a);
    fs::remove(b);
}

TEST(Cli, RunJsonSummary) {
    const auto r = cli({"run", "--preset", "wu-so3-K1", "--summary", "json"});
    ASSERT_EQ(r.code, kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_TRUE(j["convergence_time"].is_number());
    EXPECT_LE(j["convergence_time"].get<double>(), 1.5);
}

TEST(Cli, ConfigRoundTripsThroughRun) {
    const auto cfg = tmp("cfg.json");
    const auto r = cli({"config", "--preset", "so2-demo"});
    ASSERT_EQ(r.code, kExitOk);
    {
        std::ofstream out(cfg);
        out << r.out;
    }
    const auto a = cli({"run", "--config", cfg.string(), "--summary", "json"});
    const auto b = cli({"run", "--preset", "so2-demo", "--summary", "json"});
    EXPECT_EQ(a.code, kExitOk);
    EXPECT_EQ(a.out, b.out);
    fs::remove(cfg);
}

TEST(Cli, InvalidConfigNamesField) {
    const auto cfg = tmp("bad.json");
    auto doc = scenario_to_json(preset("wu-so3-K1"));
    doc["integrator"]["dt"] = -1;
    write_config(cfg, doc);
    const auto r = cli({"run", "--config", cfg.string()});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_NE(r.err.find("integrator.dt"), std::string::npos);
    fs::remove(cfg);
}

TEST(Cli, BlowUpExitsThree) {
    const auto cfg = tmp("blow.json");
    auto doc = scenario_to_json(preset("wu-so3-K1"));
    doc["gains"]["gamma"] = 1e9;
    doc["integrator"]["dt"] = 0.1;
    write_config(cfg, doc);
    const auto r = cli({"run", "--config", cfg.string()});
    EXPECT_EQ(r.code, kExitBlowUp);
    EXPECT_NE(r.err.find("t="), std::string::npos);
    fs::remove(cfg);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(cli({}).code, kExitUsage);
    EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(cli({"run"}).code, kExitUsage);
    EXPECT_EQ(cli({"run", "--preset", "nope"}).code, kExitUsage);
    EXPECT_EQ(cli({"run", "--preset", "so2-demo", "--config", "x.json"}).code, kExitUsage);
    EXPECT_EQ(cli({"run", "--config", "/nonexistent/x.json"}).code, kExitUsage);
    EXPECT_EQ(cli({"--help"}).code, kExitOk);
}

TEST(Cli, Sweep) {
    const auto out = tmp("sweep.csv");
    const auto r = cli({"sweep", "--preset", "wu-so3-K1", "--param", "gains.gamma", "--values", "20,1000",
                        "--out", out.string()});
    ASSERT_EQ(r.code, kExitOk);
    const std::string text = slurp(out);
    EXPECT_EQ(text.rfind("gains.gamma,convergence_time", 0), 0u);
    EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
    fs::remove(out);

    EXPECT_EQ(cli({"sweep", "--preset", "wu-so3-K1", "--param", "gains.gamma", "--values", ""}).code, kExitUsage);
    EXPECT_EQ(cli({"sweep", "--preset", "wu-so3-K1", "--param", "gains.gamma", "--values", "1,x"}).code,
              kExitUsage);
    EXPECT_EQ(cli({"sweep", "--preset", "wu-so3-K1", "--param", "gains.nope", "--values", "1"}).code, kExitUsage);
}

TEST(Cli, Check) {
    const auto r = cli({"check", "--suite", "projection", "--seed", "3"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE(r.out.find("PASS projection_optimal_vs_grid"), std::string::npos);
    EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
    EXPECT_EQ(cli({"check", "--suite", "nope"}).code, kExitUsage);
}

}  // namespace
}  // namespace mfobs
