#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "vwave/harness.hpp"

using namespace vwave;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("vwave_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string config_path(const std::string& name) { return std::string(VWAVE_CONFIG_DIR) + "/" + name + ".json"; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

nlohmann::json read_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

fs::path write_config(const std::string& name, const std::string& text) {
    const fs::path p = scratch(name) / "config.json";
    std::ofstream(p) << text;
    return p;
}

RunConfig run_config(Command c, const std::string& config, const fs::path& out) {
    RunConfig rc;
    rc.command = c;
    rc.config_path = config;
    rc.out_dir = out.string();
    return rc;
}

const char* kBase = R"j({"schema_version": 1, "material": {"preset": "linear"},
  "data": {"phi2": "0", "psi1": "1", "psi2": "0.5", "y_range": [0, 1]} %s})j";

std::string with(const std::string& extra) {
    std::string s = kBase;
    s.replace(s.find("%s"), 2, extra);
    return s;
}

std::string usage_message(const std::string& text) {
    try {
        parse_scenario_config(text);
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Usage);
        return e.what();
    }
    ADD_FAILURE() << "expected a usage error";
    return {};
}

}  // namespace

TEST(Config, ParsesShippedScenarios) {
    for (const char* name : {"trivial", "constant-data", "y-dependent", "forced-failure"}) {
        const ScenarioConfig c = load_scenario_config(config_path(name));
        EXPECT_EQ(c.name, name);
    }
    EXPECT_DOUBLE_EQ(*load_scenario_config(config_path("forced-failure")).lambda_cap_multiple, 20.0);
}

TEST(Config, SchemaViolationsNameTheField) {
    EXPECT_NE(usage_message(R"j({"material": {"preset": "linear"}})j").find("schema_version"), std::string::npos);
    EXPECT_NE(usage_message(with(R"j(, "grid": {"n_tau": "many"})j")).find("grid.n_tau"), std::string::npos);
    EXPECT_NE(usage_message(with(R"j(, "solver": {"tolerance": 1})j")).find("solver.tolerance"), std::string::npos);
    EXPECT_NE(usage_message(R"j({"schema_version": 1, "material": {"preset": "linear"},
        "data": {"phi2": "0", "psi1": "1 +", "psi2": "0", "y_range": [0, 1]}})j")
                  .find("data.psi1"),
              std::string::npos);
    EXPECT_NE(usage_message(R"j({"schema_version": 1, "material": {"preset": "magic"}, "data": {}})j")
                  .find("material.preset"),
              std::string::npos);
    EXPECT_NE(usage_message("{not json").find("JSON"), std::string::npos);
}

TEST(Config, TabulatedDataAndCustomMaterial) {
    const ScenarioConfig c = parse_scenario_config(R"j({"schema_version": 1,
      "material": {"preset": "custom", "c": "-u - 0.1*u^2", "a": "2 + cos(u)", "u_domain": [-1, 1]},
      "data": {"phi2": 0, "psi1": {"table": {"x": [0, 0.25, 0.5, 0.75, 1, 1.25, 1.5], "value": [1, 1, 1, 1, 1, 1, 1]}},
               "psi2": "0.5*x", "y_range": [0, 1.5]}})j");
    EXPECT_TRUE(c.data.tabulated);
    EXPECT_NEAR(c.data.psi1(0.6).value(), 1.0, 1e-12);
    EXPECT_NEAR(c.model.c_jet(0.5).derivative(1), -1.1, 1e-14);
}

TEST(RunConfig, InvariantsAreUsageErrors) {
    const fs::path out = scratch("invariants");
    RunConfig rc = run_config(Command::Solve, config_path("trivial"), out);
    rc.n_tau = 4;
    EXPECT_EQ(run(rc, std::cerr), 2);
    rc.n_tau.reset();
    rc.tol = 0.0;
    EXPECT_EQ(run(rc, std::cerr), 2);
    rc.tol.reset();
    rc.delta = -1.0;
    EXPECT_EQ(run(rc, std::cerr), 2);
}

TEST(Solve, TrivialScenarioReport) {
    const fs::path out = scratch("trivial");
    ASSERT_EQ(run(run_config(Command::Solve, config_path("trivial"), out), std::cerr), 0);
    const auto r = read_json(out / "report.json");
    EXPECT_EQ(r["convergence"]["iterations"], 1);
    EXPECT_EQ(r["residuals"]["H1"]["sup"], 0.0);
    EXPECT_EQ(r["residuals"]["H2"]["sup"], 0.0);
    EXPECT_LE(r["residuals"]["pde_u"]["sup"].get<double>(), 1e-10);
    EXPECT_TRUE(r["monitors"]["passed"].get<bool>());
    EXPECT_TRUE(fs::exists(out / "field.csv"));
    EXPECT_TRUE(fs::exists(out / "physical.csv"));
}

TEST(Solve, ConstantDataOracleInReport) {
    const fs::path out = scratch("constant");
    ASSERT_EQ(run(run_config(Command::Solve, config_path("constant-data"), out), std::cerr), 0);
    const auto r = read_json(out / "report.json");
    EXPECT_LT(r["convergence"]["kappa"].get<double>(), 1.0);
    EXPECT_TRUE(r["ode_reference"]["applicable"].get<bool>());
    EXPECT_LE(r["ode_reference"]["max_abs_deviation"].get<double>(), 1e-6);
}

TEST(Solve, OutputsAreDeterministic) {
    const fs::path a = scratch("det_a"), b = scratch("det_b");
    ASSERT_EQ(run(run_config(Command::Solve, config_path("y-dependent"), a), std::cerr), 0);
    ASSERT_EQ(run(run_config(Command::Solve, config_path("y-dependent"), b), std::cerr), 0);
    for (const char* f : {"field.csv", "physical.csv", "report.json"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}

TEST(Solve, ValidationFailureExitCode) {
    const fs::path cfg = write_config("invalid", R"j({"schema_version": 1,
      "material": {"preset": "custom", "c": "1 - u", "a": "2", "u_domain": [-1, 1]},
      "data": {"phi2": "0", "psi1": "1", "psi2": "0", "y_range": [0, 1]}})j");
    const fs::path out = cfg.parent_path() / "out";
    EXPECT_EQ(run(run_config(Command::Solve, cfg.string(), out), std::cerr), 3);
    const auto r = read_json(out / "report.json");
    EXPECT_NE(r["status"].get<std::string>().find("degeneracy condition violated"), std::string::npos);
}

TEST(Solve, ExhaustedHalvingBudgetIsContractionFailure) {
    const fs::path out = scratch("budget");
    RunConfig rc = run_config(Command::Solve, config_path("y-dependent"), out);
    rc.max_iters = 2;
    EXPECT_EQ(run(rc, std::cerr), 4);
    const auto r = read_json(out / "report.json");
    EXPECT_NE(r["status"].get<std::string>().find("contraction failure"), std::string::npos);
    EXPECT_EQ(r["attempts"].size(), 6u);
    EXPECT_EQ(r["exit_code"], 4);
}

TEST(Crosscheck, ShippedScenarioPasses) {
    const fs::path out = scratch("crosscheck");
    RunConfig rc = run_config(Command::Crosscheck, config_path("constant-data"), out);
    rc.dump_coefficients = true;
    EXPECT_EQ(run(rc, std::cerr), 0);
    EXPECT_TRUE(fs::exists(out / "crosscheck.csv"));
    EXPECT_TRUE(fs::exists(out / "coefficients.csv"));
    const auto r = read_json(out / "report.json");
    EXPECT_EQ(r["variants"].size(), 2u);
}

TEST(Converge, NeedsThreeGrids) {
    const fs::path cfg = write_config("single", with(R"j(, "converge": {"grids": 1})j"));
    EXPECT_EQ(run(run_config(Command::Converge, cfg.string(), cfg.parent_path() / "out"), std::cerr), 2);
}

TEST(Converge, TrivialScenarioIsExact) {
    const fs::path out = scratch("converge_trivial");
    RunConfig rc = run_config(Command::Converge, config_path("trivial"), out);
    rc.n_tau = 16;
    EXPECT_EQ(run(rc, std::cerr), 0);
    for (const auto& o : read_json(out / "report.json")["orders"]) EXPECT_EQ(o["order"], "exact") << o.dump();
}

TEST(SweepLambda, ZeroRowMatchesPlainSolve) {
    const fs::path cfg = write_config("sweep", with(R"j(, "grid": {"n_tau": 16, "n_y": 9, "delta": 0.1},
        "sweep": {"scale": 1.0, "points": 3})j"));
    const fs::path out = cfg.parent_path() / "out", plain = cfg.parent_path() / "plain";
    ASSERT_EQ(run(run_config(Command::SweepLambda, cfg.string(), out), std::cerr), 0);
    ASSERT_EQ(run(run_config(Command::Solve, cfg.string(), plain), std::cerr), 0);
    const auto sweep = read_json(out / "report.json")["rows"];
    ASSERT_EQ(sweep.size(), 3u);
    EXPECT_EQ(sweep[0]["kappa"], read_json(plain / "report.json")["convergence"]["kappa"]);
    for (const auto& row : sweep) EXPECT_TRUE(row["converged"].get<bool>());
    EXPECT_LE(sweep[0]["kappa"].get<double>(), sweep[2]["kappa"].get<double>());
    const std::string csv = slurp(out / "kappa_sweep.csv");
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "lambda,kappa,converged,iterations");
}
