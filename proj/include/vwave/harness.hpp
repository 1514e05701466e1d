#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "vwave/config.hpp"
#include "vwave/pipeline.hpp"

namespace vwave {

enum class Command { Solve, Crosscheck, Converge, SweepLambda };

std::optional<Command> parse_command(std::string_view name);
const char* to_string(Command command) noexcept;

/// Command line parameters; optional values override the scenario file.
struct RunConfig {
    Command command = Command::Solve;
    std::string config_path;
    std::string out_dir = ".";
    std::optional<int> n_tau;
    std::optional<int> n_y;
    std::optional<double> delta;
    std::optional<double> tol;
    std::optional<int> max_iters;
    std::optional<double> lambda;
    std::optional<double> eps_dd;
    /// crosscheck only: also write coefficients.csv with T and F on a (tau, y) lattice.
    bool dump_coefficients = false;
};

/// Exit status of a crosscheck or convergence study that ran but did not meet its tolerance.
inline constexpr int kVerificationFailed = 1;

struct ResolvedRun {
    ScenarioConfig scenario;
    SolveSettings settings;
};

/// Loads the scenario, applies overrides and checks n_tau >= 8, n_y >= 8, tol > 0, delta > 0.
ResolvedRun resolve_run(const RunConfig& config);

int run_solve(const RunConfig& config, std::ostream& log);
int run_crosscheck(const RunConfig& config, std::ostream& log);
int run_converge(const RunConfig& config, std::ostream& log);
int run_sweep_lambda(const RunConfig& config, std::ostream& log);

/// Dispatches on config.command; library errors become their exit status with a message on `log`.
int run(const RunConfig& config, std::ostream& log);

}  // namespace vwave
