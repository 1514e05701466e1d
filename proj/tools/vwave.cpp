#include <iostream>

#include "CLI11.hpp"
#include "vwave/harness.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Degenerate variational wave solver in hodograph variables"};
    app.require_subcommand(1);

    vwave::RunConfig config;
    for (const char* name : {"solve", "crosscheck", "converge", "sweep-lambda"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", config.config_path, "scenario file (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", config.out_dir, "output directory");
        sub->add_option("--n-tau", config.n_tau, "tau intervals");
        sub->add_option("--n-y", config.n_y, "reported y nodes");
        sub->add_option("--delta", config.delta, "hodograph window (starting value for halving)");
        sub->add_option("--tol", config.tol, "fixed-point tolerance");
        sub->add_option("--max-iters", config.max_iters, "iteration budget");
        sub->add_option("--lambda", config.lambda, "chiral coupling");
        sub->add_option("--eps-dd", config.eps_dd, "series/direct crossover for divided differences");
        if (std::string(name) == "crosscheck")
            sub->add_flag("--dump-coefficients", config.dump_coefficients, "write coefficients.csv");
        sub->callback([&config, name] { config.command = *vwave::parse_command(name); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : vwave::exit_code(vwave::ErrorKind::Usage);
    }
    return vwave::run(config, std::cerr);
}
