#include "commands.hpp"

#include "catdiv/error.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace catdiv;

    CLI::App app{"Optimal dividend and reinsurance policy under catastrophe risk"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    cli::Overrides overrides;
    std::uint64_t seed = 0;
    std::size_t paths = 0;
    double dt = 0.0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config_path, "Configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "Write CSV here instead of stdout");
        sub->add_option("--threads", overrides.threads, "Worker threads (0 = all cores)");
    };

    auto* solve = app.add_subcommand("solve", "Solve the barrier and retention policy");
    add_common(solve);

    std::size_t grid = 500;
    auto* verify = app.add_subcommand("verify", "Check the HJB variational inequality on a grid");
    add_common(verify);
    verify->add_option("--grid", grid, "Grid points on (0, 3x*]")->check(CLI::PositiveNumber);

    std::vector<double> xs;
    std::string trace;
    std::string strategy = "optimal";
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of discounted dividends");
    add_common(simulate);
    simulate->add_option("--x", xs, "Starting surplus levels")->delimiter(',');
    simulate->add_option("--strategy", strategy, "optimal | constant:A:B | barrier:B (B may end in x*)");
    simulate->add_option("--trace", trace, "Dump path 0 of the first level as t,R,L CSV");

    std::string param;
    std::string range;
    std::string outputs;
    auto* sweep = app.add_subcommand("sweep", "Solve across a parameter range");
    add_common(sweep);
    auto* param_opt = sweep->add_option("--param", param, "k | mu | sigma2 | levy_t | x");
    auto* range_opt = sweep->add_option("--range", range, "LO:HI:N");
    auto* outputs_opt = sweep->add_option("--outputs", outputs, "Comma list of x_star,gamma,d_minus,d_plus,V");

    for (auto* sub : {solve, verify, simulate, sweep}) {
        sub->add_option("--seed", seed, "RNG seed");
        sub->add_option("--paths", paths, "Monte Carlo paths")->check(CLI::PositiveNumber);
        sub->add_option("--dt", dt, "Time step")->check(CLI::PositiveNumber);
    }

    CLI11_PARSE(app, argc, argv);

    auto* chosen = app.get_subcommands().front();
    if (chosen->count("--seed")) overrides.seed = seed;
    if (chosen->count("--paths")) overrides.paths = paths;
    if (chosen->count("--dt")) overrides.dt = dt;

    try {
        auto cfg = load_config(config_path);
        cli::apply_overrides(cfg, overrides);

        cli::CommandResult result;
        if (chosen == solve) {
            result = cli::run_solve(cfg);
        } else if (chosen == verify) {
            result = cli::run_verify(cfg, grid);
        } else if (chosen == simulate) {
            result = cli::run_simulate(cfg, xs, strategy, trace);
        } else {
            result = cli::run_sweep_command(
                cfg, param_opt->count() ? std::optional(param) : std::nullopt,
                range_opt->count() ? std::optional(range) : std::nullopt,
                outputs_opt->count() ? std::optional(outputs) : std::nullopt);
        }

        if (out_path.empty()) {
            std::cout << csv::to_string(result.table);
        } else {
            csv::emit_csv(result.table, out_path);
        }
        if (!result.summary.empty()) std::cerr << result.summary << '\n';
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cli::kError;
    }
}
