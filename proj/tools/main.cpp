// swipt-sim: batch front end for the power-splitting game simulator.
//
//   swipt-sim solve  --config scenario.ini --out result.json [--seed N]
//   swipt-sim sweep  --config sweep.ini --out sweep.csv [--seed N]
//                    [--trials N | --full] [--workers N]
//   swipt-sim verify [--seed N] [--instances N]

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "swipt/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Nash-equilibrium power splitting for SWIPT relay interference channels"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    bool has_seed = false;
    int trials = 0;
    bool has_trials = false;
    bool full_scale = false;
    int workers = 0;
    bool has_workers = false;

    auto add_common = [&](CLI::App* cmd, bool sweep_flags) {
        cmd->add_option("--config", config_path, "scenario/sweep configuration file")
            ->required();
        cmd->add_option("--out", out_path, "output path")->required();
        cmd->add_option("--seed", seed, "master seed override")
            ->each([&](const std::string&) { has_seed = true; });
        if (sweep_flags) {
            cmd->add_option("--trials", trials, "Monte Carlo trials override")
                ->each([&](const std::string&) { has_trials = true; });
            cmd->add_flag("--full", full_scale, "run at the full 10000-trial scale");
            cmd->add_option("--workers", workers, "parallel trial workers")
                ->each([&](const std::string&) { has_workers = true; });
        }
    };

    CLI::App* solve = app.add_subcommand("solve", "solve one seeded channel realization");
    add_common(solve, false);

    CLI::App* sweep = app.add_subcommand("sweep", "run a Monte Carlo parameter sweep");
    add_common(sweep, true);

    CLI::App* verify =
        app.add_subcommand("verify", "run the property battery on random instances");
    std::uint64_t verify_seed = 1;
    std::size_t instances = 100;
    verify->add_option("--seed", verify_seed, "instance generator seed");
    verify->add_option("--instances", instances, "number of random instances");

    CLI11_PARSE(app, argc, argv);

    swipt::CliOverrides overrides;
    if (has_seed) overrides.seed = seed;
    if (has_trials) overrides.trials = trials;
    overrides.full_scale = full_scale;
    if (has_workers) overrides.workers = workers;

    if (solve->parsed()) return swipt::cmd_solve(config_path, overrides, out_path);
    if (sweep->parsed()) return swipt::cmd_sweep(config_path, overrides, out_path);
    return swipt::cmd_verify(verify_seed, instances);
}
