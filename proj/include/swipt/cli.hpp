#pragma once

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "swipt/config.hpp"
#include "swipt/io.hpp"
#include "swipt/verify.hpp"

namespace swipt {

/// Process exit codes: 0 success, 1 configuration or parse error, 2 the
/// solver failed to converge.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitNotConverged = 2;

struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> trials;
    bool full_scale = false;  ///< run at the full 10000-trial scale
    std::optional<int> workers;
};

namespace detail {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(clock::now() - start_).count();
    }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_ = clock::now();
};

}  // namespace detail

/// Solves one seeded realization of the configured scenario and writes the
/// full JSON record (scenario, channels, equilibrium, manifest).
inline int cmd_solve(const std::string& config_path, const CliOverrides& overrides,
                     const std::string& out_path, std::ostream& err = std::cerr) {
    detail::Stopwatch timer;
    try {
        const ConfigFile cfg = ConfigFile::parse_file(config_path);
        const ScenarioTemplate tmpl = load_scenario_template(cfg);
        SolverOptions solver = load_solver_options(cfg);
        const std::uint64_t config_seed = cfg.get_u64("scenario", "seed", 1);
        const std::uint64_t seed = overrides.seed.value_or(config_seed);
        cfg.reject_unused({"sweep"});

        const NetworkScenario scn = materialize(tmpl, SweepParameter::inter_link_distance,
                                                tmpl.d_max);
        const ChannelRealization ch = sample_channels(scn, derive_stream(seed, 0, 0, 0));
        if (!solver.initial_profile) solver.init_seed = derive_stream(seed, 0, 0, 1);
        const EquilibriumResult eq = solve(scn, ch, solver);

        RunManifest manifest;
        manifest.command = "solve";
        manifest.config_digest = config_digest(cfg.raw_bytes());
        manifest.master_seed = seed;
        manifest.runtime_seconds = timer.seconds();

        ordered_json doc;
        doc["manifest"] = to_json(manifest);
        doc["scenario"] = to_json(scn);
        doc["channels"] = {{"g2", to_json(ch.g2)}, {"h2", to_json(ch.h2)}};
        doc["result"] = to_json(eq);
        write_file(out_path, doc.dump(2) + "\n");

        if (!eq.converged) {
            err << "solver stopped after " << eq.iterations << " iterations with residual "
                << eq.residual << " above tolerance\n";
            return kExitNotConverged;
        }
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

/// Runs the configured sweep and writes CSV plus a manifest sidecar
/// (<out>.manifest.json). The CSV is byte-identical across reruns of the
/// same config and seed.
inline int cmd_sweep(const std::string& config_path, const CliOverrides& overrides,
                     const std::string& out_path, std::ostream& err = std::cerr) {
    detail::Stopwatch timer;
    try {
        const ConfigFile cfg = ConfigFile::parse_file(config_path);
        SweepConfig sweep = load_sweep_config(cfg);
        cfg.reject_unused();
        if (overrides.seed) sweep.master_seed = *overrides.seed;
        if (overrides.trials) sweep.trials = *overrides.trials;
        if (overrides.full_scale) sweep.trials = 10000;
        if (overrides.workers) sweep.workers = *overrides.workers;
        sweep.validate();

        const SweepResult result = run_sweep(sweep);
        write_file(out_path, sweep_to_csv(result));

        RunManifest manifest;
        manifest.command = "sweep";
        manifest.config_digest = config_digest(cfg.raw_bytes());
        manifest.master_seed = sweep.master_seed;
        manifest.runtime_seconds = timer.seconds();
        write_file(out_path + ".manifest.json", to_json(manifest).dump(2) + "\n");
        return kExitOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

/// Property battery over randomly generated instances; exits zero only with
/// zero violations.
inline int cmd_verify(std::uint64_t seed, std::size_t instances, std::ostream& out = std::cout,
                      std::ostream& err = std::cerr) {
    try {
        VerifyOptions opt;
        opt.seed = seed;
        opt.instances = instances;
        const VerifyReport report = run_property_battery(opt);
        print_report(report, out);
        return report.all_passed() ? kExitOk : kExitConfigError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
}

}  // namespace swipt
