#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "swipt/baselines.hpp"
#include "swipt/channel.hpp"
#include "swipt/common.hpp"
#include "swipt/game.hpp"
#include "swipt/metrics.hpp"

namespace swipt {

enum class Scheme { game, random, centralized };

inline const char* to_string(Scheme s) {
    switch (s) {
        case Scheme::game: return "game";
        case Scheme::random: return "random";
        default: return "centralized";
    }
}

enum class SweepParameter { inter_link_distance, link_count, power_db };

inline const char* to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::inter_link_distance: return "inter_link_distance";
        case SweepParameter::link_count: return "link_count";
        default: return "power_db";
    }
}

/// Scenario blueprint. Per-link fields hold either one entry (applied to all
/// links) or exactly one entry per link.
struct ScenarioTemplate {
    std::size_t links = 2;
    std::vector<double> power_db = {15.0};
    std::vector<Protocol> protocols = {Protocol::af};
    std::vector<double> relay_fraction = {0.5};
    double d_max = 5.0;
    double tau = 3.0;
    double eta = 0.5;
    double sigma2 = 1.0;
};

namespace detail {

template <typename T>
inline std::vector<T> broadcast(const std::vector<T>& v, std::size_t n, const char* what) {
    if (v.size() == n) return v;
    if (v.size() == 1) return std::vector<T>(n, v[0]);
    throw ConfigError(std::string(what) + " needs 1 or " + std::to_string(n) +
                      " entries (got " + std::to_string(v.size()) + ")");
}

}  // namespace detail

/// Materializes a template into a concrete scenario, with the swept
/// parameter overridden by the given value.
inline NetworkScenario materialize(const ScenarioTemplate& tmpl, SweepParameter parameter,
                                   double value) {
    ScenarioTemplate t = tmpl;
    switch (parameter) {
        case SweepParameter::inter_link_distance:
            t.d_max = value;
            break;
        case SweepParameter::link_count: {
            const double r = std::round(value);
            if (!(r >= 1.0) || std::abs(value - r) > 1e-9) {
                throw ConfigError("link_count sweep values must be positive integers");
            }
            t.links = static_cast<std::size_t>(r);
            break;
        }
        case SweepParameter::power_db:
            t.power_db = {value};
            break;
    }

    NetworkScenario scn;
    const auto db = detail::broadcast(t.power_db, t.links, "power_db");
    scn.powers.resize(t.links);
    for (std::size_t i = 0; i < t.links; ++i) scn.powers[i] = db_to_linear(db[i]);
    const auto rf = detail::broadcast(t.relay_fraction, t.links, "relay_fraction");
    scn.geometries = build_parallel_geometry(t.links, t.d_max, rf[0]);
    for (std::size_t i = 0; i < t.links; ++i) {
        scn.geometries[i].d_sr = rf[i];
        scn.geometries[i].d_rd = 1.0 - rf[i];
    }
    scn.protocols = detail::broadcast(t.protocols, t.links, "protocols");
    scn.tau = t.tau;
    scn.eta = t.eta;
    scn.sigma2 = t.sigma2;
    scn.validate();
    return scn;
}

/// One Monte Carlo study: a parameter sweep with per-value trials.
struct SweepConfig {
    ScenarioTemplate scenario;
    SweepParameter parameter = SweepParameter::inter_link_distance;
    std::vector<double> values;
    int trials = 2000;
    std::vector<Scheme> schemes = {Scheme::game, Scheme::random};
    std::uint64_t master_seed = 1;
    SolverOptions solver;
    GridSpec centralized_grid;  ///< resolution of the centralized benchmark
    int workers = 1;

    void validate() const {
        if (values.empty()) throw ConfigError("sweep needs at least one value");
        if (trials < 1) throw ConfigError("trials must be at least 1");
        if (schemes.empty()) throw ConfigError("sweep needs at least one scheme");
        if (workers < 1) throw ConfigError("workers must be at least 1");
        const bool centralized =
            std::find(schemes.begin(), schemes.end(), Scheme::centralized) != schemes.end();
        if (centralized) {
            for (double v : values) {
                const std::size_t n = materialize(scenario, parameter, v).size();
                if (n > 3) {
                    throw ConfigError(
                        "the centralized scheme supports at most 3 links, but the sweep "
                        "reaches n = " + std::to_string(n) + "; drop it from schemes");
                }
            }
        }
    }
};

/// Aggregated metrics of one scheme at one sweep value. Half-widths are the
/// 95% normal approximation; NaN when a single trial leaves the variance
/// undefined. mean_iterations is NaN for schemes that do not iterate.
struct SchemeStats {
    double mean_sum_rate = 0.0;
    double ci_half_width = std::numeric_limits<double>::quiet_NaN();
    double mean_rho = 0.0;
    double mean_best_rate = 0.0;
    double mean_worst_rate = 0.0;
    double mean_iterations = std::numeric_limits<double>::quiet_NaN();
    int failures = 0;
    int trials = 0;
    std::vector<double> sum_rate_samples;  ///< per-trial sum-rates, trial order
    std::vector<double> rho_samples;       ///< per-trial link-mean ratios, trial order
    std::vector<double> gap_samples;       ///< per-trial (centralized-game)/centralized
};

struct SweepPoint {
    double value = 0.0;
    std::map<Scheme, SchemeStats> stats;
};

struct SweepResult {
    SweepParameter parameter = SweepParameter::inter_link_distance;
    std::vector<SweepPoint> points;
};

/// Mean best-link and worst-link rate over trials: per trial the max and min
/// across links, then the arithmetic mean.
inline std::pair<double, double> best_worst_rates(
    const std::vector<std::vector<double>>& per_trial_rates) {
    if (per_trial_rates.empty()) throw ConfigError("best_worst_rates needs at least one trial");
    double best = 0.0, worst = 0.0;
    for (const auto& rates : per_trial_rates) {
        if (rates.empty()) throw ConfigError("best_worst_rates needs nonempty rate vectors");
        best += *std::max_element(rates.begin(), rates.end());
        worst += *std::min_element(rates.begin(), rates.end());
    }
    const auto t = static_cast<double>(per_trial_rates.size());
    return {best / t, worst / t};
}

namespace detail {

/// Per-trial raw measurements of one scheme.
struct TrialRecord {
    double sum_rate = 0.0;
    double mean_rho = 0.0;
    double best_rate = 0.0;
    double worst_rate = 0.0;
    double iterations = std::numeric_limits<double>::quiet_NaN();
    bool failed = false;
};

inline TrialRecord record_from(const std::vector<double>& rates, std::span<const double> rho) {
    TrialRecord r;
    for (double u : rates) r.sum_rate += u;
    for (double v : rho) r.mean_rho += v;
    r.mean_rho /= static_cast<double>(rho.size());
    r.best_rate = *std::max_element(rates.begin(), rates.end());
    r.worst_rate = *std::min_element(rates.begin(), rates.end());
    return r;
}

inline SchemeStats reduce(const std::vector<TrialRecord>& records, bool iterates) {
    SchemeStats s;
    s.trials = static_cast<int>(records.size());
    s.sum_rate_samples.reserve(records.size());
    s.rho_samples.reserve(records.size());
    double it_sum = 0.0;
    for (const TrialRecord& r : records) {
        s.mean_sum_rate += r.sum_rate;
        s.mean_rho += r.mean_rho;
        s.mean_best_rate += r.best_rate;
        s.mean_worst_rate += r.worst_rate;
        if (r.failed) ++s.failures;
        if (iterates) it_sum += r.iterations;
        s.sum_rate_samples.push_back(r.sum_rate);
        s.rho_samples.push_back(r.mean_rho);
    }
    const auto t = static_cast<double>(records.size());
    s.mean_sum_rate /= t;
    s.mean_rho /= t;
    s.mean_best_rate /= t;
    s.mean_worst_rate /= t;
    if (iterates) s.mean_iterations = it_sum / t;
    if (records.size() > 1) {
        double ss = 0.0;
        for (const TrialRecord& r : records) {
            const double d = r.sum_rate - s.mean_sum_rate;
            ss += d * d;
        }
        s.ci_half_width = 1.96 * std::sqrt(ss / (t - 1.0)) / std::sqrt(t);
    }
    return s;
}

/// Runs fn(trial) for every trial index, on the caller thread or a pool.
/// Outputs land in per-trial slots, so the schedule cannot change results.
/// The first exception raised by any trial is rethrown on the caller.
template <typename Fn>
inline void for_each_trial(int trials, int workers, Fn&& fn) {
    if (workers <= 1 || trials <= 1) {
        for (int t = 0; t < trials; ++t) fn(t);
        return;
    }
    std::atomic<int> cursor{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const int t = cursor.fetch_add(1);
            if (t >= trials) return;
            try {
                fn(t);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true, std::memory_order_relaxed);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int count = std::min(workers, trials);
    pool.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace detail

/// Runs the full sweep. Stream seeds derive from (master_seed, value index,
/// trial index, purpose); power sweeps drop the value index from the salt so
/// every power level sees the same channel realizations (the channel law does
/// not depend on transmit power, and pairing the draws makes level
/// comparisons a common-random-numbers design). Reruns with an identical
/// config are bit-identical regardless of the worker count.
inline SweepResult run_sweep(const SweepConfig& config) {
    config.validate();
    SweepResult result;
    result.parameter = config.parameter;

    const bool want_game =
        std::find(config.schemes.begin(), config.schemes.end(), Scheme::game) !=
        config.schemes.end();
    const bool want_random =
        std::find(config.schemes.begin(), config.schemes.end(), Scheme::random) !=
        config.schemes.end();
    const bool want_centralized =
        std::find(config.schemes.begin(), config.schemes.end(), Scheme::centralized) !=
        config.schemes.end();

    for (std::size_t k = 0; k < config.values.size(); ++k) {
        const double value = config.values[k];
        const NetworkScenario scn = materialize(config.scenario, config.parameter, value);
        const std::uint64_t salt =
            (config.parameter == SweepParameter::power_db) ? 0 : static_cast<std::uint64_t>(k);

        std::vector<detail::TrialRecord> game_rec(config.trials), random_rec(config.trials),
            central_rec(config.trials);
        std::vector<double> gap(config.trials, std::numeric_limits<double>::quiet_NaN());

        detail::for_each_trial(config.trials, config.workers, [&](int t) {
            const auto ti = static_cast<std::uint64_t>(t);
            const ChannelRealization ch =
                sample_channels(scn, derive_stream(config.master_seed, salt, ti, 0));
            const auto coeffs = coefficients(scn, ch);

            double game_sum = std::numeric_limits<double>::quiet_NaN();
            if (want_game) {
                SolverOptions opts = config.solver;
                if (!opts.initial_profile) {
                    opts.init_seed = derive_stream(config.master_seed, salt, ti, 1);
                }
                const EquilibriumResult eq = solve(coeffs, scn.protocols, opts);
                detail::TrialRecord r = detail::record_from(eq.rates, eq.profile.rho);
                r.iterations = eq.iterations;
                r.failed = !eq.converged;
                game_rec[static_cast<std::size_t>(t)] = r;
                game_sum = r.sum_rate;
            }
            if (want_random) {
                const SplitProfile p =
                    random_profile(scn.size(), derive_stream(config.master_seed, salt, ti, 2));
                const auto rates = link_rates(coeffs, scn.protocols, p.rho);
                random_rec[static_cast<std::size_t>(t)] = detail::record_from(rates, p.rho);
            }
            if (want_centralized) {
                const CentralizedResult c =
                    centralized_optimum(scn, ch, config.centralized_grid);
                const auto rates = link_rates(coeffs, scn.protocols, c.profile.rho);
                detail::TrialRecord r = detail::record_from(rates, c.profile.rho);
                central_rec[static_cast<std::size_t>(t)] = r;
                if (want_game) {
                    gap[static_cast<std::size_t>(t)] = (r.sum_rate - game_sum) / r.sum_rate;
                }
            }
        });

        SweepPoint point;
        point.value = value;
        if (want_game) point.stats[Scheme::game] = detail::reduce(game_rec, true);
        if (want_random) point.stats[Scheme::random] = detail::reduce(random_rec, false);
        if (want_centralized) {
            SchemeStats cs = detail::reduce(central_rec, false);
            if (want_game) cs.gap_samples = gap;
            point.stats[Scheme::centralized] = std::move(cs);
        }
        result.points.push_back(std::move(point));
    }
    return result;
}

}  // namespace swipt
