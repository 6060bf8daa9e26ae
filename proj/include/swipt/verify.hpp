#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "swipt/baselines.hpp"
#include "swipt/channel.hpp"
#include "swipt/common.hpp"
#include "swipt/game.hpp"
#include "swipt/metrics.hpp"

namespace swipt {

/// How protocols are assigned when generating random instances.
enum class ProtocolMix { pure_af, pure_df, mixed };

/// Ranges for randomly generated problem instances. Defaults stress the
/// closed forms across wide SNR/INR regimes.
struct InstanceOptions {
    std::size_t n_min = 2;
    std::size_t n_max = 6;
    ProtocolMix mix = ProtocolMix::mixed;
    double power_db_min = 0.0;
    double power_db_max = 20.0;
    double d_max_min = 0.5;
    double d_max_max = 5.0;
    double relay_fraction_min = 0.25;
    double relay_fraction_max = 0.75;
    double tau_min = 2.0;
    double tau_max = 5.0;
    double eta_min = 0.3;
    double eta_max = 1.0;
};

struct Instance {
    NetworkScenario scenario;
    ChannelRealization channels;
};

/// A random scenario plus one sampled realization, deterministic in the seed.
inline Instance random_instance(std::uint64_t seed, const InstanceOptions& opt = {}) {
    Rng rng(derive_stream(seed, 0x5ce));
    const std::size_t n = opt.n_min + rng.below(opt.n_max - opt.n_min + 1);

    NetworkScenario scn;
    scn.tau = rng.uniform(opt.tau_min, opt.tau_max);
    scn.eta = rng.uniform(opt.eta_min, opt.eta_max);
    scn.sigma2 = 1.0;
    scn.powers.resize(n);
    for (double& p : scn.powers) {
        p = db_to_linear(rng.uniform(opt.power_db_min, opt.power_db_max));
    }
    scn.geometries = build_parallel_geometry(n, rng.uniform(opt.d_max_min, opt.d_max_max), 0.5);
    for (LinkGeometry& g : scn.geometries) {
        g.d_sr = rng.uniform(opt.relay_fraction_min, opt.relay_fraction_max);
        g.d_rd = 1.0 - g.d_sr;
    }
    scn.protocols.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        switch (opt.mix) {
            case ProtocolMix::pure_af: scn.protocols[i] = Protocol::af; break;
            case ProtocolMix::pure_df: scn.protocols[i] = Protocol::df; break;
            case ProtocolMix::mixed:
                scn.protocols[i] = rng.below(2) ? Protocol::df : Protocol::af;
                break;
        }
    }
    scn.validate();
    return {scn, sample_channels(scn, derive_stream(seed, 0xc4a))};
}

/// One row of the verification report.
struct CheckResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t violations = 0;
    double worst = 0.0;  ///< largest observed deviation, check-specific units

    bool passed() const { return violations == 0; }
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    std::size_t instances = 0;

    bool all_passed() const {
        for (const CheckResult& c : checks) {
            if (!c.passed()) return false;
        }
        return true;
    }
};

struct VerifyOptions {
    std::size_t instances = 100;
    std::uint64_t seed = 1;
    double oracle_grid_resolution = 1e-4;
    std::size_t multistart_count = 10;
    std::size_t axiom_triples_per_instance = 100;
    std::size_t unimodality_grid_steps = 1000;
};

namespace detail {

inline double utility_at(const LinkCoefficients& c, Protocol proto, double rho_i, double w) {
    const double g = proto == Protocol::af ? sinr_af(c, rho_i, w)
                                           : sinr_df(c, rho_i, w).end_to_end;
    return rate_from_sinr(g);
}

}  // namespace detail

/// Closed-form best responses against the exhaustive grid, and the DF
/// hop-equality condition at each DF best response.
inline void check_best_responses(const Instance& inst, std::uint64_t seed, const GridSpec& grid,
                                 CheckResult& br_check, CheckResult& df_equality) {
    const auto coeffs = coefficients(inst.scenario, inst.channels);
    const std::size_t n = inst.scenario.size();
    Rng rng(derive_stream(seed, 0xb4));
    std::vector<double> rho(n);
    for (double& r : rho) r = rng.uniform01();

    for (std::size_t i = 0; i < n; ++i) {
        const Protocol proto = inst.scenario.protocols[i];
        const double closed = best_response(coeffs[i], proto, rho);
        const GridPoint oracle = grid_best_response(inst.scenario, inst.channels, i, rho, grid);
        const double err = std::abs(closed - oracle.rho);
        ++br_check.cases;
        br_check.worst = std::max(br_check.worst, err);
        if (err > 2.0 * grid.resolution) ++br_check.violations;

        if (proto == Protocol::df) {
            const double w = w_of(coeffs[i], rho);
            const DfSinr s = sinr_df(coeffs[i], closed, w);
            const double rel = std::abs(s.hop1 - s.hop2) / std::max(s.hop1, 1.0);
            ++df_equality.cases;
            df_equality.worst = std::max(df_equality.worst, rel);
            if (rel > 1e-9) ++df_equality.violations;
        }
    }
}

/// Multi-start fixed-point uniqueness and residual certification.
inline void check_uniqueness(const Instance& inst, std::uint64_t seed, std::size_t starts,
                             CheckResult& residual_check, CheckResult& uniqueness_check) {
    const auto coeffs = coefficients(inst.scenario, inst.channels);
    std::vector<std::vector<double>> profiles;
    profiles.reserve(starts);
    for (std::size_t s = 0; s < starts; ++s) {
        SolverOptions opts;
        opts.init_seed = derive_stream(seed, 0x57a, s);
        const EquilibriumResult eq = solve(coeffs, inst.scenario.protocols, opts);
        ++residual_check.cases;
        residual_check.worst = std::max(residual_check.worst, eq.residual);
        if (!eq.converged || eq.residual > 1e-9) ++residual_check.violations;
        profiles.push_back(eq.profile.rho);
    }
    for (std::size_t a = 0; a < profiles.size(); ++a) {
        for (std::size_t b = a + 1; b < profiles.size(); ++b) {
            double diff = 0.0;
            for (std::size_t i = 0; i < profiles[a].size(); ++i) {
                diff = std::max(diff, std::abs(profiles[a][i] - profiles[b][i]));
            }
            ++uniqueness_check.cases;
            uniqueness_check.worst = std::max(uniqueness_check.worst, diff);
            if (diff > 1e-6) ++uniqueness_check.violations;
        }
    }
}

/// Standard-function axioms on random profile/alpha triples.
inline void check_axioms(const Instance& inst, std::uint64_t seed, std::size_t triples,
                         CheckResult& out) {
    const std::size_t n = inst.scenario.size();
    Rng rng(derive_stream(seed, 0xa71));
    std::vector<SplitProfile> profiles(2);
    std::vector<double> alphas(1);
    for (std::size_t k = 0; k < triples; ++k) {
        for (SplitProfile& p : profiles) {
            p.rho.resize(n);
            for (double& r : p.rho) r = rng.uniform01();
        }
        alphas[0] = 1.0 + 9.0 * rng.uniform01();  // alpha in (1, 10)
        const AxiomReport rep =
            check_standard_axioms(inst.scenario, inst.channels, profiles, alphas);
        ++out.cases;
        if (!rep.all_hold()) ++out.violations;
    }
}

/// AF quasi-concavity: the sampled utility is unimodal, and the sign of its
/// forward difference matches the sign of kappa away from the root.
inline void check_af_unimodality(const Instance& inst, std::uint64_t seed, std::size_t steps,
                                 CheckResult& unimodal, CheckResult& kappa_sign) {
    const auto coeffs = coefficients(inst.scenario, inst.channels);
    const std::size_t n = inst.scenario.size();
    Rng rng(derive_stream(seed, 0x0d1));
    std::vector<double> rho(n);
    for (double& r : rho) r = rng.uniform01();

    const double h = 1.0 / static_cast<double>(steps);
    for (std::size_t i = 0; i < n; ++i) {
        if (inst.scenario.protocols[i] != Protocol::af) continue;
        const double w = w_of(coeffs[i], rho);

        std::vector<double> u(steps + 1);
        for (std::size_t k = 0; k <= steps; ++k) {
            u[k] = detail::utility_at(coeffs[i], Protocol::af, h * static_cast<double>(k), w);
        }
        std::size_t peak = 0;
        for (std::size_t k = 1; k <= steps; ++k) {
            if (u[k] > u[peak]) peak = k;
        }
        bool ok = true;
        const double eps = 1e-12;
        for (std::size_t k = 0; k < peak; ++k) ok = ok && u[k + 1] >= u[k] - eps;
        for (std::size_t k = peak; k < steps; ++k) ok = ok && u[k + 1] <= u[k] + eps;
        ++unimodal.cases;
        if (!ok) ++unimodal.violations;

        const auto [c, d] = c_d_of(coeffs[i], w);
        const double root = best_response_af(coeffs[i], w);
        for (std::size_t k = 0; k < steps; ++k) {
            const double lo = h * static_cast<double>(k);
            const double hi = lo + h;
            if (std::abs(lo - root) <= 1e-3 || std::abs(hi - root) <= 1e-3) continue;
            if ((lo - root) * (hi - root) < 0.0) continue;  // straddles the root
            const double fd = u[k + 1] - u[k];
            const double ks = kappa(0.5 * (lo + hi), c, d);
            ++kappa_sign.cases;
            if (fd * ks < 0.0 && std::abs(fd) > 1e-14) ++kappa_sign.violations;
        }
    }
}

/// The full property battery over randomly generated instances.
inline VerifyReport run_property_battery(const VerifyOptions& opt) {
    VerifyReport report;
    report.instances = opt.instances;
    CheckResult br{"best response vs grid oracle"};
    CheckResult dfeq{"DF hop equality at best response"};
    CheckResult res{"fixed-point residual <= 1e-9"};
    CheckResult uniq{"multi-start agreement <= 1e-6"};
    CheckResult axioms{"standard-function axioms"};
    CheckResult unimodal{"AF utility unimodality"};
    CheckResult ksign{"kappa sign vs finite difference"};

    const GridSpec grid{opt.oracle_grid_resolution, true};
    for (std::size_t k = 0; k < opt.instances; ++k) {
        const std::uint64_t s = derive_stream(opt.seed, 0x1457, k);
        const Instance inst = random_instance(s);
        check_best_responses(inst, s, grid, br, dfeq);
        check_uniqueness(inst, s, opt.multistart_count, res, uniq);
        check_axioms(inst, s, opt.axiom_triples_per_instance, axioms);
        check_af_unimodality(inst, s, opt.unimodality_grid_steps, unimodal, ksign);
    }
    report.checks = {br, dfeq, res, uniq, axioms, unimodal, ksign};
    return report;
}

/// Fixed-width pass/fail table.
inline void print_report(const VerifyReport& report, std::ostream& os) {
    os << "property battery over " << report.instances << " random instances\n";
    char line[160];
    for (const CheckResult& c : report.checks) {
        std::snprintf(line, sizeof line, "%-38s %10zu cases %8zu violations  worst %.3e  %s\n",
                      c.name.c_str(), c.cases, c.violations, c.worst,
                      c.passed() ? "PASS" : "FAIL");
        os << line;
    }
    if (report.instances == 0) {
        os << "warning: instance count is 0; every check passed vacuously\n";
    }
}

}  // namespace swipt
