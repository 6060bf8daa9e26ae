#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/common.hpp"
#include "swipt/metrics.hpp"
#include "swipt/rng.hpp"

namespace swipt {

/// Options of the simultaneous best-response iteration.
struct SolverOptions {
    double zeta = 1e-8;                  ///< per-link relative step threshold
    double fixed_point_tolerance = 1e-9; ///< residual bound certifying the fixed point
    int max_iterations = 10000;
    std::optional<std::vector<double>> initial_profile;  ///< random start when absent
    std::uint64_t init_seed = 0;         ///< seed of the random start
};

/// Converged strategy profile with its diagnostics.
struct EquilibriumResult {
    SplitProfile profile;
    int iterations = 0;
    bool converged = false;
    double residual = 0.0;  ///< max_i |B_i(profile) - profile_i|
    std::vector<double> rates;
    double sum_rate = 0.0;
};

/// Quadratic coefficients governing the sign of the AF rate's derivative:
/// c = (x+y)(w+1) - z, d = (x+y+1)(w+1).
inline std::pair<double, double> c_d_of(const LinkCoefficients& coeff, double w_i) {
    const double c = (coeff.x + coeff.y) * (w_i + 1.0) - coeff.z;
    const double d = (coeff.x + coeff.y + 1.0) * (w_i + 1.0);
    return {c, d};
}

/// kappa(rho) = c rho^2 - 2 d rho + d. Positive before the AF best response,
/// negative after it; kappa(0) = d, kappa(1) = c - d.
inline double kappa(double rho, double c, double d) {
    return c * rho * rho - 2.0 * d * rho + d;
}

/// Relative tolerance treating c as zero; both branches of the AF closed form
/// agree in that limit, the branch only guards the floating-point division.
inline constexpr double kAfEqualSplitTolerance = 1e-12;

/// Closed-form maximizer of the AF link rate over its own ratio, for fixed
/// interference w_i. Always lies strictly inside (0,1).
inline double best_response_af(const LinkCoefficients& coeff, double w_i) {
    const auto [c, d] = c_d_of(coeff, w_i);
    if (!std::isfinite(c) || !std::isfinite(d)) {
        throw NumericError("non-finite coefficients in AF best response");
    }
    if (std::abs(c) <= kAfEqualSplitTolerance * std::max(1.0, coeff.z)) {
        return 0.5;  // first-hop SINR at rho=0 equals second-hop SINR at rho=1
    }
    const double sd = std::sqrt(d);
    return sd / (sd + std::sqrt(coeff.z + w_i + 1.0));
}

/// Closed-form maximizer of the DF link rate: the ratio equalizing the two
/// hop SINRs. Smaller root of
///   y z rho^2 - (x(w+1) + y z + z) rho + x(w+1) = 0,
/// computed in the product form, which has no cancelling subtraction and
/// reduces to the linear solution x(w+1)/(x(w+1)+z) as y -> 0.
inline double best_response_df(const LinkCoefficients& coeff, double w_i) {
    const double xw1 = coeff.x * (w_i + 1.0);
    double root;
    if (coeff.y == 0.0) {
        // no first-hop interference: the equality condition is linear
        root = xw1 / (xw1 + coeff.z);
    } else {
        const double yz = coeff.y * coeff.z;
        const double b = xw1 + yz + coeff.z;
        const double disc = (xw1 - yz + coeff.z) * (xw1 - yz + coeff.z) +
                            4.0 * coeff.y * coeff.z * coeff.z;
        root = 2.0 * xw1 / (b + std::sqrt(disc));
    }
    if (!std::isfinite(root)) {
        throw NumericError("non-finite coefficients in DF best response");
    }
    return root;
}

/// Best response of link i under its protocol, given the full profile of
/// ratios (only the other links' entries matter).
inline double best_response(const LinkCoefficients& coeff, Protocol protocol,
                            std::span<const double> rho) {
    const double w = w_of(coeff, rho);
    return protocol == Protocol::af ? best_response_af(coeff, w)
                                    : best_response_df(coeff, w);
}

/// One simultaneous update: the whole best-response vector at a frozen profile.
inline std::vector<double> best_response_profile(const std::vector<LinkCoefficients>& coeffs,
                                                 std::span<const Protocol> protocols,
                                                 std::span<const double> rho) {
    std::vector<double> next(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        next[i] = best_response(coeffs[i], protocols[i], rho);
    }
    return next;
}

inline constexpr double kStepDenominatorFloor = 1e-12;

/// Simultaneous best-response iteration to the Nash equilibrium.
///
/// Every iteration applies the closed-form best responses to the frozen
/// previous profile. The iteration stops once all links satisfy the relative
/// step criterion |rho_i' - rho_i| / max(rho_i', floor) <= zeta AND the
/// fixed-point residual ||B(rho) - rho||_inf is within tolerance; the
/// residual evaluation doubles as the next iterate, so certification costs
/// nothing. Hitting max_iterations returns converged=false rather than
/// throwing.
inline EquilibriumResult solve(const std::vector<LinkCoefficients>& coeffs,
                               std::span<const Protocol> protocols,
                               const SolverOptions& options) {
    const std::size_t n = coeffs.size();
    if (options.zeta <= 0.0 || options.max_iterations < 1) {
        throw ConfigError("solver options need zeta > 0 and max_iterations >= 1");
    }

    std::vector<double> rho;
    if (options.initial_profile) {
        rho = *options.initial_profile;
        if (rho.size() != n) throw ConfigError("initial profile length mismatch");
        if (!SplitProfile{rho}.feasible()) throw ConfigError("initial profile outside [0,1]");
    } else {
        Rng rng(derive_stream(options.init_seed, 0x1e1));
        rho.resize(n);
        for (double& r : rho) r = rng.uniform01();
    }

    EquilibriumResult result;
    std::vector<double> next = best_response_profile(coeffs, protocols, rho);
    for (int t = 1;; ++t) {
        bool step_ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            const double denom = std::max(next[i], kStepDenominatorFloor);
            if (std::abs(next[i] - rho[i]) / denom > options.zeta) step_ok = false;
        }
        result.iterations = t;
        if (step_ok) {
            // The step criterion fired for every link; certify the fixed
            // point and keep iterating on the same evaluation if it fails.
            std::vector<double> certify = best_response_profile(coeffs, protocols, next);
            double r = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                r = std::max(r, std::abs(certify[i] - next[i]));
            }
            if (r <= options.fixed_point_tolerance || t >= options.max_iterations) {
                result.residual = r;
                result.converged = r <= options.fixed_point_tolerance;
                rho = std::move(next);
                break;
            }
            rho = std::move(next);
            next = std::move(certify);
            continue;
        }
        if (t >= options.max_iterations) {
            std::vector<double> certify = best_response_profile(coeffs, protocols, next);
            double r = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                r = std::max(r, std::abs(certify[i] - next[i]));
            }
            result.residual = r;
            result.converged = r <= options.fixed_point_tolerance;
            rho = std::move(next);
            break;
        }
        rho = std::move(next);
        next = best_response_profile(coeffs, protocols, rho);
    }

    result.profile = SplitProfile{std::move(rho)};
    result.rates = link_rates(coeffs, protocols, result.profile.rho);
    result.sum_rate = 0.0;
    for (double u : result.rates) result.sum_rate += u;
    return result;
}

inline EquilibriumResult solve(const NetworkScenario& scenario,
                               const ChannelRealization& channels,
                               const SolverOptions& options = {}) {
    scenario.validate();
    return solve(coefficients(scenario, channels), scenario.protocols, options);
}

/// Outcome of the empirical standard-function check on the best-response map.
struct AxiomReport {
    std::size_t positivity_checks = 0;
    std::size_t positivity_violations = 0;
    std::size_t monotonicity_checks = 0;
    std::size_t monotonicity_violations = 0;
    std::size_t scalability_checks = 0;
    std::size_t scalability_violations = 0;

    bool all_hold() const {
        return positivity_violations == 0 && monotonicity_violations == 0 &&
               scalability_violations == 0;
    }
};

/// Checks positivity, monotonicity and scalability of the best-response map
/// on the given profiles. Monotonicity uses the componentwise max/min of
/// consecutive profile pairs; scalability scales by each alpha (> 1), which
/// may leave [0,1]^N — the map is evaluated through w_i, which is defined for
/// any nonnegative vector.
inline AxiomReport check_standard_axioms(const NetworkScenario& scenario,
                                         const ChannelRealization& channels,
                                         const std::vector<SplitProfile>& trial_profiles,
                                         const std::vector<double>& alphas) {
    scenario.validate();
    const auto coeffs = coefficients(scenario, channels);
    const std::size_t n = scenario.size();
    const double slack = 1e-12;  // rounding headroom for the non-strict inequality

    AxiomReport report;
    auto br_map = [&](std::span<const double> v) {
        return best_response_profile(coeffs, scenario.protocols, v);
    };

    for (const SplitProfile& p : trial_profiles) {
        p.validate();
        const auto b = br_map(p.rho);
        ++report.positivity_checks;
        if (!std::all_of(b.begin(), b.end(), [](double v) { return v > 0.0; })) {
            ++report.positivity_violations;
        }
        for (double alpha : alphas) {
            std::vector<double> scaled(n);
            for (std::size_t i = 0; i < n; ++i) scaled[i] = alpha * p.rho[i];
            const auto b_scaled = br_map(scaled);
            ++report.scalability_checks;
            for (std::size_t i = 0; i < n; ++i) {
                if (!(alpha * b[i] > b_scaled[i])) {
                    ++report.scalability_violations;
                    break;
                }
            }
        }
    }
    for (std::size_t k = 0; k + 1 < trial_profiles.size(); ++k) {
        std::vector<double> hi(n), lo(n);
        for (std::size_t i = 0; i < n; ++i) {
            hi[i] = std::max(trial_profiles[k].rho[i], trial_profiles[k + 1].rho[i]);
            lo[i] = std::min(trial_profiles[k].rho[i], trial_profiles[k + 1].rho[i]);
        }
        const auto b_hi = br_map(hi);
        const auto b_lo = br_map(lo);
        ++report.monotonicity_checks;
        for (std::size_t i = 0; i < n; ++i) {
            if (b_hi[i] < b_lo[i] - slack) {
                ++report.monotonicity_violations;
                break;
            }
        }
    }
    return report;
}

}  // namespace swipt
