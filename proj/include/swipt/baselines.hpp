#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/common.hpp"
#include "swipt/game.hpp"
#include "swipt/metrics.hpp"
#include "swipt/rng.hpp"

namespace swipt {

/// Evaluation grid on [0,1]. The step is 1/round(1/resolution), so the
/// endpoints are hit exactly.
struct GridSpec {
    double resolution = 1e-3;
    bool include_endpoints = true;

    void validate() const {
        if (!(resolution > 0.0) || !(resolution <= 0.5)) {
            throw ConfigError("grid resolution must lie in (0, 0.5]");
        }
    }

    std::size_t steps() const { return static_cast<std::size_t>(std::llround(1.0 / resolution)); }

    std::vector<double> points() const {
        validate();
        const std::size_t k = steps();
        std::vector<double> out;
        const std::size_t lo = include_endpoints ? 0 : 1;
        const std::size_t hi = include_endpoints ? k : k - 1;
        out.reserve(hi - lo + 1);
        for (std::size_t j = lo; j <= hi; ++j) {
            out.push_back(static_cast<double>(j) / static_cast<double>(k));
        }
        return out;
    }
};

/// Ratios drawn i.i.d. uniform over [0,1], deterministic under the seed.
inline SplitProfile random_profile(std::size_t n, std::uint64_t seed) {
    if (n < 1) throw ConfigError("profile needs at least one link");
    Rng rng(seed);
    SplitProfile p;
    p.rho.resize(n);
    for (double& r : p.rho) r = rng.uniform01();
    return p;
}

struct GridPoint {
    double rho = 0.0;
    double utility = 0.0;
};

/// Exhaustive scan of link i's rate over its own ratio, the others held at
/// rho_others (the entry at i is ignored). Ties break toward the smaller
/// ratio. Independent of the closed forms; serves as their oracle.
inline GridPoint grid_best_response(const NetworkScenario& scenario,
                                    const ChannelRealization& channels, std::size_t i,
                                    const std::vector<double>& rho_others,
                                    const GridSpec& grid = GridSpec{1e-4, true}) {
    scenario.validate();
    grid.validate();
    if (rho_others.size() != scenario.size() || i >= scenario.size()) {
        throw ConfigError("profile length or link index does not match the scenario");
    }
    const auto coeffs = coefficients(scenario, channels);
    const LinkCoefficients& c = coeffs[i];
    const double w = w_of(c, rho_others);  // fixed while rho_i is scanned
    const Protocol proto = scenario.protocols[i];

    GridPoint best{0.0, -1.0};
    for (double r : grid.points()) {
        const double gamma = (proto == Protocol::af) ? sinr_af(c, r, w)
                                                     : sinr_df(c, r, w).end_to_end;
        const double u = rate_from_sinr(gamma);
        if (u > best.utility) best = {r, u};
    }
    return best;
}

struct CentralizedResult {
    SplitProfile profile;
    double sum_rate = 0.0;
};

namespace detail {

/// Per-link SINR pieces with the interference factored out:
/// AF: gamma = num / (d0 + d1 * (w+1)); DF: gamma = min(hop1, pz / (w+1)).
struct AxisTables {
    std::vector<double> num, d0, d1;  // AF
    std::vector<double> hop1, pz;     // DF
    bool af = true;
};

inline AxisTables axis_tables(const LinkCoefficients& c, Protocol proto,
                              const std::vector<double>& pts) {
    AxisTables t;
    t.af = proto == Protocol::af;
    const std::size_t m = pts.size();
    if (t.af) {
        t.num.resize(m);
        t.d0.resize(m);
        t.d1.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double r = pts[k];
            t.num[k] = r * (1.0 - r) * c.x * c.z;
            t.d0[k] = r * (1.0 - r) * c.y * c.z + r * c.z;
            t.d1[k] = (1.0 - r) * (c.x + c.y) + 1.0;
        }
    } else {
        t.hop1.resize(m);
        t.pz.resize(m);
        for (std::size_t k = 0; k < m; ++k) {
            const double r = pts[k];
            t.hop1[k] = (1.0 - r) * c.x / ((1.0 - r) * c.y + 1.0);
            t.pz[k] = r * c.z;
        }
    }
    return t;
}

inline double axis_gamma(const AxisTables& t, std::size_t k, double w_plus_1) {
    if (t.af) return t.num[k] / (t.d0[k] + t.d1[k] * w_plus_1);
    const double hop2 = t.pz[k] / w_plus_1;
    return t.hop1[k] < hop2 ? t.hop1[k] : hop2;
}

/// Full two-dimensional scan. Maximizes the product of (1+gamma_i), which is
/// a monotone transform of the sum-rate, scanning in lexicographic order so
/// ties keep the smallest profile.
inline void centralized_two_link(const std::vector<LinkCoefficients>& coeffs,
                                 std::span<const Protocol> protocols, const GridSpec& grid,
                                 std::vector<double>& best_rho, double& best_prod) {
    const std::vector<double> pts = grid.points();
    const AxisTables t0 = axis_tables(coeffs[0], protocols[0], pts);
    const AxisTables t1 = axis_tables(coeffs[1], protocols[1], pts);
    const double m01 = coeffs[0].w_weights[1];  // rho_1's weight in link 0's w
    const double m10 = coeffs[1].w_weights[0];

    double best = -1.0;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double w1p1 = 1.0 + m10 * pts[i];
        for (std::size_t j = 0; j < pts.size(); ++j) {
            const double g0 = axis_gamma(t0, i, 1.0 + m01 * pts[j]);
            const double g1 = axis_gamma(t1, j, w1p1);
            const double prod = (1.0 + g0) * (1.0 + g1);
            if (prod > best) {
                best = prod;
                bi = i;
                bj = j;
            }
        }
    }
    best_rho = {pts[bi], pts[bj]};
    best_prod = best;
}

inline double profile_product(const std::vector<LinkCoefficients>& coeffs,
                              std::span<const Protocol> protocols,
                              std::span<const double> rho) {
    double prod = 1.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const double w = w_of(coeffs[i], rho);
        const double g = protocols[i] == Protocol::af
                             ? sinr_af(coeffs[i], rho[i], w)
                             : sinr_df(coeffs[i], rho[i], w).end_to_end;
        prod *= 1.0 + g;
    }
    return prod;
}

/// Scan the cartesian product of per-axis point sets, keeping the best
/// (first, hence lexicographically smallest) maximizer.
inline void scan_axes(const std::vector<LinkCoefficients>& coeffs,
                      std::span<const Protocol> protocols,
                      const std::vector<std::vector<double>>& axes,
                      std::vector<double>& best_rho, double& best_prod) {
    const std::size_t n = axes.size();
    std::vector<std::size_t> idx(n, 0);
    std::vector<double> rho(n);
    while (true) {
        for (std::size_t i = 0; i < n; ++i) rho[i] = axes[i][idx[i]];
        const double prod = profile_product(coeffs, protocols, rho);
        if (prod > best_prod) {
            best_prod = prod;
            best_rho = rho;
        }
        std::size_t d = n;
        while (d > 0) {
            --d;
            if (++idx[d] < axes[d].size()) break;
            idx[d] = 0;
            if (d == 0) return;
        }
    }
}

/// Local grid refinement around the incumbent: the step shrinks tenfold per
/// stage until it reaches target_step. The DF objective is only piecewise
/// smooth (the min operator puts the optimum on a ridge), so a coarse grid
/// alone leaves a first-order position error; the refinement removes it.
inline void refine_around(const std::vector<LinkCoefficients>& coeffs,
                          std::span<const Protocol> protocols, std::vector<double>& best_rho,
                          double& best_prod, double start_step, double target_step) {
    const std::size_t n = coeffs.size();
    for (double step = start_step / 10.0; step >= target_step * 0.999; step /= 10.0) {
        const double window = 15.0 * step;
        std::vector<std::vector<double>> axes(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double lo = std::max(0.0, best_rho[i] - window);
            const double hi = std::min(1.0, best_rho[i] + window);
            for (double r = lo; r <= hi + 0.5 * step; r += step) {
                axes[i].push_back(std::min(r, 1.0));
            }
        }
        scan_axes(coeffs, protocols, axes, best_rho, best_prod);
    }
}

}  // namespace detail

/// Exhaustive grid maximization of the network sum-rate; the centralized
/// benchmark. Supports one to three links (the cost grows as
/// resolution^(-n)): full grids at one and two links, a 1e-2 coarse pass at
/// three. Every path finishes with local refinement down to a 1e-6 step, so
/// the returned value is accurate enough to dominate the game solution even
/// on the ridge-shaped DF objective.
inline CentralizedResult centralized_optimum(const NetworkScenario& scenario,
                                             const ChannelRealization& channels,
                                             const GridSpec& grid = {}) {
    scenario.validate();
    grid.validate();
    const std::size_t n = scenario.size();
    if (n > 3) {
        throw CapabilityError(
            "centralized exhaustive search supports at most 3 links (got " + std::to_string(n) +
            "); use the game solution for larger networks");
    }
    const auto coeffs = coefficients(scenario, channels);
    constexpr double kRefineStep = 1e-7;

    std::vector<double> best_rho(n, 0.0);
    double best_prod = -1.0;
    double scanned_step = grid.resolution;
    if (n == 1) {
        detail::scan_axes(coeffs, scenario.protocols, {grid.points()}, best_rho, best_prod);
    } else if (n == 2) {
        detail::centralized_two_link(coeffs, scenario.protocols, grid, best_rho, best_prod);
    } else {
        const GridSpec coarse{std::max(grid.resolution, 1e-2), grid.include_endpoints};
        scanned_step = coarse.resolution;
        const auto pts = coarse.points();
        detail::scan_axes(coeffs, scenario.protocols, {pts, pts, pts}, best_rho, best_prod);
    }
    detail::refine_around(coeffs, scenario.protocols, best_rho, best_prod, scanned_step,
                          kRefineStep);
    return {SplitProfile{best_rho}, 0.5 * std::log2(best_prod)};
}

}  // namespace swipt
