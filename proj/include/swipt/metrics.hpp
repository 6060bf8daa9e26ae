#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "swipt/channel.hpp"
#include "swipt/common.hpp"

namespace swipt {

/// Per-link SINR coefficients of one channel realization.
///
/// x is the first-hop SNR, y the first-hop INR, z the second-hop SNR when the
/// relay harvests everything, and w_weights the linear map from the other
/// links' splitting ratios to this link's second-hop INR:
///   w_i(rho) = sum_j w_weights[j] * rho_j,  with w_weights[index] = 0.
struct LinkCoefficients {
    std::size_t index = 0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    std::vector<double> w_weights;
};

/// Strategy vector: one power splitting ratio per link, each in [0,1].
struct SplitProfile {
    std::vector<double> rho;

    std::size_t size() const { return rho.size(); }

    bool feasible() const {
        return std::all_of(rho.begin(), rho.end(),
                           [](double r) { return r >= 0.0 && r <= 1.0; });
    }

    void validate() const {
        if (!feasible()) throw ConfigError("profile has a ratio outside [0,1]");
    }
};

/// Builds every link's coefficients from a scenario and realization.
inline std::vector<LinkCoefficients> coefficients(const NetworkScenario& scenario,
                                                  const ChannelRealization& channels) {
    const std::size_t n = scenario.size();
    if (channels.size() != n) {
        throw ConfigError("channel realization is " + std::to_string(channels.size()) +
                          "x" + std::to_string(channels.size()) + " but the scenario has " +
                          std::to_string(n) + " links");
    }
    const double s2 = scenario.sigma2;
    const double eta = scenario.eta;

    // received[j] = total source power arriving at relay j
    std::vector<double> received(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t m = 0; m < n; ++m) {
            received[j] += scenario.powers[m] * channels.g2(m, j);
        }
    }

    std::vector<LinkCoefficients> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        LinkCoefficients& c = out[i];
        c.index = i;
        c.x = scenario.powers[i] * channels.g2(i, i) / s2;
        c.y = (received[i] - scenario.powers[i] * channels.g2(i, i)) / s2;
        c.z = eta * received[i] * channels.h2(i, i) / s2;
        c.w_weights.assign(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) c.w_weights[j] = eta * received[j] * channels.h2(j, i) / s2;
        }
    }
    return out;
}

/// Second-hop INR of link i under the given ratios. Ratios enter only
/// through this linear form, so any nonnegative vector is accepted (the
/// standard-function axioms are checked on vectors outside [0,1]^N).
inline double w_of(const LinkCoefficients& c, std::span<const double> rho) {
    double w = 0.0;
    for (std::size_t j = 0; j < c.w_weights.size(); ++j) {
        w += c.w_weights[j] * rho[j];
    }
    return w;
}

/// End-to-end SINR of an AF link at ratio rho_i given interference w_i.
inline double sinr_af(const LinkCoefficients& c, double rho_i, double w_i) {
    const double num = rho_i * (1.0 - rho_i) * c.x * c.z;
    const double den = rho_i * (1.0 - rho_i) * c.y * c.z +
                       (1.0 - rho_i) * (c.x + c.y) * (w_i + 1.0) + rho_i * c.z + w_i + 1.0;
    return num / den;
}

/// Hop and end-to-end SINRs of a DF link.
struct DfSinr {
    double hop1 = 0.0;        ///< relay decoding SINR
    double hop2 = 0.0;        ///< destination SINR
    double end_to_end = 0.0;  ///< min of the two hops
};

inline DfSinr sinr_df(const LinkCoefficients& c, double rho_i, double w_i) {
    DfSinr s;
    s.hop1 = (1.0 - rho_i) * c.x / ((1.0 - rho_i) * c.y + 1.0);
    s.hop2 = rho_i * c.z / (w_i + 1.0);
    s.end_to_end = std::min(s.hop1, s.hop2);
    return s;
}

/// Achievable rate (bits per channel use) from an end-to-end SINR; the 1/2
/// accounts for the two hops.
inline double rate_from_sinr(double gamma) { return 0.5 * std::log2(1.0 + gamma); }

/// Achievable rate of one link under its protocol at the given profile.
inline double rate(const LinkCoefficients& c, Protocol protocol, std::span<const double> rho) {
    const double w = w_of(c, rho);
    const double gamma = (protocol == Protocol::af) ? sinr_af(c, rho[c.index], w)
                                                    : sinr_df(c, rho[c.index], w).end_to_end;
    return rate_from_sinr(gamma);
}

/// Per-link rates at a profile, protocols taken per link.
inline std::vector<double> link_rates(const std::vector<LinkCoefficients>& coeffs,
                                      std::span<const Protocol> protocols,
                                      std::span<const double> rho) {
    std::vector<double> out(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        out[i] = rate(coeffs[i], protocols[i], rho);
    }
    return out;
}

inline double sum_rate(const std::vector<LinkCoefficients>& coeffs,
                       std::span<const Protocol> protocols, std::span<const double> rho) {
    double total = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        total += rate(coeffs[i], protocols[i], rho);
    }
    return total;
}

/// Network sum-rate at a profile.
inline double sum_rate(const NetworkScenario& scenario, const ChannelRealization& channels,
                       const SplitProfile& profile) {
    profile.validate();
    return sum_rate(coefficients(scenario, channels), scenario.protocols, profile.rho);
}

/// Energy harvested at relay i when it diverts the fraction rho_i of its
/// received signal power.
inline double harvested_power(const NetworkScenario& scenario, const ChannelRealization& channels,
                              std::size_t i, double rho_i) {
    double received = 0.0;
    for (std::size_t m = 0; m < scenario.size(); ++m) {
        received += scenario.powers[m] * channels.g2(m, i);
    }
    return scenario.eta * rho_i * received;
}

}  // namespace swipt
