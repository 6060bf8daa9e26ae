#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "swipt/common.hpp"
#include "swipt/rng.hpp"

namespace swipt {

/// Placement of one source-relay-destination link. Every link lies on its
/// own line, mutually parallel to all others: the source sits at
/// longitudinal coordinate 0, the relay at d_sr, the destination at
/// d_sr + d_rd, and the line itself is shifted sideways by lateral_offset.
struct LinkGeometry {
    double d_sr = 0.5;            ///< source-to-relay distance
    double d_rd = 0.5;            ///< relay-to-destination distance
    double lateral_offset = 0.0;  ///< perpendicular position of the link's line

    double total_length() const { return d_sr + d_rd; }
};

/// Static problem instance: everything except the fading realization.
/// Powers are linear-scale (relative to sigma2); dB conversion happens at
/// configuration load.
struct NetworkScenario {
    std::vector<double> powers;
    std::vector<LinkGeometry> geometries;
    std::vector<Protocol> protocols;
    double tau = 3.0;     ///< path loss exponent, in [2,5]
    double eta = 0.5;     ///< energy conversion efficiency, in (0,1]
    double sigma2 = 1.0;  ///< noise power

    std::size_t size() const { return powers.size(); }

    /// Throws ConfigError on any violated invariant.
    void validate() const {
        const std::size_t n = powers.size();
        if (n < 1) throw ConfigError("scenario needs at least one link");
        if (geometries.size() != n || protocols.size() != n) {
            throw ConfigError("powers, geometries and protocols must all have length " +
                              std::to_string(n));
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!(powers[i] > 0.0)) {
                throw ConfigError("power of link " + std::to_string(i + 1) +
                                  " must be positive");
            }
            const LinkGeometry& g = geometries[i];
            if (!(g.d_sr > 0.0) || !(g.d_rd > 0.0)) {
                throw ConfigError("link " + std::to_string(i + 1) +
                                  " distances d_sr and d_rd must be positive");
            }
        }
        if (!(eta > 0.0) || !(eta <= 1.0)) {
            throw ConfigError("eta must satisfy 0 < eta <= 1 (got " + std::to_string(eta) + ")");
        }
        if (!(sigma2 > 0.0)) throw ConfigError("sigma2 must be positive");
        if (!(tau >= 2.0) || !(tau <= 5.0)) {
            throw ConfigError("tau must lie in [2,5] (got " + std::to_string(tau) + ")");
        }
    }
};

/// Sampled channel power gains for one Monte Carlo trial. First index is the
/// transmitter's link, second the receiver's: g2(i,j) = |g_ij|^2 for
/// S_i -> R_j, h2(i,j) = |h_ij|^2 for R_i -> D_j.
struct ChannelRealization {
    GainMatrix g2;
    GainMatrix h2;

    std::size_t size() const { return g2.size(); }
};

/// Which node pair of two links a cross distance refers to.
enum class NodePair {
    source_relay,       ///< S_i to R_j
    relay_destination,  ///< R_i to D_j
};

/// n parallel unit-length links with lateral offsets equally spaced over
/// [0, d_max] and the relay a fixed fraction of the way along each link.
inline std::vector<LinkGeometry> build_parallel_geometry(std::size_t n, double d_max,
                                                         double relay_fraction) {
    if (n < 1) throw ConfigError("link count must be at least 1");
    if (d_max < 0.0) throw ConfigError("d_max must be nonnegative");
    if (!(relay_fraction > 0.0) || !(relay_fraction < 1.0)) {
        throw ConfigError("relay_fraction must lie strictly between 0 and 1 (got " +
                          std::to_string(relay_fraction) + ")");
    }
    std::vector<LinkGeometry> out(n);
    const double spacing = (n > 1) ? d_max / static_cast<double>(n - 1) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        out[i].d_sr = relay_fraction;
        out[i].d_rd = 1.0 - relay_fraction;
        out[i].lateral_offset = spacing * static_cast<double>(i);
    }
    return out;
}

/// Euclidean distance between a node of link i and a node of link j in the
/// parallel-lines embedding.
inline double cross_distance(const LinkGeometry& gi, const LinkGeometry& gj, NodePair pair) {
    const double dy = gi.lateral_offset - gj.lateral_offset;
    // source_relay: S_i at longitudinal 0, R_j at d_sr of link j.
    // relay_destination: R_i at d_sr of link i, D_j at the end of link j.
    const double dx = (pair == NodePair::source_relay) ? gj.d_sr
                                                       : gj.total_length() - gi.d_sr;
    return std::hypot(dx, dy);
}

/// Mean channel power gain d^(-tau) of a node pair at the given distance.
inline double mean_gain(double distance, double tau) {
    if (!(distance > 0.0)) {
        throw std::domain_error("mean_gain requires a positive distance (got " +
                                std::to_string(distance) + ")");
    }
    return std::pow(distance, -tau);
}

/// Samples one Rayleigh-fading realization: every |g_ij|^2 and |h_ij|^2 is an
/// independent exponential with mean equal to the node-pair path-loss gain.
/// Identical (scenario, seed) pairs produce bit-identical realizations.
inline ChannelRealization sample_channels(const NetworkScenario& scenario, std::uint64_t seed) {
    scenario.validate();
    const std::size_t n = scenario.size();
    Rng rng(seed);
    ChannelRealization ch;
    for (int attempt = 0;; ++attempt) {
        ch.g2 = GainMatrix(n);
        ch.h2 = GainMatrix(n);
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double d = cross_distance(scenario.geometries[i], scenario.geometries[j],
                                                NodePair::source_relay);
                ch.g2(i, j) = rng.exponential(mean_gain(d, scenario.tau));
                ok = ok && std::isfinite(ch.g2(i, j));
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const double d = cross_distance(scenario.geometries[i], scenario.geometries[j],
                                                NodePair::relay_destination);
                ch.h2(i, j) = rng.exponential(mean_gain(d, scenario.tau));
                ok = ok && std::isfinite(ch.h2(i, j));
            }
        }
        if (ok) return ch;
        if (attempt > 64) throw NumericError("channel sampling kept producing non-finite gains");
    }
}

/// The canonical two-link instance with fixed powers and gains; protocols
/// default to AF on both links.
inline std::pair<NetworkScenario, ChannelRealization> fixture_two_link() {
    NetworkScenario scn;
    scn.powers = {5.3080, 7.1917};
    scn.geometries = build_parallel_geometry(2, 1.0, 0.5);
    scn.protocols = {Protocol::af, Protocol::af};
    scn.tau = 3.0;
    scn.eta = 0.5;
    scn.sigma2 = 1.0;

    ChannelRealization ch;
    ch.g2 = GainMatrix(2);
    ch.g2(0, 0) = 2.1713;
    ch.g2(0, 1) = 1.4836;
    ch.g2(1, 0) = 3.0937;
    ch.g2(1, 1) = 0.9773;
    ch.h2 = GainMatrix(2);
    ch.h2(0, 0) = 0.4475;
    ch.h2(0, 1) = 1.5760;
    ch.h2(1, 0) = 1.5406;
    ch.h2(1, 1) = 2.6081;
    return {scn, ch};
}

}  // namespace swipt
