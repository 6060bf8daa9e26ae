#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "swipt/channel.hpp"

using namespace swipt;

TEST_CASE("parallel geometry spaces offsets evenly", "[channel]") {
    const auto two = build_parallel_geometry(2, 2.0, 0.5);
    REQUIRE(two.size() == 2);
    CHECK(two[0].lateral_offset == 0.0);
    CHECK(two[1].lateral_offset == 2.0);
    CHECK(two[0].d_sr == 0.5);
    CHECK(two[0].d_rd == 0.5);

    const auto one = build_parallel_geometry(1, 5.0, 0.5);
    REQUIRE(one.size() == 1);
    CHECK(one[0].lateral_offset == 0.0);

    const auto five = build_parallel_geometry(5, 5.0, 0.5);
    const double expected[] = {0.0, 1.25, 2.5, 3.75, 5.0};
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(five[i].lateral_offset == Catch::Approx(expected[i]).margin(1e-15));
    }

    for (const auto& g : five) {
        CHECK(g.d_sr + g.d_rd == 1.0);  // exact as stored
    }
}

TEST_CASE("parallel geometry rejects bad relay fractions", "[channel]") {
    CHECK_THROWS_AS(build_parallel_geometry(2, 1.0, 0.0), ConfigError);
    CHECK_THROWS_AS(build_parallel_geometry(2, 1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(build_parallel_geometry(2, 1.0, -0.3), ConfigError);
    CHECK_THROWS_AS(build_parallel_geometry(0, 1.0, 0.5), ConfigError);
    CHECK_THROWS_AS(build_parallel_geometry(2, -1.0, 0.5), ConfigError);
}

TEST_CASE("cross distances follow the parallel-lines embedding", "[channel]") {
    const LinkGeometry a{0.5, 0.5, 0.0};
    CHECK(cross_distance(a, a, NodePair::source_relay) == 0.5);

    const LinkGeometry b{0.5, 0.5, 2.0};
    CHECK(cross_distance(a, b, NodePair::relay_destination) ==
          Catch::Approx(std::sqrt(0.25 + 4.0)).epsilon(1e-15));

    const LinkGeometry c{0.3, 0.7, 0.0};
    CHECK(cross_distance(a, c, NodePair::source_relay) == 0.3);  // co-located lines
}

TEST_CASE("mean gain is the inverse power law", "[channel]") {
    CHECK(mean_gain(1.0, 3.0) == 1.0);
    CHECK(mean_gain(0.5, 2.0) == Catch::Approx(4.0).epsilon(1e-15));
    CHECK(mean_gain(2.0, 3.0) == Catch::Approx(0.125).epsilon(1e-15));
    CHECK_THROWS_AS(mean_gain(0.0, 3.0), std::domain_error);
    CHECK_THROWS_AS(mean_gain(-1.0, 3.0), std::domain_error);
}

namespace {

NetworkScenario small_scenario(std::size_t n) {
    NetworkScenario scn;
    scn.powers.assign(n, db_to_linear(15.0));
    scn.geometries = build_parallel_geometry(n, 5.0, 0.5);
    scn.protocols.assign(n, Protocol::af);
    return scn;
}

}  // namespace

TEST_CASE("scenario validation rejects broken instances", "[channel]") {
    auto scn = small_scenario(2);
    CHECK_NOTHROW(scn.validate());

    auto bad_eta = scn;
    bad_eta.eta = 1.5;
    CHECK_THROWS_WITH(bad_eta.validate(), Catch::Matchers::ContainsSubstring("eta"));

    auto bad_tau = scn;
    bad_tau.tau = 1.0;
    CHECK_THROWS_AS(bad_tau.validate(), ConfigError);

    auto bad_power = scn;
    bad_power.powers[1] = 0.0;
    CHECK_THROWS_AS(bad_power.validate(), ConfigError);

    auto mismatched = scn;
    mismatched.protocols.pop_back();
    CHECK_THROWS_AS(mismatched.validate(), ConfigError);
}

TEST_CASE("channel sampling is deterministic in (scenario, seed)", "[channel]") {
    const auto scn = small_scenario(3);
    const auto a = sample_channels(scn, 42);
    const auto b = sample_channels(scn, 42);
    REQUIRE(a.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(a.g2(i, j) == b.g2(i, j));
            CHECK(a.h2(i, j) == b.h2(i, j));
        }
    }
    const auto c = sample_channels(scn, 43);
    CHECK(a.g2(0, 0) != c.g2(0, 0));
}

TEST_CASE("single-link realization has positive 1x1 gains", "[channel]") {
    const auto scn = small_scenario(1);
    const auto ch = sample_channels(scn, 7);
    REQUIRE(ch.size() == 1);
    CHECK(ch.g2(0, 0) > 0.0);
    CHECK(ch.h2(0, 0) > 0.0);
}

TEST_CASE("sampled gains match the path-loss means", "[channel]") {
    const auto scn = small_scenario(2);
    constexpr int kDraws = 100000;
    GainMatrix gsum(2), hsum(2);
    for (int t = 0; t < kDraws; ++t) {
        const auto ch = sample_channels(scn, derive_stream(101, 0, t));
        for (std::size_t i = 0; i < 2; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                gsum(i, j) += ch.g2(i, j);
                hsum(i, j) += ch.h2(i, j);
            }
        }
    }
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const double dg =
                cross_distance(scn.geometries[i], scn.geometries[j], NodePair::source_relay);
            const double dh =
                cross_distance(scn.geometries[i], scn.geometries[j], NodePair::relay_destination);
            CHECK(gsum(i, j) / kDraws ==
                  Catch::Approx(mean_gain(dg, scn.tau)).epsilon(0.02));
            CHECK(hsum(i, j) / kDraws ==
                  Catch::Approx(mean_gain(dh, scn.tau)).epsilon(0.02));
        }
    }
}

TEST_CASE("a million sampled gains are finite and strictly positive", "[channel]") {
    const auto scn = small_scenario(1);
    bool ok = true;
    for (int t = 0; t < 500000 && ok; ++t) {
        const auto ch = sample_channels(scn, derive_stream(202, 0, t));
        ok = std::isfinite(ch.g2(0, 0)) && ch.g2(0, 0) > 0.0 && std::isfinite(ch.h2(0, 0)) &&
             ch.h2(0, 0) > 0.0;
    }
    CHECK(ok);
}

TEST_CASE("two-link fixture matches its published parameters", "[channel]") {
    const auto [scn, ch] = fixture_two_link();
    CHECK(scn.powers[0] == 5.3080);
    CHECK(scn.powers[1] == 7.1917);
    CHECK(scn.eta == 0.5);
    CHECK(scn.sigma2 == 1.0);
    CHECK(ch.g2(1, 0) == 3.0937);  // S2 -> R1
    CHECK(ch.h2(0, 1) == 1.5760);  // R1 -> D2
    CHECK(ch.g2(0, 0) == 2.1713);
    CHECK(ch.h2(1, 1) == 2.6081);
    CHECK_NOTHROW(scn.validate());
}
