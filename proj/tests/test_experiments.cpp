#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "swipt/experiments.hpp"
#include "swipt/io.hpp"

using namespace swipt;

namespace {

SweepConfig tiny_sweep() {
    SweepConfig cfg;
    cfg.scenario.links = 2;
    cfg.scenario.power_db = {15.0};
    cfg.scenario.protocols = {Protocol::df};
    cfg.parameter = SweepParameter::inter_link_distance;
    cfg.values = {2.0, 5.0};
    cfg.trials = 5;
    cfg.schemes = {Scheme::game, Scheme::random};
    cfg.master_seed = 77;
    return cfg;
}

}  // namespace

TEST_CASE("materialize broadcasts per-link fields", "[experiments]") {
    ScenarioTemplate t;
    t.links = 3;
    t.power_db = {10.0};
    t.protocols = {Protocol::df};
    t.relay_fraction = {0.25, 0.5, 0.75};
    const NetworkScenario scn = materialize(t, SweepParameter::inter_link_distance, 4.0);
    REQUIRE(scn.size() == 3);
    CHECK(scn.powers[2] == Catch::Approx(10.0).epsilon(1e-12));
    CHECK(scn.protocols[2] == Protocol::df);
    CHECK(scn.geometries[0].d_sr == 0.25);
    CHECK(scn.geometries[2].d_sr == 0.75);
    CHECK(scn.geometries[2].d_rd == Catch::Approx(0.25).epsilon(1e-12));
    CHECK(scn.geometries[1].lateral_offset == Catch::Approx(2.0).epsilon(1e-12));

    ScenarioTemplate scalar = t;
    scalar.relay_fraction = {0.5};  // per-link lists cannot follow a link-count sweep
    const NetworkScenario grown = materialize(scalar, SweepParameter::link_count, 5.0);
    CHECK(grown.size() == 5);
    CHECK_THROWS_AS(materialize(t, SweepParameter::link_count, 5.0), ConfigError);

    CHECK_THROWS_AS(materialize(scalar, SweepParameter::link_count, 2.5), ConfigError);

    ScenarioTemplate bad = t;
    bad.power_db = {1.0, 2.0};  // neither 1 nor 3 entries
    CHECK_THROWS_AS(materialize(bad, SweepParameter::inter_link_distance, 1.0), ConfigError);
}

TEST_CASE("power sweep overrides every link's power", "[experiments]") {
    ScenarioTemplate t;
    t.links = 4;
    const NetworkScenario scn = materialize(t, SweepParameter::power_db, 20.0);
    for (double p : scn.powers) CHECK(p == Catch::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("best and worst link rates", "[experiments]") {
    CHECK(best_worst_rates({{1.5}}) == std::pair<double, double>{1.5, 1.5});
    const auto [best, worst] = best_worst_rates({{1.0, 2.0, 3.0}});
    CHECK(best == 3.0);
    CHECK(worst == 1.0);
    const auto [b2, w2] = best_worst_rates({{1.0, 3.0}, {5.0, 2.0}});
    CHECK(b2 == Catch::Approx(4.0));
    CHECK(w2 == Catch::Approx(1.5));
    CHECK_THROWS_AS(best_worst_rates({}), ConfigError);
}

TEST_CASE("single-trial sweep passes statistics through", "[experiments]") {
    SweepConfig cfg = tiny_sweep();
    cfg.values = {3.0};
    cfg.trials = 1;
    cfg.schemes = {Scheme::game};
    const SweepResult res = run_sweep(cfg);
    REQUIRE(res.points.size() == 1);
    const SchemeStats& s = res.points[0].stats.at(Scheme::game);
    CHECK(s.trials == 1);
    CHECK(std::isnan(s.ci_half_width));
    CHECK(s.failures == 0);
    REQUIRE(s.sum_rate_samples.size() == 1);
    CHECK(s.mean_sum_rate == s.sum_rate_samples[0]);
    CHECK(s.mean_best_rate >= s.mean_worst_rate);

    // the single trial is an ordinary equilibrium computation
    const NetworkScenario scn = materialize(cfg.scenario, cfg.parameter, 3.0);
    const auto ch = sample_channels(scn, derive_stream(cfg.master_seed, 0, 0, 0));
    SolverOptions opts = cfg.solver;
    opts.init_seed = derive_stream(cfg.master_seed, 0, 0, 1);
    const EquilibriumResult eq = solve(scn, ch, opts);
    CHECK(s.mean_sum_rate == Catch::Approx(eq.sum_rate).epsilon(1e-15));
    CHECK(s.mean_iterations == static_cast<double>(eq.iterations));
}

TEST_CASE("sweep reruns are bit-identical, independent of workers", "[experiments]") {
    SweepConfig cfg = tiny_sweep();
    const std::string csv1 = sweep_to_csv(run_sweep(cfg));
    const std::string csv2 = sweep_to_csv(run_sweep(cfg));
    CHECK(csv1 == csv2);

    SweepConfig threaded = cfg;
    threaded.workers = 4;
    CHECK(sweep_to_csv(run_sweep(threaded)) == csv1);

    SweepConfig reseeded = cfg;
    reseeded.master_seed = 78;
    CHECK(sweep_to_csv(run_sweep(reseeded)) != csv1);
}

TEST_CASE("distinct trials see distinct channels", "[experiments]") {
    const NetworkScenario scn = materialize(tiny_sweep().scenario,
                                            SweepParameter::inter_link_distance, 2.0);
    const auto a = sample_channels(scn, derive_stream(77, 0, 0, 0));
    const auto b = sample_channels(scn, derive_stream(77, 0, 1, 0));
    CHECK(a.g2(0, 0) != b.g2(0, 0));
}

TEST_CASE("power sweeps share channel realizations across values", "[experiments]") {
    SweepConfig cfg = tiny_sweep();
    cfg.parameter = SweepParameter::power_db;
    cfg.values = {5.0, 25.0};
    cfg.trials = 3;
    cfg.schemes = {Scheme::random};
    const SweepResult res = run_sweep(cfg);
    // identical channels and identical random profiles, so the random
    // scheme's mean rho coincides across power levels
    CHECK(res.points[0].stats.at(Scheme::random).mean_rho ==
          res.points[1].stats.at(Scheme::random).mean_rho);
    // while the rates themselves differ with power
    CHECK(res.points[0].stats.at(Scheme::random).mean_sum_rate !=
          res.points[1].stats.at(Scheme::random).mean_sum_rate);
}

TEST_CASE("centralized scheme is rejected upfront for large networks", "[experiments]") {
    SweepConfig cfg = tiny_sweep();
    cfg.parameter = SweepParameter::link_count;
    cfg.values = {2.0, 6.0};
    cfg.schemes = {Scheme::game, Scheme::centralized};
    CHECK_THROWS_AS(run_sweep(cfg), ConfigError);
}

TEST_CASE("sweep config validation", "[experiments]") {
    SweepConfig cfg = tiny_sweep();
    cfg.values.clear();
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = tiny_sweep();
    cfg.trials = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = tiny_sweep();
    cfg.schemes.clear();
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = tiny_sweep();
    cfg.workers = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("game dominates random for a well-separated DF pair", "[experiments]") {
    SweepConfig cfg = tiny_sweep();
    cfg.values = {5.0};
    cfg.trials = 100;
    const SweepResult res = run_sweep(cfg);
    const auto& game = res.points[0].stats.at(Scheme::game);
    const auto& rnd = res.points[0].stats.at(Scheme::random);
    CHECK(game.mean_sum_rate > rnd.mean_sum_rate);
    CHECK(game.failures == 0);
    CHECK(game.mean_iterations > 0.0);
}

TEST_CASE("five-link DF game lifts the worst link above random", "[experiments]") {
    SweepConfig cfg;
    cfg.scenario.links = 5;
    cfg.scenario.power_db = {15.0};
    cfg.scenario.protocols = {Protocol::df};
    cfg.scenario.d_max = 5.0;
    cfg.parameter = SweepParameter::power_db;
    cfg.values = {15.0};
    cfg.trials = 300;
    cfg.master_seed = 4242;
    const SweepResult res = run_sweep(cfg);
    const auto& game = res.points[0].stats.at(Scheme::game);
    const auto& rnd = res.points[0].stats.at(Scheme::random);
    CHECK(game.mean_worst_rate >= rnd.mean_worst_rate);
    CHECK(game.mean_best_rate >= rnd.mean_best_rate);
    CHECK(game.failures == 0);
}

TEST_CASE("hybrid sweeps take protocols from the per-link list", "[experiments]") {
    SweepConfig cfg = tiny_sweep();
    cfg.scenario.links = 4;
    cfg.scenario.protocols = {Protocol::df, Protocol::af, Protocol::df, Protocol::af};
    cfg.values = {3.0};
    cfg.trials = 5;
    const NetworkScenario scn = materialize(cfg.scenario, cfg.parameter, 3.0);
    CHECK(scn.protocols[0] == Protocol::df);
    CHECK(scn.protocols[1] == Protocol::af);
    const SweepResult res = run_sweep(cfg);
    CHECK(res.points[0].stats.at(Scheme::game).failures == 0);
}

TEST_CASE("game-only sweeps run at any link count", "[experiments]") {
    SweepConfig cfg = tiny_sweep();
    cfg.parameter = SweepParameter::link_count;
    cfg.values = {6.0};
    cfg.trials = 3;
    cfg.schemes = {Scheme::game};
    const SweepResult res = run_sweep(cfg);
    CHECK(res.points[0].stats.at(Scheme::game).failures == 0);
    CHECK(res.points[0].stats.count(Scheme::centralized) == 0);
}
