#include <doctest.h>

#include <cmath>

#include "hydrocm/channel.hpp"
#include "hydrocm/engine.hpp"
#include "hydrocm/error.hpp"
#include "hydrocm/scheduler.hpp"
#include "test_support.hpp"

using namespace hydrocm;

namespace {

MigrationMessage message(std::uint64_t seq) { return {Genome(4), static_cast<double>(seq), 0, seq}; }

RunConfig config_for(TopologySpec topology, std::uint64_t budget, std::uint64_t seed) {
    RunConfig rc;
    rc.topology = std::move(topology);
    rc.evaluation_budget = budget;
    rc.seed = seed;
    return rc;
}

void check_run_invariants(const RunResult& r, const Problem& problem) {
    std::uint64_t sum = 0;
    for (const auto& island : r.per_island) sum += island.evaluations;
    CHECK(sum == r.total_evaluations);
    REQUIRE_FALSE(r.trace.empty());
    CHECK(r.trace.front().time_ms == 0.0);
    for (std::size_t i = 1; i < r.trace.size(); ++i) {
        CHECK(r.trace[i].time_ms > r.trace[i - 1].time_ms);
        CHECK(r.trace[i].fitness > r.trace[i - 1].fitness);
    }
    CHECK(r.trace.back().fitness <= r.best_fitness);
    if (r.success) CHECK(problem.is_optimum(r.best_fitness));
}

}  // namespace

TEST_CASE("migration channel") {
    MigrationChannel ch;
    SUBCASE("send then poll is FIFO") {
        ch.send(message(1));
        ch.send(message(2));
        const auto got = ch.poll();
        REQUIRE(got.size() == 2);
        CHECK(got[0].seq == 1);
        CHECK(got[1].seq == 2);
        CHECK(ch.pending() == 0);
    }
    SUBCASE("overflow drops the oldest") {
        for (std::uint64_t i = 1; i <= 9; ++i) ch.send(message(i));
        CHECK(ch.dropped() == 1);
        const auto got = ch.poll();
        REQUIRE(got.size() == 8);
        CHECK(got.front().seq == 2);
        CHECK(got.back().seq == 9);
    }
    SUBCASE("poll on an empty channel returns nothing") {
        CHECK(ch.poll().empty());
        CHECK(ch.dropped() == 0);
    }
    CHECK_THROWS_AS(MigrationChannel{0}, ParameterError);
}

TEST_CASE("virtual scheduler") {
    SUBCASE("factor 0.5 runs half as often") {
        const std::vector<double> speeds{1.0, 0.5};
        VirtualScheduler s(speeds);
        const auto counts = s.simulate(100);
        CHECK(counts[0] == 100);
        CHECK(counts[1] == 50);
        CHECK(static_cast<double>(counts[0]) / static_cast<double>(counts[1]) == 2.0);
    }
    SUBCASE("equal factors give plain round robin") {
        const std::vector<double> speeds{1.0, 1.0, 1.0};
        VirtualScheduler s(speeds);
        for (int t = 0; t < 5; ++t) CHECK(s.next_tick() == std::vector<std::size_t>{0, 1, 2});
        CHECK(s.now() == 5);
    }
    SUBCASE("factor 0.35 over a long horizon") {
        const std::vector<double> speeds{1.0, 0.35};
        VirtualScheduler s(speeds);
        const auto counts = s.simulate(100'000);
        CHECK(counts[0] == 100'000);
        CHECK(counts[1] == 35'000);
    }
    SUBCASE("factors above one run several times per tick") {
        const std::vector<double> speeds{2.5, 1.0};
        VirtualScheduler s(speeds);
        const auto counts = s.simulate(10);
        CHECK(counts[0] == 25);
        CHECK(counts[1] == 10);
    }
    const std::vector<double> bad{1.0, 0.0};
    CHECK_THROWS_AS(VirtualScheduler{bad}, ParameterError);
}

TEST_CASE("stop signal") {
    StopSignal s;
    CHECK_FALSE(s.raised());
    terminate_broadcast(s);
    terminate_broadcast(s);
    CHECK(s.raised());
}

TEST_CASE("single island matches the panmictic baseline") {
    const Problem problem(MmdpInstance{3});
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto ga = run_experiment(config_for(single_node_topology(Algorithm::ssga), 20'000, seed), problem);
        CHECK(ga == run_panmictic_ssga(GaParams{}, problem, 20'000, seed));
        const auto sa = run_experiment(config_for(single_node_topology(Algorithm::sa), 5'000, seed), problem);
        CHECK(sa == run_panmictic_sa(SaParams{}, problem, 5'000, seed));
    }
}

TEST_CASE("Ethane G on MMDP k=5") {
    const Problem problem(MmdpInstance{5});
    int solved = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const auto r = run_experiment(config_for(ethane_topology(EthaneVariant::G), 500'000, seed), problem);
        check_run_invariants(r, problem);
        solved += r.success;
    }
    CHECK(solved >= 95);
}

TEST_CASE("virtual-time runs replay exactly") {
    const Problem problem(generate_ssp_instance(16, 2));
    for (auto topo : {ethane_topology(EthaneVariant::S), ring_topology(8, {0, 3})}) {
        const auto rc = config_for(topo, 30'000, 17);
        CHECK(run_experiment(rc, problem) == run_experiment(rc, problem));
    }
}

TEST_CASE("termination") {
    SUBCASE("success on one island stops every island") {
        const Problem problem(MmdpInstance{2});
        const auto r = run_experiment(config_for(ethane_topology(EthaneVariant::G), 1'000'000, 4), problem);
        REQUIRE(r.success);
        CHECK(r.total_evaluations < 1'000'000);
        CHECK(r.per_island.size() == 8);
        check_run_invariants(r, problem);
    }
    SUBCASE("no success: every island stops at the budget") {
        const Problem problem(MmdpInstance{25});
        const std::uint64_t budget = 40'000;
        const auto r = run_experiment(config_for(ethane_topology(EthaneVariant::S), budget, 4), problem);
        CHECK_FALSE(r.success);
        CHECK(r.total_evaluations >= budget);
        // Only immigrant evaluations in the final exchange may overshoot.
        CHECK(r.total_evaluations <= budget + 8 * MigrationChannel::kDefaultCapacity);
        CHECK(r.best_fitness < 25.0);
        check_run_invariants(r, problem);
    }
}

TEST_CASE("heterogeneous islands advance independently") {
    const Problem problem(MmdpInstance{25});
    const auto r = run_experiment(config_for(ethane_topology(EthaneVariant::G), 200'000, 9), problem);
    REQUIRE_FALSE(r.success);
    const auto& carbon = r.per_island[0];
    const auto& hydrogen = r.per_island[2];
    REQUIRE(carbon.id == "C1");
    REQUIRE(hydrogen.id == "H1");
    CHECK(hydrogen.iterations > 0);
    const double ratio = static_cast<double>(carbon.iterations) / static_cast<double>(hydrogen.iterations);
    CHECK(ratio == doctest::Approx(1.0 / 0.35).epsilon(0.001));
    // Hydrogens exchange with their carbon every 50 local iterations.
    CHECK(hydrogen.emigrants_sent == hydrogen.iterations / 50);
    CHECK(carbon.emigrants_sent == 4 * (carbon.iterations / 50));
    CHECK(hydrogen.immigrants_received > 0);
}

TEST_CASE("single-processor baseline time-shares the islands") {
    const Problem problem(MmdpInstance{25});
    auto rc = config_for(ethane_topology(EthaneVariant::G), 50'000, 3);
    rc.single_processor = true;
    const auto r = run_experiment(rc, problem);
    std::uint64_t iterations = 0;
    for (const auto& island : r.per_island) iterations += island.iterations;
    // The budget may cut the last round short.
    for (const auto& island : r.per_island) CHECK(r.per_island[0].iterations - island.iterations <= 1);
    // One processor does one iteration per virtual millisecond.
    CHECK(std::abs(r.elapsed_ms - static_cast<double>(iterations)) <= 8.0);
}

TEST_CASE("bond multiplicity") {
    TopologySpec ethene;
    ethene.nodes = {{"C1", Atom::carbon, Algorithm::ssga, 1.0}, {"C2", Atom::carbon, Algorithm::ssga, 1.0}};
    ethene.bonds = {{"C1", "C2", 2}};
    const Problem problem(MmdpInstance{25});
    auto rc = config_for(ethene, 20'000, 5);
    const auto batch = run_experiment(rc, problem);
    rc.multiplicity = MultiplicityMode::rate;
    const auto rate = run_experiment(rc, problem);
    const auto& b = batch.per_island[0];
    const auto& r = rate.per_island[0];
    CHECK(b.emigrants_sent == 2 * (b.iterations / 50));
    CHECK(r.emigrants_sent == r.iterations / 25);
}

TEST_CASE("bad configurations") {
    const Problem problem(MmdpInstance{2});
    CHECK_THROWS_AS(run_experiment(config_for(ethane_topology(EthaneVariant::G), 0, 1), problem), ParameterError);
    auto bad = ethane_topology(EthaneVariant::G);
    bad.bonds.pop_back();
    CHECK_THROWS_AS(run_experiment(config_for(bad, 1000, 1), problem), ValidationError);
    auto rc = config_for(ethane_topology(EthaneVariant::G), 1000, 1);
    rc.migration_frequency = 0;
    CHECK_THROWS_AS(run_experiment(rc, problem), ParameterError);
}

TEST_CASE("wall-clock mode") {
    const Problem problem(MmdpInstance{2});
    auto rc = config_for(ethane_topology(EthaneVariant::G), 200'000, 2);
    rc.mode = TimeMode::wall_clock;
    const auto r = run_experiment(rc, problem);
    CHECK(r.success);
    check_run_invariants(r, problem);

    rc.topology = ring_topology(4, {0});
    rc.single_processor = true;
    const auto seq = run_experiment(rc, problem);
    check_run_invariants(seq, problem);

    const Problem hard(MmdpInstance{25});
    rc.single_processor = false;
    rc.evaluation_budget = 5'000;
    const auto capped = run_experiment(rc, hard);
    CHECK_FALSE(capped.success);
    CHECK(capped.total_evaluations >= 5'000);
    CHECK(capped.total_evaluations <= 5'000 + 4 * MigrationChannel::kDefaultCapacity);
}
