#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "bufferless/engine.hpp"
#include "bufferless/netgen.hpp"
#include "test_util.hpp"

using namespace bufferless;

namespace {

struct Fixture {
    Graph g;
    RoutingTable table;
};

Fixture make(Graph g, double alpha = 0.0) {
    RoutingTable t = build_tables(g, alpha);
    return Fixture{std::move(g), std::move(t)};
}

} // namespace

TEST_CASE("rho=0 leaves every counter at zero") {
    const auto fx = make(testutil::path_graph(5));
    const RunLedger led = run(fx.g, fx.table, EngineParams{0.0, 1.0, 50, 0, 9});
    CHECK(led.generated == 0);
    CHECK(led.arrived == 0);
    CHECK(led.dropped == 0);
    CHECK(led.deflections == 0);
    CHECK(led.arrival_time_sum == 0);
    CHECK(led.in_flight == 0);
}

TEST_CASE("a lone packet crosses one hop per step and arrives in L steps") {
    const auto fx = make(testutil::path_graph(5));
    Simulation sim(fx.g, fx.table, EngineParams{0.0, 1.0, 10, 0, 1});
    REQUIRE(sim.inject(0, 4));
    for (int s = 0; s < 3; ++s) {
        sim.step();
        CHECK(sim.ledger().arrived == 0); // still under way
        CHECK(sim.in_flight() == 1);
    }
    sim.step(); // fourth hop lands on the destination
    const RunLedger led = sim.ledger();
    CHECK(led.arrived == 1);
    CHECK(led.arrival_time_sum == 4);
    CHECK(led.deflections == 0);
    CHECK(led.in_flight == 0);
}

TEST_CASE("two packets contending for one slot: one placed, one dropped") {
    // Path a-c-b with every capacity 1. Both end packets prefer c; whichever
    // forwards second finds c full and has no other neighbor to deflect to.
    const std::array<std::uint32_t, 3> order_a_first = {0, 1, 2};
    const std::array<std::uint32_t, 3> order_b_first = {2, 1, 0};
    for (const auto& order : {order_a_first, order_b_first}) {
        const auto fx = make(testutil::path_graph(3));
        Simulation sim(fx.g, fx.table, EngineParams{0.0, 0.5, 5, 0, 1});
        CHECK(sim.capacity(0) == 1);
        CHECK(sim.capacity(1) == 1);
        REQUIRE(sim.inject(0, 2));
        REQUIRE(sim.inject(2, 0));
        sim.step_with_order(order);
        const RunLedger led = sim.ledger();
        CHECK(led.generated == 2);
        CHECK(led.arrived == 0);
        CHECK(led.dropped == 1);
        CHECK(led.deflections == 0); // the lone neighbor IS the preferred hop
        CHECK(led.in_flight == 1);
    }
}

TEST_CASE("full preferred hop with one free alternative deflects exactly once") {
    // s(0)-p(1)-d(4) is the short route; s(0)-q(2)-e(3)-d(4) the detour;
    // x(5)-p fills p's queue first. All capacities 1.
    Graph g;
    g.adj.resize(6);
    g.add_edge(0, 1);
    g.add_edge(1, 4);
    g.add_edge(0, 2);
    g.add_edge(2, 3);
    g.add_edge(3, 4);
    g.add_edge(5, 1);
    const auto fx = make(std::move(g));
    const std::array<std::uint32_t, 6> x_first = {5, 0, 1, 2, 3, 4};
    const std::array<std::uint32_t, 6> s_first = {0, 5, 1, 2, 3, 4};

    SUBCASE("deflected to the detour") {
        Simulation sim(fx.g, fx.table, EngineParams{0.0, 0.3, 10, 0, 1});
        REQUIRE(sim.inject(5, 4));
        REQUIRE(sim.inject(0, 4));
        sim.step_with_order(x_first);
        CHECK(sim.ledger().deflections == 1);
        CHECK(sim.ledger().dropped == 0);
        sim.run();
        const RunLedger led = sim.ledger();
        CHECK(led.arrived == 2);
        CHECK(led.deflections == 1);
        CHECK(led.arrival_time_sum == 2 + 3); // short route + detour
        CHECK(led.dropped == 0);
    }

    SUBCASE("degree-1 sender with a full preferred hop drops") {
        Simulation sim(fx.g, fx.table, EngineParams{0.0, 0.3, 10, 0, 1});
        REQUIRE(sim.inject(5, 4));
        REQUIRE(sim.inject(0, 4));
        sim.step_with_order(s_first);
        CHECK(sim.ledger().deflections == 0);
        CHECK(sim.ledger().dropped == 1);
        sim.run();
        const RunLedger led = sim.ledger();
        CHECK(led.arrived == 1);
        CHECK(led.arrival_time_sum == 2);
        CHECK(led.dropped == 1);
    }
}

TEST_CASE("integral rho attempts exactly rho packets per node-step") {
    const auto fx = make(testutil::complete_graph(4));
    Simulation sim(fx.g, fx.table, EngineParams{2.0, 100.0, 3, 0, 4});
    sim.step();
    CHECK(sim.ledger().generated == 8); // 2 per node
    sim.step();
    CHECK(sim.ledger().generated == 16);
}

TEST_CASE("fractional rho adds a Bernoulli packet") {
    // 100 nodes x 100 steps = 10^4 node-steps; second-packet frequency must
    // sit in the binomial 3-sigma band 0.2 +- 0.012.
    const auto fx = make(testutil::cycle_graph(100));
    Simulation sim(fx.g, fx.table, EngineParams{1.2, 100.0, 100, 0, 8});
    sim.run();
    const auto generated = sim.ledger().generated;
    CHECK(generated >= 11880);
    CHECK(generated <= 12120);
}

TEST_CASE("a full queue stalls generation entirely") {
    Graph g;
    g.adj.resize(2);
    g.add_edge(0, 1);
    const auto fx = make(std::move(g));
    Simulation sim(fx.g, fx.table, EngineParams{3.0, 1.0, 5, 0, 2});
    CHECK(sim.capacity(0) == 1);
    REQUIRE(sim.inject(0, 1));
    CHECK_FALSE(sim.inject(0, 1)); // queue full, not counted
    CHECK(sim.ledger().generated == 1);
    sim.step();
    // node 0 was full (0 generated), node 1 fit exactly one of its 3 attempts
    CHECK(sim.ledger().generated == 2);
    CHECK(sim.ledger().arrived == 2); // both one hop from their destination
}

TEST_CASE("destination absorption never blocks on a 2-node network") {
    Graph g;
    g.adj.resize(2);
    g.add_edge(0, 1);
    const auto fx = make(std::move(g));
    const RunLedger led = run(fx.g, fx.table, EngineParams{5.0, 1.0, 50, 0, 3});
    CHECK(led.generated == 100); // capacity 1 per node per step
    CHECK(led.arrived == 100);
    CHECK(led.dropped == 0);
    CHECK(led.deflections == 0);
    CHECK(led.arrival_time_sum == 100); // every trip is one hop
}

TEST_CASE("unconstrained capacity yields zero loss and deflection and optimal times") {
    const Graph g = price_generate(GenParams{100, 3, 2, 0.5, 21});
    const RoutingTable table = build_tables(g, 1.0);
    const EngineParams params{0.5, 1e6, 100, 0, 22};
    const RunLedger led = run(g, table, params);
    CHECK(led.dropped == 0);
    CHECK(led.deflections == 0);
    std::mt19937_64 rng(23);
    const double optimal = mean_optimal_hops(table, rng);
    const double t_a = static_cast<double>(led.arrival_time_sum) /
                       static_cast<double>(led.arrived);
    CHECK(std::abs(t_a - optimal) <= 0.2);
}

TEST_CASE("identical seeds reproduce the ledger and the trace") {
    const Graph g = price_generate(GenParams{60, 3, 2, 0.5, 31});
    const RoutingTable table = build_tables(g, 1.0);
    const EngineParams params{1.5, 1.0, 40, 0, 77};

    std::ostringstream trace_a, trace_b;
    Simulation a(g, table, params);
    a.set_trace(&trace_a);
    a.run();
    Simulation b(g, table, params);
    b.set_trace(&trace_b);
    b.run();

    CHECK(trace_a.str() == trace_b.str());
    const RunLedger la = a.ledger(), lb = b.ledger();
    CHECK(la.generated == lb.generated);
    CHECK(la.arrived == lb.arrived);
    CHECK(la.dropped == lb.dropped);
    CHECK(la.deflections == lb.deflections);
    CHECK(la.arrival_time_sum == lb.arrival_time_sum);
}

TEST_CASE("trace has one row per step and ends at the final counters") {
    const auto fx = make(testutil::cycle_graph(10));
    std::ostringstream trace;
    Simulation sim(fx.g, fx.table, EngineParams{0.7, 2.0, 25, 0, 5});
    sim.set_trace(&trace);
    sim.run();
    std::istringstream in(trace.str());
    std::string line, last;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        last = line;
    }
    CHECK(rows == 25);
    const RunLedger led = sim.ledger();
    std::ostringstream expect;
    expect << 24 << "," << led.generated << "," << led.arrived << "," << led.dropped << ","
           << led.deflections << "," << led.in_flight;
    CHECK(last == expect.str());
}

TEST_CASE("conservation and capacity bounds hold under random configurations") {
    std::mt19937_64 meta(4242);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const std::uint32_t n = 5 + static_cast<std::uint32_t>(meta() % 56);
        const std::uint32_t m = 1 + static_cast<std::uint32_t>(meta() % 3);
        const GenParams gp{n, 0, m, unit(meta), meta()};
        const Graph g = price_generate(gp);
        const double alpha = 1.5 * unit(meta);
        const RoutingTable table = build_tables(g, alpha);
        const EngineParams params{2.0 * unit(meta), 0.2 + 2.8 * unit(meta), 30,
                                  meta() % 8, meta()};
        Simulation sim(g, table, params);
        while (sim.current_step() < params.steps) {
            sim.step();
            const RunLedger led = sim.ledger();
            REQUIRE(led.generated == led.arrived + led.dropped + led.in_flight);
            for (std::uint32_t v = 0; v < n; ++v)
                REQUIRE(sim.queue_size(v) <= sim.capacity(v));
        }
    }
}

TEST_CASE("warmup excludes early-born packets from every counter") {
    const Graph g = price_generate(GenParams{50, 3, 2, 0.5, 61});
    const RoutingTable table = build_tables(g, 1.0);
    const RunLedger cold = run(g, table, EngineParams{1.0, 2.0, 40, 0, 99});
    const RunLedger warm = run(g, table, EngineParams{1.0, 2.0, 40, 20, 99});
    CHECK(warm.generated < cold.generated);
    CHECK(warm.generated == warm.arrived + warm.dropped + warm.in_flight);
    CHECK_THROWS_AS(Simulation(g, table, EngineParams{1.0, 2.0, 40, 40, 99}),
                    std::invalid_argument);
}

TEST_CASE("graph/table mismatch is rejected before step 0") {
    const Graph g = testutil::path_graph(5);
    const Graph other = testutil::path_graph(6);
    const RoutingTable table = build_tables(other, 0.0);
    CHECK_THROWS_AS(Simulation(g, table, EngineParams{0.0, 1.0, 5, 0, 1}),
                    std::invalid_argument);
}

TEST_CASE("fractional capacities floor to true slot counts") {
    const Graph g = testutil::star_graph(11); // hub degree 10
    const RoutingTable table = build_tables(g, 0.0);
    Simulation sim(g, table, EngineParams{0.0, 0.3, 5, 0, 1});
    CHECK(sim.capacity(0) == 3); // floor(0.3 * 10)
    CHECK(sim.capacity(1) == 1); // max(1, floor(0.3))
}

TEST_CASE("light load at reference scale stays deflection- and loss-free") {
    const Graph g = price_generate(GenParams{1000, 3, 2, 0.5, 1001});
    const RoutingTable table = build_tables(g, 1.0);
    const RunLedger led = run(g, table, EngineParams{0.1, 2.0, 1000, 0, 1002});
    const double omega = static_cast<double>(led.deflections) /
                         static_cast<double>(led.generated);
    const double eta = static_cast<double>(led.dropped) /
                       static_cast<double>(led.generated);
    CHECK(omega < 0.01);
    CHECK(eta < 0.005);
}
