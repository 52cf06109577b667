#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "halftrek/errors.hpp"
#include "halftrek/htc.hpp"
#include "halftrek/maxflow.hpp"
#include "oracles.hpp"

using namespace halftrek;
using namespace halftrek::testing;

namespace {

FlowNetwork random_network(std::mt19937_64& rng, int n) {
    FlowNetwork net;
    std::uniform_int_distribution<int> cap(0, 3);
    std::bernoulli_distribution edge(0.35), unbounded(0.2);
    for (int v = 0; v < n; ++v) {
        net.add_node(unbounded(rng) ? Capacity::unbounded() : Capacity::finite(cap(rng)));
    }
    for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
            if (u != v && edge(rng)) {
                net.add_edge(u, v, unbounded(rng) ? Capacity::unbounded() : Capacity::finite(cap(rng)));
            }
        }
    }
    net.set_terminals(0, n - 1);
    return net;
}

}  // namespace

TEST_CASE("node capacities bound the flow") {
    // Two disjoint routes that share a middle node of capacity 1.
    FlowNetwork net;
    int s = net.add_node(Capacity::unbounded(), "s");
    int a = net.add_node(Capacity::finite(1));
    int b = net.add_node(Capacity::finite(1));
    int mid = net.add_node(Capacity::finite(1));
    int t = net.add_node(Capacity::unbounded(), "t");
    net.add_edge(s, a);
    net.add_edge(s, b);
    net.add_edge(a, mid);
    net.add_edge(b, mid);
    net.add_edge(mid, t);
    net.set_terminals(s, t);
    CHECK(max_flow(net, 100).size == 1);
    CHECK(net.find("s") == s);
    CHECK(net.find("nope") == -1);
}

TEST_CASE("max flow equals the enumerated min cut") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
        FlowNetwork net = random_network(rng, 3 + trial % 5);
        const std::int64_t surrogate = 10;
        FlowResult r = max_flow(net, surrogate);
        CHECK(r.size == min_cut_by_enumeration(net, surrogate));
        CHECK_NOTHROW(check_flow(net, r, surrogate));
        CHECK(static_cast<std::int64_t>(flow_paths(net, r).size()) == r.size);
    }
}

TEST_CASE("max flow is deterministic") {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 50; ++trial) {
        FlowNetwork net = random_network(rng, 7);
        FlowResult a = max_flow(net, 5), b = max_flow(net, 5);
        CHECK(a.size == b.size);
        CHECK(a.edge_flow == b.edge_flow);
    }
}

TEST_CASE("check_flow rejects broken flows") {
    FlowNetwork net;
    int s = net.add_node(Capacity::unbounded());
    int a = net.add_node(Capacity::finite(1));
    int t = net.add_node(Capacity::unbounded());
    net.add_edge(s, a);
    net.add_edge(a, t);
    net.set_terminals(s, t);
    FlowResult r = max_flow(net, 10);
    REQUIRE(r.size == 1);
    FlowResult over = r;
    over.edge_flow = {2, 2};
    over.size = 2;
    CHECK_THROWS_AS(check_flow(net, over, 10), validation_error);
    FlowResult leaky = r;
    leaky.edge_flow = {1, 0};
    CHECK_THROWS_AS(check_flow(net, leaky, 10), validation_error);
}

TEST_CASE("half-trek network has the documented shape") {
    MixedGraph g = iv_graph();
    // Node 3 with A = {1}.
    FlowNetwork net = build_ht_network(g, 2, set1({1}));
    CHECK(net.find("L(1)") >= 0);
    CHECK(net.find("L(2)") < 0);
    CHECK(net.has_edge(net.find("s"), net.find("L(1)")));
    CHECK(net.has_edge(net.find("L(1)"), net.find("R(1)")));
    CHECK(net.has_edge(net.find("R(1)"), net.find("R(2)")));
    CHECK(net.has_edge(net.find("R(2)"), net.find("t")));
    CHECK_FALSE(net.has_edge(net.find("R(1)"), net.find("t")));
    CHECK(max_flow(net, 1).size == 1);
    CHECK_THROWS_AS(build_ht_network(g, 2, set1({2})), precondition_error);
    CHECK_THROWS_AS(build_ht_network(g, 2, set1({3})), precondition_error);

    // Bidirected step L(a) -> R(w) for a <-> w.
    FlowNetwork net2 = build_ht_network(chain_graph(), 1, set1({4}));
    CHECK(net2.has_edge(net2.find("L(4)"), net2.find("R(1)")));
}

TEST_CASE("flow criterion agrees with the exhaustive half-trek search") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 400; ++trial) {
        int m = 3 + trial % 4;
        MixedGraph g = random_small_graph(rng, m, 0.35, trial % 3 == 0);
        for (int v = 0; v < m; ++v) {
            NodeSet pool = g.nodes() - g.siblings(v) - NodeSet::single(v);
            NodeSet allowed(rng() & pool.bits());
            HtCheck fast = ht_criterion_holds(g, v, allowed);
            CHECK(fast.holds == brute_force_ht_criterion(g, v, allowed));
            if (fast.holds) {
                CHECK(fast.y->subset_of(allowed));
                CHECK(fast.y->size() == g.parents(v).size());
                CHECK(brute_force_ht_criterion(g, v, *fast.y));
            }
        }
    }
}
