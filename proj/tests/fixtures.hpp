#pragma once

#include <random>
#include <utility>
#include <vector>

#include "halftrek/graph.hpp"

namespace halftrek::testing {

// Builds a graph from 1-based edge lists.
inline MixedGraph make_graph(int m, std::vector<std::pair<int, int>> directed,
                             std::vector<std::pair<int, int>> bidirected = {}) {
    std::vector<DirectedEdge> d;
    std::vector<BidirectedEdge> b;
    for (auto [u, v] : directed) d.push_back({u - 1, v - 1});
    for (auto [u, v] : bidirected) b.push_back({std::min(u, v) - 1, std::max(u, v) - 1});
    return MixedGraph(m, d, b);
}

// Instrumental variable model: 1 -> 2 -> 3, 2 <-> 3.
inline MixedGraph iv_graph() { return make_graph(3, {{1, 2}, {2, 3}}, {{2, 3}}); }

// Chain 1 -> 2 -> 3 -> 4 -> 5 with 1 <-> 4 and 1 <-> 5.
inline MixedGraph chain_graph() {
    return make_graph(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}}, {{1, 4}, {1, 5}});
}

// The same chain with every sibling pair the worked examples leave open:
// each Y_v chosen in the text avoids v's parent because it is a sibling.
inline MixedGraph chain_sibling_graph() {
    return make_graph(5, {{1, 2}, {2, 3}, {3, 4}, {4, 5}}, {{1, 2}, {1, 4}, {1, 5}, {3, 4}, {4, 5}});
}

inline MixedGraph three_cycle() { return make_graph(3, {{1, 2}, {2, 3}, {3, 1}}); }

// Four edges on three nodes.
inline MixedGraph over_edged_3() { return make_graph(3, {{1, 2}, {1, 3}, {2, 3}}, {{1, 2}}); }

inline NodeSet set1(std::initializer_list<int> one_based) {
    NodeSet s;
    for (int v : one_based) s.insert(v - 1);
    return s;
}

// Each edge slot present independently with probability p; optionally only u -> v for u < v.
inline MixedGraph random_small_graph(std::mt19937_64& rng, int m, double p, bool acyclic) {
    std::bernoulli_distribution coin(p);
    std::vector<DirectedEdge> d;
    std::vector<BidirectedEdge> b;
    for (int u = 0; u < m; ++u) {
        for (int v = 0; v < m; ++v) {
            if (u == v) continue;
            if ((!acyclic || u < v) && coin(rng)) d.push_back({u, v});
            if (u < v && coin(rng)) b.push_back({u, v});
        }
    }
    return MixedGraph(m, d, b);
}

// Random graph with a random node relabeling applied, so acyclic graphs are not upper triangular.
inline MixedGraph shuffled(std::mt19937_64& rng, const MixedGraph& g) {
    std::vector<int> perm(g.size());
    for (int i = 0; i < g.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    return permute(g, perm);
}

}  // namespace halftrek::testing
