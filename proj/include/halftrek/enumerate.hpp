#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "halftrek/graph.hpp"
#include "halftrek/htc.hpp"

namespace halftrek {

enum class GraphFamily { all, acyclic, cyclic };

std::string to_string(GraphFamily f);

inline constexpr int enumerate_max_nodes = 6;

// One representative per isomorphism class with at most max_edges edges,
// restricted to the family, in a fixed order. Throws capability_error for
// m > enumerate_max_nodes.
std::vector<MixedGraph> enumerate_unlabeled(int m, GraphFamily family, int max_edges);

struct CensusRow {
    int m = 0;
    GraphFamily family = GraphFamily::acyclic;
    long total = 0;
    long htc_identifiable = 0;
    long htc_infinite = 0;
    long inconclusive = 0;
};

// Worker count from HTC_THREADS, else the number of logical CPUs.
int default_threads();

using ProgressFn = std::function<void(long done, long total)>;

// Classifies every class with at most C(m,2) edges.
CensusRow tabulate(int m, GraphFamily family, int threads = default_threads(),
                   const ProgressFn& progress = {});

// Same, over an already enumerated list (lets callers reuse one enumeration).
CensusRow tabulate_graphs(int m, GraphFamily family, const std::vector<MixedGraph>& graphs,
                          int threads = default_threads(), const ProgressFn& progress = {});

struct SimulationRow {
    int m = 0;
    int n_edges = 0;
    int samples = 0;
    bool acyclic_only = false;
    std::uint64_t seed = 0;
    double frac_identifiable = 0;
    double frac_infinite = 0;
    double frac_inconclusive = 0;
};

// Number of edge slots available to simulate().
int edge_slots(int m, bool acyclic_only);

// Labeled graph on m nodes with a uniformly random n-subset of the edge slots.
// Acyclic draws use only directed slots u -> v with u < v.
MixedGraph random_graph(int m, int n_edges, bool acyclic_only, std::uint64_t seed);

// Sample i uses the sub-seed derived from (seed, i). Throws std::invalid_argument
// when samples < 1 or n_edges exceeds edge_slots.
SimulationRow simulate(int m, int n_edges, int samples, bool acyclic_only, std::uint64_t seed,
                       int threads = default_threads());

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index);

std::string census_csv_header();
std::string census_csv_line(const CensusRow& row);
std::string simulation_csv_header();
std::string simulation_csv_line(const SimulationRow& row);

// Runs body(i) for i in [0, n) on up to `threads` workers.
void parallel_for(long n, int threads, const std::function<void(long)>& body);

}  // namespace halftrek
