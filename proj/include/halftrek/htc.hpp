#pragma once

#include <optional>
#include <string>
#include <vector>

#include "halftrek/graph.hpp"
#include "halftrek/maxflow.hpp"

namespace halftrek {

/// Certificate of HTC-identifiability: a set Y_v for every node and a total
/// order in which every w in Y_v ∩ htr(v) precedes v.
struct HtcWitness {
    std::vector<int> order;    // solve order, a permutation of the nodes
    std::vector<NodeSet> y;    // y[v] = Y_v
};

enum class Verdict { identifiable, infinite_to_one, inconclusive };

std::string to_string(Verdict v);

struct Classification {
    Verdict verdict = Verdict::inconclusive;
    NodeSet solved;                      // nodes whose incoming edge coefficients are identified
    std::optional<HtcWitness> witness;   // present iff verdict == identifiable
};

// Flow network G_flow(v, A). Node labels: "s", "t", "L(a)", "R(w)" with 1-based a, w.
// Requires A ⊆ V \ ({v} ∪ sib(v)); throws precondition_error otherwise.
FlowNetwork build_ht_network(const MixedGraph& g, int v, NodeSet allowed);

struct HtCheck {
    bool holds = false;
    std::optional<NodeSet> y;  // present iff holds
};

// Does some Y ⊆ allowed satisfy the half-trek criterion with respect to v?
HtCheck ht_criterion_holds(const MixedGraph& g, int v, NodeSet allowed);

// Exhaustive search over simple half-trek systems; throws capability_error for m > 7.
bool brute_force_ht_criterion(const MixedGraph& g, int v, NodeSet allowed);

inline constexpr int brute_force_max_nodes = 7;

/// Full trace of the iterative solve over all nodes.
struct HtcSearch {
    NodeSet solved;
    std::vector<int> solve_order;       // chronological; sourceless nodes first
    std::vector<NodeSet> y;             // y[v] valid only for solved v
    std::vector<NodeSet> after_sweep;   // solved set after each sweep (index 0 = initial)
};

// Repeated sweeps over the nodes in `visit_order` (ascending if empty) until
// nothing changes.
HtcSearch run_htc_search(const MixedGraph& g, const std::vector<int>& visit_order = {});

std::optional<HtcWitness> htc_identifiable(const MixedGraph& g);

// Re-checks every witness condition without flow computations (via the
// brute-force half-trek search, so m <= 7). Returns an empty string when valid,
// otherwise a description of the first violation.
std::string witness_violation(const MixedGraph& g, const HtcWitness& w);

// Labels: "s", "t", "L{v,w}", "R_v(w)" with 1-based indices.
FlowNetwork build_global_network(const MixedGraph& g);

bool htc_infinite_to_one(const MixedGraph& g);

Classification classify(const MixedGraph& g);

struct DecompositionReport {
    std::vector<MixedComponent> components;
    std::vector<Classification> per_component;
    Verdict combined = Verdict::inconclusive;
};

// Throws precondition_error for cyclic graphs.
DecompositionReport classify_via_decomposition(const MixedGraph& g);

}  // namespace halftrek
