#pragma once

#include <optional>
#include <vector>

#include "halftrek/graph.hpp"
#include "halftrek/treks.hpp"

namespace halftrek {

// Length of the longest directed path ending at v. Throws precondition_error if cyclic.
int depth(const MixedGraph& g, int v);

enum class GcCondition { c1, c2 };

/// The G-criterion data for one node: A = Y ⊎ Z with trek systems into the
/// parents (pi) and into the earlier siblings (psi).
struct GcNodeWitness {
    std::vector<int> parents;         // pa(v), ascending
    std::vector<int> earlier_sibs;    // S_<(v), ascending in the topological order
    std::vector<Trek> pi;             // pi[i] ends at parents[i]
    std::vector<Trek> psi;            // psi[i] ends at earlier_sibs[i] with no arrowhead there
    NodeSet y;
    NodeSet z;
    NodeSet a() const { return y | z; }
};

struct GcWitness {
    std::vector<int> topological;     // the ordering that defines S_< and S_>
    GcCondition condition = GcCondition::c1;
    std::vector<int> c2_order;        // total order for C2, empty for C1
    std::vector<GcNodeWitness> nodes;
};

inline constexpr int gc_max_nodes = 7;

struct GcResult {
    bool identifiable = false;
    std::optional<GcWitness> witness;
};

// Searches every topological ordering. Throws precondition_error for cyclic
// graphs and capability_error above gc_max_nodes nodes.
GcResult gc_identifiable(const MixedGraph& g);

}  // namespace halftrek
