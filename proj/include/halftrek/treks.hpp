#pragma once

#include <vector>

#include "halftrek/graph.hpp"

namespace halftrek {

/// A trek in an acyclic mixed graph.
///
/// left runs from the left end (top node, or the left endpoint of the
/// bidirected edge) down to the source; right runs from the right end down to
/// the target. Without a bidirected edge both sequences start at the top node.
struct Trek {
    std::vector<int> left;
    std::vector<int> right;
    bool bidirected = false;

    int source() const { return left.back(); }
    int target() const { return right.back(); }
    int top() const { return left.front(); }  // meaningful when !bidirected
    NodeSet left_set() const;
    NodeSet right_set() const;
    bool is_half_trek() const { return left.size() == 1; }
    bool is_trivial() const { return !bidirected && left.size() == 1 && right.size() == 1; }
};

// All directed paths ending at `to`, each listed from its first node to `to`;
// includes the trivial path [to]. Requires an acyclic graph.
std::vector<std::vector<int>> directed_paths_into(const MixedGraph& g, int to);

// All treks from source to target. Throws precondition_error if g is cyclic.
std::vector<Trek> enumerate_treks(const MixedGraph& g, int source, int target);

}  // namespace halftrek
