#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "halftrek/node_set.hpp"

namespace halftrek {

// Directed edge from -> to, 0-based.
struct DirectedEdge {
    int from = 0;
    int to = 0;
    auto operator<=>(const DirectedEdge&) const = default;
};

// Bidirected edge, normalized so that a < b.
struct BidirectedEdge {
    int a = 0;
    int b = 0;
    auto operator<=>(const BidirectedEdge&) const = default;
};

/// A mixed graph (V, D, B) on nodes 0..m-1.
///
/// Directed edges carry the coefficients of Lambda, bidirected edges the
/// off-diagonal support of Omega. A directed and a bidirected edge may join
/// the same pair of nodes, and reciprocal directed edges are allowed; self-loops
/// are not. Instances are immutable once built.
class MixedGraph {
public:
    MixedGraph() = default;
    // Throws std::invalid_argument on self-loops or out-of-range endpoints;
    // duplicate edges collapse.
    MixedGraph(int m, const std::vector<DirectedEdge>& directed,
               const std::vector<BidirectedEdge>& bidirected);

    int size() const { return m_; }
    NodeSet nodes() const { return NodeSet::full(m_); }

    NodeSet parents(int v) const { return parents_[v]; }
    NodeSet children(int v) const { return children_[v]; }
    NodeSet siblings(int v) const { return siblings_[v]; }

    bool has_directed(int from, int to) const { return children_[from].contains(to); }
    bool has_bidirected(int a, int b) const { return siblings_[a].contains(b); }

    // Sorted lexicographically.
    const std::vector<DirectedEdge>& directed_edges() const { return directed_; }
    const std::vector<BidirectedEdge>& bidirected_edges() const { return bidirected_; }

    int num_directed() const { return static_cast<int>(directed_.size()); }
    int num_bidirected() const { return static_cast<int>(bidirected_.size()); }
    int num_edges() const { return num_directed() + num_bidirected(); }

    bool operator==(const MixedGraph& o) const {
        return m_ == o.m_ && directed_ == o.directed_ && bidirected_ == o.bidirected_;
    }

private:
    int m_ = 0;
    std::vector<DirectedEdge> directed_;
    std::vector<BidirectedEdge> bidirected_;
    std::vector<NodeSet> parents_;
    std::vector<NodeSet> children_;
    std::vector<NodeSet> siblings_;
};

// Nodes reachable from v along directed edges. With proper=true only walks of
// length >= 1 count, so v is included only if it lies on a directed cycle.
NodeSet descendants(const MixedGraph& g, int v, bool proper);

// Nodes outside {v} and sib(v) reachable from v by a half-trek.
NodeSet htr(const MixedGraph& g, int v);

bool is_acyclic(const MixedGraph& g);

// At most one edge between any pair of nodes.
bool is_simple(const MixedGraph& g);

// One topological order of the directed part; throws precondition_error if cyclic.
std::vector<int> topological_order(const MixedGraph& g);

// Relabel nodes: node v of g becomes perm[v].
MixedGraph permute(const MixedGraph& g, const std::vector<int>& perm);

inline constexpr int default_canonical_bound = 8;

// Isomorphism invariant under simultaneous relabeling of D and B. Throws
// capability_error when size() > max_nodes.
std::string canonical_form(const MixedGraph& g, int max_nodes = default_canonical_bound);

/// A mixed component: one connected component C of the bidirected part
/// together with the parents of C, the directed edges into C and the
/// bidirected edges inside C.
struct MixedComponent {
    std::vector<int> nodes;  // original node ids, ascending; local index = position
    NodeSet district;        // the component's C, in original ids
    MixedGraph graph;        // over local indices

    int origin(int local) const { return nodes[local]; }
};

// Throws precondition_error for cyclic graphs. Components are ordered by the
// smallest node of their district.
std::vector<MixedComponent> mixed_components(const MixedGraph& g);

// Graph file format: "nodes <m>", then "d <u> <v>" / "b <u> <v>" lines with
// 1-based indices; '#' starts a comment. Throws parse_error.
MixedGraph parse_graph(std::string_view text);
std::string to_text(const MixedGraph& g);

}  // namespace halftrek
