#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace halftrek {

// Nonnegative integer capacity, or unbounded.
class Capacity {
public:
    static constexpr Capacity unbounded() { return Capacity(-1); }
    static constexpr Capacity finite(std::int64_t c) { return Capacity(c < 0 ? 0 : c); }

    constexpr bool is_unbounded() const { return value_ < 0; }
    constexpr std::int64_t value() const { return value_; }
    // Finite value, with unbounded replaced by the caller's surrogate.
    constexpr std::int64_t resolve(std::int64_t surrogate) const {
        return is_unbounded() ? surrogate : value_;
    }
    constexpr bool operator==(const Capacity&) const = default;

private:
    constexpr explicit Capacity(std::int64_t v) : value_(v) {}
    std::int64_t value_;
};

struct FlowEdge {
    int from = 0;
    int to = 0;
    Capacity capacity = Capacity::unbounded();
};

/// Directed network with node and edge capacities.
///
/// Source and sink always have unbounded capacity. Labels are optional and
/// only used in diagnostics and tests.
class FlowNetwork {
public:
    FlowNetwork() = default;

    int add_node(Capacity capacity, std::string label = {});
    int add_edge(int from, int to, Capacity capacity = Capacity::unbounded());
    void set_terminals(int source, int sink);

    int num_nodes() const { return static_cast<int>(node_capacity_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int source() const { return source_; }
    int sink() const { return sink_; }
    Capacity node_capacity(int v) const { return node_capacity_[v]; }
    const std::string& label(int v) const { return labels_[v]; }
    const std::vector<FlowEdge>& edges() const { return edges_; }

    // Index of a node by label, -1 if absent.
    int find(const std::string& label) const;
    bool has_edge(int from, int to) const;

private:
    std::vector<Capacity> node_capacity_;
    std::vector<std::string> labels_;
    std::vector<FlowEdge> edges_;
    int source_ = -1;
    int sink_ = -1;
};

struct FlowResult {
    std::int64_t size = 0;
    std::vector<std::int64_t> edge_flow;  // indexed like FlowNetwork::edges()
};

// Integral maximum flow. Unbounded capacities are replaced by `surrogate`
// before solving. Deterministic: edges are explored in lexicographic
// (from, to) order.
FlowResult max_flow(const FlowNetwork& net, std::int64_t surrogate);

// Throws validation_error if conservation or a capacity bound is violated.
void check_flow(const FlowNetwork& net, const FlowResult& flow, std::int64_t surrogate);

// Decomposition of an integral flow into result.size unit source-to-sink paths
// (node sequences); flow around cycles is discarded. Throws validation_error
// on an inconsistent flow.
std::vector<std::vector<int>> flow_paths(const FlowNetwork& net, const FlowResult& flow);

}  // namespace halftrek
