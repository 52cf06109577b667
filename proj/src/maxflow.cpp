#include "halftrek/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "halftrek/errors.hpp"

namespace halftrek {

int FlowNetwork::add_node(Capacity capacity, std::string label) {
    node_capacity_.push_back(capacity);
    labels_.push_back(std::move(label));
    return num_nodes() - 1;
}

int FlowNetwork::add_edge(int from, int to, Capacity capacity) {
    if (from < 0 || from >= num_nodes() || to < 0 || to >= num_nodes()) {
        throw std::invalid_argument("flow edge endpoint out of range");
    }
    if (from == to) throw std::invalid_argument("flow network self-loop");
    edges_.push_back({from, to, capacity});
    return num_edges() - 1;
}

void FlowNetwork::set_terminals(int source, int sink) {
    if (source == sink) throw std::invalid_argument("source and sink must differ");
    source_ = source;
    sink_ = sink;
    node_capacity_[source] = Capacity::unbounded();
    node_capacity_[sink] = Capacity::unbounded();
}

int FlowNetwork::find(const std::string& label) const {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

bool FlowNetwork::has_edge(int from, int to) const {
    return std::any_of(edges_.begin(), edges_.end(),
                       [&](const FlowEdge& e) { return e.from == from && e.to == to; });
}

namespace {

// Edge indices sorted by (from, to, index).
std::vector<int> lexicographic_edges(const FlowNetwork& net) {
    std::vector<int> order(net.num_edges());
    std::iota(order.begin(), order.end(), 0);
    const auto& e = net.edges();
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::tie(e[a].from, e[a].to) < std::tie(e[b].from, e[b].to);
    });
    return order;
}

// Dinic's algorithm on the node-split residual graph. Node v becomes
// in = 2v and out = 2v + 1, joined by an arc of capacity c_V(v).
class Dinic {
public:
    explicit Dinic(int n) : head_(n, -1), level_(n), cursor_(n) {}

    int add_arc(int from, int to, std::int64_t cap) {
        int id = static_cast<int>(to_.size());
        push(from, to, cap);
        push(to, from, 0);
        return id;
    }

    // Arcs were pushed with head insertion; flip lists so exploration follows insertion order.
    void finalize() {
        const int n = static_cast<int>(head_.size());
        for (int v = 0; v < n; ++v) {
            int prev = -1, cur = head_[v];
            while (cur != -1) {
                int nxt = next_[cur];
                next_[cur] = prev;
                prev = cur;
                cur = nxt;
            }
            head_[v] = prev;
        }
    }

    std::int64_t run(int s, int t) {
        std::int64_t total = 0;
        while (bfs(s, t)) {
            cursor_ = head_;
            while (std::int64_t pushed = dfs(s, t, std::numeric_limits<std::int64_t>::max())) {
                total += pushed;
            }
        }
        return total;
    }

    std::int64_t flow_on(int arc) const { return cap_[arc ^ 1]; }

private:
    void push(int from, int to, std::int64_t cap) {
        to_.push_back(to);
        cap_.push_back(cap);
        next_.push_back(head_[from]);
        head_[from] = static_cast<int>(to_.size()) - 1;
    }

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int a = head_[v]; a != -1; a = next_[a]) {
                if (cap_[a] > 0 && level_[to_[a]] < 0) {
                    level_[to_[a]] = level_[v] + 1;
                    q.push(to_[a]);
                }
            }
        }
        return level_[t] >= 0;
    }

    std::int64_t dfs(int v, int t, std::int64_t limit) {
        if (v == t) return limit;
        for (int& a = cursor_[v]; a != -1; a = next_[a]) {
            int w = to_[a];
            if (cap_[a] <= 0 || level_[w] != level_[v] + 1) continue;
            if (std::int64_t got = dfs(w, t, std::min(limit, cap_[a]))) {
                cap_[a] -= got;
                cap_[a ^ 1] += got;
                return got;
            }
        }
        return 0;
    }

    std::vector<int> head_;
    std::vector<int> to_;
    std::vector<int> next_;
    std::vector<std::int64_t> cap_;
    std::vector<int> level_;
    std::vector<int> cursor_;
};

}  // namespace

FlowResult max_flow(const FlowNetwork& net, std::int64_t surrogate) {
    FlowResult result;
    result.edge_flow.assign(net.num_edges(), 0);
    if (net.source() < 0 || net.num_nodes() == 0) return result;

    const int n = net.num_nodes();
    Dinic dinic(2 * n);
    for (int v = 0; v < n; ++v) {
        dinic.add_arc(2 * v, 2 * v + 1, net.node_capacity(v).resolve(surrogate));
    }
    std::vector<int> arc_of(net.num_edges());
    for (int e : lexicographic_edges(net)) {
        const auto& edge = net.edges()[e];
        arc_of[e] = dinic.add_arc(2 * edge.from + 1, 2 * edge.to, edge.capacity.resolve(surrogate));
    }
    dinic.finalize();
    result.size = dinic.run(2 * net.source() + 1, 2 * net.sink());
    for (int e = 0; e < net.num_edges(); ++e) result.edge_flow[e] = dinic.flow_on(arc_of[e]);
    return result;
}

void check_flow(const FlowNetwork& net, const FlowResult& flow, std::int64_t surrogate) {
    const int n = net.num_nodes();
    if (static_cast<int>(flow.edge_flow.size()) != net.num_edges()) {
        throw validation_error("edge flow vector has wrong length");
    }
    std::vector<std::int64_t> in(n, 0), out(n, 0);
    for (int e = 0; e < net.num_edges(); ++e) {
        const auto& edge = net.edges()[e];
        std::int64_t f = flow.edge_flow[e];
        if (f < 0) throw validation_error("negative flow on an edge");
        if (f > edge.capacity.resolve(surrogate)) throw validation_error("edge capacity exceeded");
        out[edge.from] += f;
        in[edge.to] += f;
    }
    for (int v = 0; v < n; ++v) {
        if (v == net.source() || v == net.sink()) continue;
        if (in[v] != out[v]) {
            throw validation_error("flow not conserved at node " + std::to_string(v));
        }
        if (in[v] > net.node_capacity(v).resolve(surrogate)) {
            throw validation_error("node capacity exceeded at node " + std::to_string(v));
        }
    }
    if (n > 0 && net.source() >= 0) {
        std::int64_t from_source = out[net.source()] - in[net.source()];
        std::int64_t into_sink = in[net.sink()] - out[net.sink()];
        if (from_source != flow.size || into_sink != flow.size) {
            throw validation_error("flow size does not match terminal balances");
        }
    }
}

std::vector<std::vector<int>> flow_paths(const FlowNetwork& net, const FlowResult& flow) {
    if (static_cast<int>(flow.edge_flow.size()) != net.num_edges()) {
        throw validation_error("edge flow vector has wrong length");
    }
    std::vector<std::vector<int>> out_edges(net.num_nodes());
    for (int e : lexicographic_edges(net)) out_edges[net.edges()[e].from].push_back(e);

    std::vector<std::int64_t> remaining = flow.edge_flow;
    for (auto f : remaining) {
        if (f < 0) throw validation_error("negative flow on an edge");
    }
    std::vector<std::vector<int>> paths;
    const int s = net.source(), t = net.sink();
    for (std::int64_t k = 0; k < flow.size; ++k) {
        std::vector<int> nodes{s};
        std::vector<int> used;  // edge taken out of nodes[i]
        std::vector<int> position(net.num_nodes(), -1);
        position[s] = 0;
        while (nodes.back() != t) {
            int v = nodes.back();
            int next_edge = -1;
            for (int e : out_edges[v]) {
                if (remaining[e] > 0) {
                    next_edge = e;
                    break;
                }
            }
            if (next_edge < 0) throw validation_error("flow is not conserved along a path");
            int w = net.edges()[next_edge].to;
            if (position[w] >= 0) {
                // Cancel the cycle w -> ... -> v -> w and resume from w.
                remaining[next_edge] -= 1;
                for (std::size_t i = position[w]; i < used.size(); ++i) {
                    remaining[used[i]] -= 1;
                    position[nodes[i + 1]] = -1;
                }
                nodes.resize(position[w] + 1);
                used.resize(position[w]);
                continue;
            }
            used.push_back(next_edge);
            position[w] = static_cast<int>(nodes.size());
            nodes.push_back(w);
        }
        for (int e : used) remaining[e] -= 1;
        paths.push_back(std::move(nodes));
    }
    return paths;
}

}  // namespace halftrek
