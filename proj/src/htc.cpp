#include "halftrek/htc.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "halftrek/errors.hpp"

namespace halftrek {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::identifiable: return "identifiable";
        case Verdict::infinite_to_one: return "infinite_to_one";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

std::string label1(const char* prefix, int v) {
    return std::string(prefix) + "(" + std::to_string(v + 1) + ")";
}

// Node layout: s = 0, t = 1, then L(a) for a in `allowed` ascending, then R(0..m-1).
FlowNetwork make_ht_network(const MixedGraph& g, int v, NodeSet allowed, bool labels) {
    const int m = g.size();
    FlowNetwork net;
    const auto one = Capacity::finite(1);
    int s = net.add_node(Capacity::unbounded(), labels ? "s" : "");
    int t = net.add_node(Capacity::unbounded(), labels ? "t" : "");
    std::vector<int> left(m, -1), right(m, -1);
    for (int a : allowed) left[a] = net.add_node(one, labels ? label1("L", a) : "");
    for (int w = 0; w < m; ++w) right[w] = net.add_node(one, labels ? label1("R", w) : "");
    net.set_terminals(s, t);

    for (int a : allowed) {
        net.add_edge(s, left[a]);
        net.add_edge(left[a], right[a]);
        for (int w : g.siblings(a)) net.add_edge(left[a], right[w]);
    }
    for (auto [w, u] : g.directed_edges()) net.add_edge(right[w], right[u]);
    for (int p : g.parents(v)) net.add_edge(right[p], t);
    return net;
}

void require_allowed(const MixedGraph& g, int v, NodeSet allowed) {
    if (v < 0 || v >= g.size()) throw precondition_error("node out of range");
    if (!allowed.subset_of(g.nodes())) throw precondition_error("allowed set has nodes out of range");
    if (allowed.contains(v) || allowed.intersects(g.siblings(v))) {
        throw precondition_error("allowed set must exclude v and its siblings");
    }
}

HtCheck solve_ht(const MixedGraph& g, int v, NodeSet allowed, bool labels) {
    const int need = g.parents(v).size();
    FlowNetwork net = make_ht_network(g, v, allowed, labels);
    FlowResult flow = max_flow(net, need);
    if (flow.size != need) return {};
    // L(a) nodes occupy indices 2 .. 2+|allowed|-1 in ascending order of a.
    std::vector<int> left_owner = allowed.to_vector();
    NodeSet y;
    for (const auto& path : flow_paths(net, flow)) y.insert(left_owner[path[1] - 2]);
    return {true, y};
}

}  // namespace

FlowNetwork build_ht_network(const MixedGraph& g, int v, NodeSet allowed) {
    require_allowed(g, v, allowed);
    return make_ht_network(g, v, allowed, true);
}

HtCheck ht_criterion_holds(const MixedGraph& g, int v, NodeSet allowed) {
    require_allowed(g, v, allowed);
    return solve_ht(g, v, allowed, false);
}

namespace {

struct HalfTrek {
    int source;
    NodeSet right;
};

// Simple directed paths from `from` to `to`, reported as node sets.
void directed_path_sets(const MixedGraph& g, int from, int to, NodeSet& on_path,
                        std::vector<NodeSet>& out) {
    on_path.insert(from);
    if (from == to) {
        out.push_back(on_path);
    } else {
        for (int c : g.children(from)) {
            if (!on_path.contains(c)) directed_path_sets(g, c, to, on_path, out);
        }
    }
    on_path.erase(from);
}

std::vector<HalfTrek> simple_half_treks(const MixedGraph& g, int source, int target) {
    std::vector<HalfTrek> treks;
    std::vector<NodeSet> sets;
    NodeSet scratch;
    directed_path_sets(g, source, target, scratch, sets);
    for (int s : g.siblings(source)) directed_path_sets(g, s, target, scratch, sets);
    for (NodeSet r : sets) treks.push_back({source, r});
    return treks;
}

}  // namespace

bool brute_force_ht_criterion(const MixedGraph& g, int v, NodeSet allowed) {
    if (g.size() > brute_force_max_nodes) {
        throw capability_error("brute-force half-trek search supports at most " +
                               std::to_string(brute_force_max_nodes) + " nodes");
    }
    NodeSet sources = allowed - g.siblings(v) - NodeSet::single(v);
    std::vector<int> targets = g.parents(v).to_vector();
    std::vector<std::vector<HalfTrek>> options(targets.size());
    for (std::size_t i = 0; i < targets.size(); ++i) {
        for (int a : sources) {
            auto treks = simple_half_treks(g, a, targets[i]);
            options[i].insert(options[i].end(), treks.begin(), treks.end());
        }
    }
    std::function<bool(std::size_t, NodeSet, NodeSet)> extend =
        [&](std::size_t i, NodeSet used_sources, NodeSet used_right) {
            if (i == targets.size()) return true;
            for (const auto& h : options[i]) {
                if (used_sources.contains(h.source) || h.right.intersects(used_right)) continue;
                if (extend(i + 1, used_sources | NodeSet::single(h.source), used_right | h.right)) {
                    return true;
                }
            }
            return false;
        };
    return extend(0, {}, {});
}

HtcSearch run_htc_search(const MixedGraph& g, const std::vector<int>& visit_order) {
    const int m = g.size();
    std::vector<int> visit = visit_order;
    if (visit.empty()) {
        visit.resize(m);
        std::iota(visit.begin(), visit.end(), 0);
    }
    std::vector<NodeSet> half_trek_reach(m);
    for (int v = 0; v < m; ++v) half_trek_reach[v] = htr(g, v);

    HtcSearch search;
    search.y.assign(m, NodeSet{});
    for (int v = 0; v < m; ++v) {
        if (g.parents(v).empty()) {
            search.solved.insert(v);
            search.solve_order.push_back(v);
        }
    }
    search.after_sweep.push_back(search.solved);
    const NodeSet all = g.nodes();
    bool changed = true;
    while (search.solved != all && changed) {
        changed = false;
        for (int v : visit) {
            if (search.solved.contains(v)) continue;
            NodeSet allowed = (search.solved | (all - half_trek_reach[v])) -
                              g.siblings(v) - NodeSet::single(v);
            HtCheck check = solve_ht(g, v, allowed, false);
            if (check.holds) {
                search.solved.insert(v);
                search.solve_order.push_back(v);
                search.y[v] = *check.y;
                changed = true;
            }
        }
        search.after_sweep.push_back(search.solved);
    }
    return search;
}

std::optional<HtcWitness> htc_identifiable(const MixedGraph& g) {
    HtcSearch search = run_htc_search(g);
    if (search.solved != g.nodes()) return std::nullopt;
    return HtcWitness{search.solve_order, search.y};
}

std::string witness_violation(const MixedGraph& g, const HtcWitness& w) {
    const int m = g.size();
    if (static_cast<int>(w.order.size()) != m || static_cast<int>(w.y.size()) != m) {
        return "witness has the wrong number of entries";
    }
    std::vector<int> rank(m, -1);
    for (int i = 0; i < m; ++i) {
        int v = w.order[i];
        if (v < 0 || v >= m || rank[v] >= 0) return "order is not a permutation of the nodes";
        rank[v] = i;
    }
    for (int v = 0; v < m; ++v) {
        const std::string at = " at node " + std::to_string(v + 1);
        NodeSet y = w.y[v];
        if (!y.subset_of(g.nodes())) return "Y has nodes out of range" + at;
        if (y.size() != g.parents(v).size()) return "|Y| differs from |pa(v)|" + at;
        if (y.contains(v) || y.intersects(g.siblings(v))) return "Y meets {v} or sib(v)" + at;
        for (int u : y & htr(g, v)) {
            if (rank[u] > rank[v]) {
                return "node " + std::to_string(u + 1) + " in Y ∩ htr does not precede" + at;
            }
        }
        if (!brute_force_ht_criterion(g, v, y)) return "no half-trek system from Y to pa(v)" + at;
    }
    return {};
}

FlowNetwork build_global_network(const MixedGraph& g) {
    const int m = g.size();
    FlowNetwork net;
    const auto one = Capacity::finite(1);
    int s = net.add_node(Capacity::unbounded(), "s");
    int t = net.add_node(Capacity::unbounded(), "t");
    std::vector<std::vector<int>> left(m, std::vector<int>(m, -1));
    for (int v = 0; v < m; ++v) {
        for (int w = v + 1; w < m; ++w) {
            if (g.has_bidirected(v, w)) continue;
            left[v][w] = left[w][v] = net.add_node(
                one, "L{" + std::to_string(v + 1) + "," + std::to_string(w + 1) + "}");
        }
    }
    std::vector<std::vector<int>> right(m, std::vector<int>(m, -1));
    for (int v = 0; v < m; ++v) {
        for (int w = 0; w < m; ++w) {
            right[v][w] = net.add_node(
                one, "R_" + std::to_string(v + 1) + "(" + std::to_string(w + 1) + ")");
        }
    }
    net.set_terminals(s, t);

    for (int v = 0; v < m; ++v) {
        for (int w = v + 1; w < m; ++w) {
            int l = left[v][w];
            if (l < 0) continue;
            net.add_edge(s, l);
            // Y_v may use w (trivially or through w's siblings), Y_w may use v.
            net.add_edge(l, right[v][w]);
            for (int u : g.siblings(w)) net.add_edge(l, right[v][u]);
            net.add_edge(l, right[w][v]);
            for (int u : g.siblings(v)) net.add_edge(l, right[w][u]);
        }
    }
    for (int v = 0; v < m; ++v) {
        for (auto [w, u] : g.directed_edges()) net.add_edge(right[v][w], right[v][u]);
        for (int p : g.parents(v)) net.add_edge(right[v][p], t);
    }
    return net;
}

bool htc_infinite_to_one(const MixedGraph& g) {
    const std::int64_t m = g.size();
    FlowResult flow = max_flow(build_global_network(g), m * m);
    return flow.size < g.num_directed();
}

namespace {

bool exceeds_pair_count(const MixedGraph& g) {
    const long m = g.size();
    return g.num_edges() > m * (m - 1) / 2;
}

}  // namespace

Classification classify(const MixedGraph& g) {
    Classification out;
    if (exceeds_pair_count(g)) {
        // More edges than the dimension of the covariance off-diagonal: no flow needed for the verdict.
        out.verdict = Verdict::infinite_to_one;
        out.solved = run_htc_search(g).solved;
        return out;
    }
    HtcSearch search = run_htc_search(g);
    out.solved = search.solved;
    if (search.solved == g.nodes()) {
        out.verdict = Verdict::identifiable;
        out.witness = HtcWitness{search.solve_order, search.y};
    } else if (htc_infinite_to_one(g)) {
        out.verdict = Verdict::infinite_to_one;
    } else {
        out.verdict = Verdict::inconclusive;
    }
    return out;
}

DecompositionReport classify_via_decomposition(const MixedGraph& g) {
    DecompositionReport report;
    report.components = mixed_components(g);
    bool all_identifiable = true;
    bool any_infinite = false;
    for (const auto& comp : report.components) {
        Classification c = classify(comp.graph);
        all_identifiable = all_identifiable && c.verdict == Verdict::identifiable;
        any_infinite = any_infinite || c.verdict == Verdict::infinite_to_one;
        report.per_component.push_back(std::move(c));
    }
    if (all_identifiable) {
        report.combined = Verdict::identifiable;
    } else if (any_infinite) {
        report.combined = Verdict::infinite_to_one;
    } else {
        report.combined = Verdict::inconclusive;
    }
    return report;
}

}  // namespace halftrek
