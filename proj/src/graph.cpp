#include "halftrek/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "canon.hpp"
#include "halftrek/errors.hpp"

namespace halftrek {

MixedGraph::MixedGraph(int m, const std::vector<DirectedEdge>& directed,
                       const std::vector<BidirectedEdge>& bidirected)
    : m_(m), parents_(m), children_(m), siblings_(m) {
    if (m < 0 || m > max_nodes) {
        throw std::invalid_argument("node count " + std::to_string(m) + " outside [0, 64]");
    }
    auto check = [m](int u, int v) {
        if (u < 0 || u >= m || v < 0 || v >= m) {
            throw std::invalid_argument("edge endpoint out of range");
        }
        if (u == v) throw std::invalid_argument("self-loop at node " + std::to_string(u + 1));
    };
    for (auto e : directed) {
        check(e.from, e.to);
        children_[e.from].insert(e.to);
        parents_[e.to].insert(e.from);
    }
    for (auto e : bidirected) {
        check(e.a, e.b);
        siblings_[e.a].insert(e.b);
        siblings_[e.b].insert(e.a);
    }
    for (int u = 0; u < m; ++u) {
        for (int v : children_[u]) directed_.push_back({u, v});
        for (int v : siblings_[u]) {
            if (u < v) bidirected_.push_back({u, v});
        }
    }
}

NodeSet descendants(const MixedGraph& g, int v, bool proper) {
    NodeSet seen;
    NodeSet frontier = proper ? g.children(v) : NodeSet::single(v);
    while (!frontier.empty()) {
        seen |= frontier;
        NodeSet next;
        for (int u : frontier) next |= g.children(u);
        frontier = next - seen;
    }
    return seen;
}

NodeSet htr(const MixedGraph& g, int v) {
    NodeSet reach = descendants(g, v, true);
    for (int s : g.siblings(v)) reach |= descendants(g, s, false);
    return reach - g.siblings(v) - NodeSet::single(v);
}

std::vector<int> topological_order(const MixedGraph& g) {
    const int m = g.size();
    std::vector<int> indegree(m);
    for (int v = 0; v < m; ++v) indegree[v] = g.parents(v).size();
    std::vector<int> order;
    order.reserve(m);
    // Smallest available node first, so the order is deterministic.
    NodeSet ready;
    for (int v = 0; v < m; ++v) {
        if (indegree[v] == 0) ready.insert(v);
    }
    while (!ready.empty()) {
        int u = *ready.begin();
        ready.erase(u);
        order.push_back(u);
        for (int w : g.children(u)) {
            if (--indegree[w] == 0) ready.insert(w);
        }
    }
    if (static_cast<int>(order.size()) != m) {
        throw precondition_error("graph has a directed cycle");
    }
    return order;
}

bool is_acyclic(const MixedGraph& g) {
    try {
        topological_order(g);
        return true;
    } catch (const precondition_error&) {
        return false;
    }
}

bool is_simple(const MixedGraph& g) {
    for (auto [u, v] : g.directed_edges()) {
        if (g.has_directed(v, u) || g.has_bidirected(u, v)) return false;
    }
    return true;
}

MixedGraph permute(const MixedGraph& g, const std::vector<int>& perm) {
    std::vector<DirectedEdge> d;
    std::vector<BidirectedEdge> b;
    for (auto [u, v] : g.directed_edges()) d.push_back({perm[u], perm[v]});
    for (auto [u, v] : g.bidirected_edges()) {
        b.push_back({std::min(perm[u], perm[v]), std::max(perm[u], perm[v])});
    }
    return MixedGraph(g.size(), d, b);
}

std::string canonical_form(const MixedGraph& g, int max_nodes) {
    const int bound = std::min(max_nodes, 8);
    if (g.size() > bound) {
        throw capability_error("canonical_form supports at most " + std::to_string(bound) +
                               " nodes, got " + std::to_string(g.size()));
    }
    detail::Canonizer canon(g.size());
    auto k = canon.canonical(detail::to_masks(g));
    char buf[64];
    std::snprintf(buf, sizeof buf, "%d:%016llx:%016llx", g.size(),
                  static_cast<unsigned long long>(k.directed),
                  static_cast<unsigned long long>(k.bidirected));
    return buf;
}

std::vector<MixedComponent> mixed_components(const MixedGraph& g) {
    if (!is_acyclic(g)) {
        throw precondition_error("mixed components are defined for acyclic graphs only");
    }
    const int m = g.size();
    std::vector<MixedComponent> out;
    NodeSet assigned;
    for (int start = 0; start < m; ++start) {
        if (assigned.contains(start)) continue;
        NodeSet district = NodeSet::single(start);
        NodeSet frontier = district;
        while (!frontier.empty()) {
            NodeSet next;
            for (int u : frontier) next |= g.siblings(u);
            frontier = next - district;
            district |= next;
        }
        assigned |= district;

        NodeSet members = district;
        for (int c : district) members |= g.parents(c);
        MixedComponent comp;
        comp.nodes = members.to_vector();
        comp.district = district;
        std::vector<int> local(m, -1);
        for (std::size_t i = 0; i < comp.nodes.size(); ++i) local[comp.nodes[i]] = static_cast<int>(i);

        std::vector<DirectedEdge> d;
        std::vector<BidirectedEdge> b;
        for (auto [u, v] : g.directed_edges()) {
            if (district.contains(v)) d.push_back({local[u], local[v]});
        }
        for (auto [u, v] : g.bidirected_edges()) {
            if (district.contains(u)) b.push_back({local[u], local[v]});
        }
        comp.graph = MixedGraph(static_cast<int>(comp.nodes.size()), d, b);
        out.push_back(std::move(comp));
    }
    return out;
}

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
    std::vector<std::string_view> words;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) words.push_back(line.substr(i, j - i));
        i = j;
    }
    return words;
}

int parse_int(std::string_view word, int line_no) {
    int value = 0;
    auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), value);
    if (ec != std::errc{} || ptr != word.data() + word.size()) {
        throw parse_error(line_no, "expected an integer, got '" + std::string(word) + "'");
    }
    return value;
}

}  // namespace

MixedGraph parse_graph(std::string_view text) {
    int m = -1;
    std::vector<DirectedEdge> d;
    std::vector<BidirectedEdge> b;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        auto words = split_words(line);
        if (words.empty()) continue;

        if (m < 0) {
            if (words.size() != 2 || words[0] != "nodes") {
                throw parse_error(line_no, "expected 'nodes <m>' header");
            }
            m = parse_int(words[1], line_no);
            if (m < 1 || m > max_nodes) {
                throw parse_error(line_no, "node count must lie in [1, 64]");
            }
            continue;
        }
        if (words.size() != 3 || (words[0] != "d" && words[0] != "b")) {
            throw parse_error(line_no, "expected 'd <u> <v>' or 'b <u> <v>'");
        }
        int u = parse_int(words[1], line_no);
        int v = parse_int(words[2], line_no);
        if (u < 1 || u > m || v < 1 || v > m) {
            throw parse_error(line_no, "node index out of range [1, " + std::to_string(m) + "]");
        }
        if (u == v) throw parse_error(line_no, "self-loop at node " + std::to_string(u));
        if (words[0] == "d") {
            d.push_back({u - 1, v - 1});
        } else {
            b.push_back({std::min(u, v) - 1, std::max(u, v) - 1});
        }
    }
    if (m < 0) throw parse_error(line_no, "missing 'nodes <m>' header");
    return MixedGraph(m, d, b);
}

std::string to_text(const MixedGraph& g) {
    std::ostringstream out;
    out << "nodes " << g.size() << '\n';
    for (auto [u, v] : g.directed_edges()) out << "d " << u + 1 << ' ' << v + 1 << '\n';
    for (auto [u, v] : g.bidirected_edges()) out << "b " << u + 1 << ' ' << v + 1 << '\n';
    return out.str();
}

namespace detail {

EdgeMasks to_masks(const MixedGraph& g) {
    const int m = g.size();
    EdgeMasks k;
    for (auto [u, v] : g.directed_edges()) k.directed |= std::uint64_t{1} << (u * m + v);
    for (auto [u, v] : g.bidirected_edges()) k.bidirected |= std::uint64_t{1} << (u * m + v);
    return k;
}

MixedGraph from_masks(int m, const EdgeMasks& k) {
    std::vector<DirectedEdge> d;
    std::vector<BidirectedEdge> b;
    for (int u = 0; u < m; ++u) {
        for (int v = 0; v < m; ++v) {
            int bit = u * m + v;
            if ((k.directed >> bit) & 1U) d.push_back({u, v});
            if (u < v && ((k.bidirected >> bit) & 1U)) b.push_back({u, v});
        }
    }
    return MixedGraph(m, d, b);
}

Canonizer::Canonizer(int m) : m_(m) {
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::vector<std::uint8_t> map(m * m, 0);
        for (int u = 0; u < m; ++u) {
            for (int v = 0; v < m; ++v) {
                map[u * m + v] = static_cast<std::uint8_t>(perm[u] * m + perm[v]);
            }
        }
        slot_maps_.push_back(std::move(map));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

namespace {

std::uint64_t apply_directed(const std::vector<std::uint8_t>& map, std::uint64_t bits) {
    std::uint64_t out = 0;
    while (bits) {
        int bit = std::countr_zero(bits);
        bits &= bits - 1;
        out |= std::uint64_t{1} << map[bit];
    }
    return out;
}

std::uint64_t apply_bidirected(const std::vector<std::uint8_t>& map, int m, std::uint64_t bits) {
    std::uint64_t out = 0;
    while (bits) {
        int bit = std::countr_zero(bits);
        bits &= bits - 1;
        int target = map[bit];
        int a = target / m, b = target % m;
        if (a > b) target = b * m + a;
        out |= std::uint64_t{1} << target;
    }
    return out;
}

}  // namespace

EdgeMasks Canonizer::canonical(const EdgeMasks& k) const {
    EdgeMasks best{~std::uint64_t{0}, ~std::uint64_t{0}};
    for (const auto& map : slot_maps_) {
        std::uint64_t d = apply_directed(map, k.directed);
        if (d > best.directed) continue;
        std::uint64_t b = apply_bidirected(map, m_, k.bidirected);
        EdgeMasks cand{d, b};
        if (cand < best) best = cand;
    }
    return best;
}

bool masks_acyclic(int m, std::uint64_t directed) {
    std::uint32_t remaining = (1U << m) - 1;
    // Repeatedly strip nodes without incoming edges from remaining nodes.
    while (remaining) {
        bool progress = false;
        for (int v = 0; v < m; ++v) {
            if (!((remaining >> v) & 1U)) continue;
            bool has_parent = false;
            for (int u = 0; u < m && !has_parent; ++u) {
                if (((remaining >> u) & 1U) && ((directed >> (u * m + v)) & 1U)) has_parent = true;
            }
            if (!has_parent) {
                remaining &= ~(1U << v);
                progress = true;
            }
        }
        if (!progress) return false;
    }
    return true;
}

}  // namespace detail

}  // namespace halftrek
