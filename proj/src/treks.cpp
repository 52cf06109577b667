#include "halftrek/treks.hpp"

#include "halftrek/errors.hpp"

namespace halftrek {

NodeSet Trek::left_set() const {
    NodeSet s;
    for (int v : left) s.insert(v);
    return s;
}

NodeSet Trek::right_set() const {
    NodeSet s;
    for (int v : right) s.insert(v);
    return s;
}

namespace {

void extend_backwards(const MixedGraph& g, std::vector<int>& reversed,
                      std::vector<std::vector<int>>& out) {
    out.emplace_back(reversed.rbegin(), reversed.rend());
    for (int p : g.parents(reversed.back())) {
        reversed.push_back(p);
        extend_backwards(g, reversed, out);
        reversed.pop_back();
    }
}

}  // namespace

std::vector<std::vector<int>> directed_paths_into(const MixedGraph& g, int to) {
    if (!is_acyclic(g)) throw precondition_error("directed path enumeration needs an acyclic graph");
    std::vector<std::vector<int>> out;
    std::vector<int> reversed{to};
    extend_backwards(g, reversed, out);
    return out;
}

std::vector<Trek> enumerate_treks(const MixedGraph& g, int source, int target) {
    auto into_source = directed_paths_into(g, source);
    auto into_target = directed_paths_into(g, target);
    std::vector<Trek> treks;
    // Directed top: both legs start at the same node.
    for (const auto& l : into_source) {
        for (const auto& r : into_target) {
            if (l.front() == r.front()) treks.push_back({l, r, false});
        }
    }
    // Bidirected edge joining the two leg starts.
    for (const auto& l : into_source) {
        for (const auto& r : into_target) {
            if (g.has_bidirected(l.front(), r.front())) treks.push_back({l, r, true});
        }
    }
    return treks;
}

}  // namespace halftrek
