#include "halftrek/gcrit.hpp"

#include <functional>
#include <map>

#include "halftrek/errors.hpp"

namespace halftrek {

int depth(const MixedGraph& g, int v) {
    std::vector<int> d(g.size(), 0);
    for (int u : topological_order(g)) {
        for (int p : g.parents(u)) d[u] = std::max(d[u], d[p] + 1);
    }
    return d[v];
}

namespace {

// One way of meeting the G-criterion at a node, reduced to what C1 and C2 need.
struct NodeOptions {
    std::optional<GcNodeWitness> c1;                 // some system with all depths below v's
    std::map<std::uint64_t, GcNodeWitness> c2;       // keyed by A ∩ (htr(v) ∪ S_>(v))
};

class GcSearch {
public:
    explicit GcSearch(const MixedGraph& g) : g_(g), m_(g.size()), depth_(m_), htr_(m_) {
        for (int v = 0; v < m_; ++v) {
            depth_[v] = depth(g, v);
            htr_[v] = htr(g, v);
        }
        treks_into_.resize(m_);
        for (int target = 0; target < m_; ++target) {
            for (int source = 0; source < m_; ++source) {
                auto treks = enumerate_treks(g, source, target);
                treks_into_[target].insert(treks_into_[target].end(), treks.begin(), treks.end());
            }
        }
    }

    std::optional<GcWitness> run() {
        std::vector<int> order;
        std::optional<GcWitness> found;
        orderings(order, NodeSet{}, found);
        return found;
    }

private:
    void orderings(std::vector<int>& order, NodeSet placed, std::optional<GcWitness>& found) {
        if (found) return;
        if (static_cast<int>(order.size()) == m_) {
            found = try_ordering(order);
            return;
        }
        for (int v = 0; v < m_; ++v) {
            if (placed.contains(v) || !g_.parents(v).subset_of(placed)) continue;
            order.push_back(v);
            orderings(order, placed | NodeSet::single(v), found);
            order.pop_back();
            if (found) return;
        }
    }

    std::optional<GcWitness> try_ordering(const std::vector<int>& order) {
        std::vector<int> rank(m_);
        for (int i = 0; i < m_; ++i) rank[order[i]] = i;
        std::vector<const NodeOptions*> opts(m_);
        for (int v = 0; v < m_; ++v) {
            NodeSet earlier;
            for (int s : g_.siblings(v)) {
                if (rank[s] < rank[v]) earlier.insert(s);
            }
            opts[v] = &options(v, earlier, order);
        }

        bool c1 = true;
        for (int v = 0; v < m_ && c1; ++v) c1 = opts[v]->c1.has_value();
        if (c1) {
            GcWitness w{order, GcCondition::c1, {}, {}};
            for (int v = 0; v < m_; ++v) w.nodes.push_back(*opts[v]->c1);
            return w;
        }

        // C2: the precedence constraints admit a total order iff repeatedly
        // accepting nodes whose constrained set is already accepted reaches all nodes.
        NodeSet done;
        std::vector<int> c2_order;
        std::vector<const GcNodeWitness*> chosen(m_, nullptr);
        bool changed = true;
        while (changed && done != g_.nodes()) {
            changed = false;
            for (int v = 0; v < m_; ++v) {
                if (done.contains(v)) continue;
                for (const auto& [required, witness] : opts[v]->c2) {
                    if (NodeSet(required).subset_of(done)) {
                        chosen[v] = &witness;
                        done.insert(v);
                        c2_order.push_back(v);
                        changed = true;
                        break;
                    }
                }
            }
        }
        if (done != g_.nodes()) return std::nullopt;
        GcWitness w{order, GcCondition::c2, c2_order, {}};
        for (int v = 0; v < m_; ++v) w.nodes.push_back(*chosen[v]);
        return w;
    }

    const NodeOptions& options(int v, NodeSet earlier, const std::vector<int>& order) {
        auto key = std::make_pair(v, earlier.bits());
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        NodeOptions result;
        GcNodeWitness base;
        base.parents = g_.parents(v).to_vector();
        for (int u : order) {
            if (earlier.contains(u)) base.earlier_sibs.push_back(u);
        }
        const NodeSet later = g_.siblings(v) - earlier;
        // Siblings that descend from v or from another sibling also carry unknown
        // coefficients into their equation, so they are ordered like htr(v).
        NodeSet below = descendants(g_, v, true);
        for (int s : g_.siblings(v)) below = below | descendants(g_, s, true);
        const NodeSet constrained = htr_[v] | later | (below & g_.siblings(v));
        const NodeSet self = NodeSet::single(v);

        std::vector<int> targets = base.parents;
        targets.insert(targets.end(), base.earlier_sibs.begin(), base.earlier_sibs.end());
        const std::size_t n_pi = base.parents.size();
        std::vector<const Trek*> picked(targets.size(), nullptr);

        std::function<void(std::size_t, NodeSet, NodeSet, NodeSet, NodeSet)> assign =
            [&](std::size_t i, NodeSet sources, NodeSet left, NodeSet right, NodeSet half) {
                if (i == targets.size()) {
                    record(result, base, picked, n_pi, v, sources, constrained, half);
                    return;
                }
                const bool to_parent = i < n_pi;
                for (const Trek& t : treks_into_[targets[i]]) {
                    int src = t.source();
                    if (src == v || sources.contains(src)) continue;
                    if (!to_parent && (t.bidirected || t.right.size() != 1)) continue;
                    // Extended paths must stay treks, so v may appear only as the new endpoint.
                    NodeSet l = t.left_set();
                    NodeSet r = to_parent ? t.right_set() : NodeSet{};
                    if (l.contains(v) || r.contains(v)) continue;
                    if (l.intersects(left) || r.intersects(right)) continue;
                    picked[i] = &t;
                    NodeSet h = half;
                    if (t.is_half_trek()) h.insert(src);
                    assign(i + 1, sources | NodeSet::single(src), left | l, right | r, h);
                }
            };
        assign(0, {}, {}, {}, {});
        return memo_.emplace(key, std::move(result)).first->second;
    }

    void record(NodeOptions& result, const GcNodeWitness& base,
                const std::vector<const Trek*>& picked, std::size_t n_pi, int v, NodeSet sources,
                NodeSet constrained, NodeSet half) const {
        bool shallow = true;
        for (int w : sources) shallow = shallow && depth_[w] < depth_[v];
        NodeSet required = sources & constrained;
        bool c2_ok = required.subset_of(half);
        if (!(shallow && !result.c1) && !(c2_ok && !result.c2.count(required.bits()))) return;

        GcNodeWitness w = base;
        for (std::size_t i = 0; i < picked.size(); ++i) {
            if (i < n_pi) {
                w.pi.push_back(*picked[i]);
                w.y.insert(picked[i]->source());
            } else {
                w.psi.push_back(*picked[i]);
                w.z.insert(picked[i]->source());
            }
        }
        if (shallow && !result.c1) result.c1 = w;
        if (c2_ok && !result.c2.count(required.bits())) result.c2.emplace(required.bits(), std::move(w));
    }

    const MixedGraph& g_;
    int m_;
    std::vector<int> depth_;
    std::vector<NodeSet> htr_;
    std::vector<std::vector<Trek>> treks_into_;
    std::map<std::pair<int, std::uint64_t>, NodeOptions> memo_;
};

}  // namespace

GcResult gc_identifiable(const MixedGraph& g) {
    if (g.size() > gc_max_nodes) {
        throw capability_error("G-criterion search supports at most " +
                               std::to_string(gc_max_nodes) + " nodes");
    }
    if (!is_acyclic(g)) throw precondition_error("the G-criterion is defined for acyclic graphs");
    GcSearch search(g);
    auto w = search.run();
    GcResult out;
    out.identifiable = w.has_value();
    out.witness = std::move(w);
    return out;
}

}  // namespace halftrek
