#include "halftrek/report.hpp"

#include <cstdio>

#include "halftrek/errors.hpp"

namespace halftrek {

using nlohmann::json;

namespace {

json one_based(NodeSet s) {
    json out = json::array();
    for (int v : s) out.push_back(v + 1);
    return out;
}

json one_based(const std::vector<int>& nodes) {
    json out = json::array();
    for (int v : nodes) out.push_back(v + 1);
    return out;
}

json trek_json(const Trek& t) {
    return {{"left", one_based(t.left)}, {"right", one_based(t.right)}, {"bidirected", t.bidirected}};
}

}  // namespace

json classification_json(const Classification& c) {
    json out;
    out["verdict"] = to_string(c.verdict);
    out["solved_nodes"] = one_based(c.solved);
    if (c.witness) {
        json y = json::object();
        for (std::size_t v = 0; v < c.witness->y.size(); ++v) {
            y[std::to_string(v + 1)] = one_based(c.witness->y[v]);
        }
        out["witness"] = {{"order", one_based(c.witness->order)}, {"Y", y}};
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

json decomposition_json(const DecompositionReport& r) {
    json comps = json::array();
    for (std::size_t i = 0; i < r.components.size(); ++i) {
        const auto& comp = r.components[i];
        json c = classification_json(r.per_component[i]);
        c["nodes"] = one_based(comp.nodes);
        c["district"] = one_based(comp.district);
        comps.push_back(std::move(c));
    }
    return {{"combined", to_string(r.combined)}, {"components", comps}};
}

json gc_json(const GcResult& r) {
    json out;
    out["gc_identifiable"] = r.identifiable;
    if (!r.witness) {
        out["witness"] = nullptr;
        return out;
    }
    const GcWitness& w = *r.witness;
    json nodes = json::object();
    for (std::size_t v = 0; v < w.nodes.size(); ++v) {
        const auto& n = w.nodes[v];
        json pi = json::array(), psi = json::array();
        for (const auto& t : n.pi) pi.push_back(trek_json(t));
        for (const auto& t : n.psi) psi.push_back(trek_json(t));
        nodes[std::to_string(v + 1)] = {{"Y", one_based(n.y)}, {"Z", one_based(n.z)},
                                        {"pi", pi}, {"psi", psi}};
    }
    out["witness"] = {{"topological_order", one_based(w.topological)},
                      {"condition", w.condition == GcCondition::c1 ? "C1" : "C2"},
                      {"c2_order", one_based(w.c2_order)},
                      {"nodes", nodes}};
    return out;
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
    std::string out;
    char buf[64];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", m(r, c));
            if (c > 0) out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

namespace {

Eigen::MatrixXd read_square(const json& doc, const char* key, int m) {
    if (!doc.contains(key) || !doc[key].is_array() || static_cast<int>(doc[key].size()) != m) {
        throw parse_error(0, std::string("'") + key + "' must be an array of " +
                                 std::to_string(m) + " rows");
    }
    Eigen::MatrixXd out(m, m);
    for (int r = 0; r < m; ++r) {
        const json& row = doc[key][r];
        if (!row.is_array() || static_cast<int>(row.size()) != m) {
            throw parse_error(0, std::string("'") + key + "' row " + std::to_string(r + 1) +
                                     " must have " + std::to_string(m) + " entries");
        }
        for (int c = 0; c < m; ++c) {
            if (!row[c].is_number()) throw parse_error(0, std::string("'") + key + "' has a non-number");
            out(r, c) = row[c].get<double>();
        }
    }
    return out;
}

}  // namespace

Params params_from_json(std::string_view text, int m) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw parse_error(0, std::string("invalid JSON: ") + e.what());
    }
    return Params{read_square(doc, "lambda", m), read_square(doc, "omega", m)};
}

}  // namespace halftrek
