#pragma once

// JSON views of graphs, Hamiltonian reports and structural findings.

#include <string>

#include "eqgraph/graph.hpp"
#include "eqgraph/hamilton.hpp"
#include "eqgraph/structure.hpp"
#include "json.hpp"

namespace eqgraph {

inline constexpr int report_schema_version = 1;

inline nlohmann::json spec_json(const PolySpec& f) {
    return {{"p", f.p}, {"lambda", f.lambda}, {"coeffs", f.coeffs}, {"poly", format_poly(f)}};
}

inline nlohmann::json graph_summary_json(const EqGraph& g) {
    const auto report = component_report(g);
    const auto degrees = degree_profile(g);
    nlohmann::json j = spec_json(g.spec());
    j["schema"] = report_schema_version;
    j["edge_count"] = g.edge_count();
    j["components"] = report.components;
    j["connected"] = report.is_connected;
    j["strongly_connected"] = report.strong_components.size() == 1;
    j["strong_component_count"] = report.strong_components.size();
    j["zero_indegree"] = report.degree_anomalies;
    j["permutation"] = g.permutation();
    j["permutation_degree_profile"] = degrees.permutation_profile;
    j["bipartite"] = is_bipartite(g);
    return j;
}

inline nlohmann::json cycle_json(const Cycle& c) { return {{"vertices", c.vertices}, {"weights", c.weights}}; }

inline nlohmann::json by_type_json(const std::map<std::size_t, std::uint64_t>& by_type) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [t, c] : by_type) j[std::to_string(t)] = c;
    return j;
}

/// Whole-graph Hamiltonian report: per-component entries plus summed totals.
inline nlohmann::json hamilton_json(const EqGraph& g, const std::vector<VertexSet>& comps,
                                    const std::vector<HamiltonReport>& reports, bool with_witness) {
    nlohmann::json j = spec_json(g.spec());
    j["schema"] = report_schema_version;
    std::uint64_t total = 0;
    std::map<std::size_t, std::uint64_t> by_type;
    bool balance_ok = true;
    nlohmann::json parts = nlohmann::json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const auto& r = reports[i];
        total += r.total;
        for (const auto& [t, c] : r.by_type) by_type[t] += c;
        balance_ok = balance_ok && r.balance_ok;
        nlohmann::json part = {{"vertices", comps[i]},
                               {"total", r.total},
                               {"by_type", by_type_json(r.by_type)},
                               {"balance_checked", r.balance_checked},
                               {"balance_ok", r.balance_ok}};
        if (r.witness_min_type) {
            const auto bal = balance_sequence(g, *r.witness_min_type);
            part["balance_counts"] = {bal.zeros, bal.ones};
            if (with_witness) part["witness"] = cycle_json(*r.witness_min_type);
        }
        parts.push_back(std::move(part));
    }
    j["total"] = total;
    j["by_type"] = by_type_json(by_type);
    j["balance_ok"] = balance_ok;
    j["components"] = parts;
    return j;
}

inline nlohmann::json findings_json(const std::vector<SmallComponentFinding>& findings) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& f : findings) {
        arr.push_back({{"formula_id", f.formula_id},
                       {"size", f.size},
                       {"vertices", f.vertices},
                       {"matches_formula", f.matches_formula}});
    }
    return arr;
}

inline nlohmann::json bound_json(const BoundCheck& b) {
    return {{"count", b.count},
            {"bound", b.bound},
            {"applicable", b.applicable},
            {"pass", b.pass},
            {"formula_id", b.formula_id}};
}

}  // namespace eqgraph
