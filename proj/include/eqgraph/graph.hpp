#pragma once

// The equational graph G(lambda, f): vertex x has an edge to y iff
// (y^2 - f(x)) (lambda y^2 - f(x)) = 0.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "eqgraph/error.hpp"
#include "eqgraph/field.hpp"

namespace eqgraph {

using Vertex = std::uint32_t;
using VertexSet = std::vector<Vertex>;  // sorted ascending

/// Weight 0: y^2 = f(x).  Weight 1: lambda y^2 = f(x), y != 0.
struct Edge {
    Vertex target = 0;
    std::uint8_t weight = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

class EqGraph {
   public:
    const PolySpec& spec() const noexcept { return spec_; }
    Elem p() const noexcept { return spec_.p; }
    Elem lambda() const noexcept { return spec_.lambda; }
    std::size_t vertex_count() const noexcept { return out_deg_.size(); }
    std::size_t edge_count() const noexcept { return preds_.size(); }

    /// Out-edges in ascending target order; at most two.
    std::span<const Edge> successors(Vertex x) const noexcept {
        return {out_.data() + 2 * static_cast<std::size_t>(x), out_deg_[x]};
    }
    std::span<const Vertex> predecessors(Vertex y) const noexcept {
        return {preds_.data() + pred_begin_[y], pred_begin_[y + 1] - pred_begin_[y]};
    }

    std::size_t out_degree(Vertex x) const noexcept { return out_deg_[x]; }
    std::size_t in_degree(Vertex y) const noexcept { return pred_begin_[y + 1] - pred_begin_[y]; }

    std::optional<std::uint8_t> weight(Vertex x, Vertex y) const noexcept {
        for (const Edge& e : successors(x)) {
            if (e.target == y) return e.weight;
        }
        return std::nullopt;
    }
    bool has_edge(Vertex x, Vertex y) const noexcept { return weight(x, y).has_value(); }

    /// True iff x -> f(x) is a bijection of F_p.
    bool permutation() const noexcept { return permutation_; }

    friend EqGraph build_from_values(const FieldCtx& ctx, PolySpec spec, std::span<const Elem> values);

   private:
    EqGraph() = default;

    PolySpec spec_;
    std::vector<Edge> out_;  // 2 slots per vertex
    std::vector<std::uint8_t> out_deg_;
    std::vector<std::size_t> pred_begin_;
    std::vector<Vertex> preds_;
    bool permutation_ = false;
};

/// Builds the graph from precomputed values f(0..p-1).
inline EqGraph build_from_values(const FieldCtx& ctx, PolySpec spec, std::span<const Elem> values) {
    const Elem p = ctx.p();
    if (spec.p != p || values.size() != p) throw Error(Errc::InvalidArgument, "value table does not match modulus");
    if (ctx.chi(spec.lambda) != -1) {
        throw Error(Errc::LambdaIsSquare, std::to_string(spec.lambda) + " is a square mod " + std::to_string(p));
    }
    const Elem lambda_inv = ctx.inv(spec.lambda);

    EqGraph g;
    g.spec_ = std::move(spec);
    g.out_.resize(2 * p);
    g.out_deg_.assign(p, 0);
    std::vector<std::size_t> in_count(p + 1, 0);
    std::vector<char> hit(p, 0);
    bool injective = true;

    for (Elem x = 0; x < p; ++x) {
        const Elem v = values[x];
        if (hit[v]) injective = false;
        hit[v] = 1;
        Edge* slot = g.out_.data() + 2 * x;
        if (v == 0) {
            slot[0] = {0, 0};
            g.out_deg_[x] = 1;
            ++in_count[0];
            continue;
        }
        const bool square = ctx.chi(v) == 1;
        const auto roots = *ctx.sqrt_pair(square ? v : ctx.mul(v, lambda_inv));
        const std::uint8_t w = square ? 0 : 1;
        slot[0] = {static_cast<Vertex>(roots.low), w};
        slot[1] = {static_cast<Vertex>(roots.high), w};
        g.out_deg_[x] = 2;
        ++in_count[roots.low];
        ++in_count[roots.high];
    }
    g.permutation_ = injective;

    g.pred_begin_.assign(p + 1, 0);
    for (Elem y = 0; y < p; ++y) g.pred_begin_[y + 1] = g.pred_begin_[y] + in_count[y];
    g.preds_.resize(g.pred_begin_[p]);
    std::vector<std::size_t> fill(g.pred_begin_.begin(), g.pred_begin_.end() - 1);
    for (Vertex x = 0; x < p; ++x) {
        for (const Edge& e : g.successors(x)) g.preds_[fill[e.target]++] = x;
    }
    return g;
}

inline EqGraph build(const PolySpec& spec, const FieldCtx& ctx) {
    const auto values = evaluate_all(spec, ctx);
    return build_from_values(ctx, spec, values);
}

struct DegreeProfile {
    std::vector<std::uint32_t> in;
    std::vector<std::uint32_t> out;
    std::size_t edge_count = 0;
    /// The near-2-regular profile forced when f is a permutation.
    bool permutation_profile = false;
};

inline DegreeProfile degree_profile(const EqGraph& g) {
    const std::size_t n = g.vertex_count();
    DegreeProfile d;
    d.in.resize(n);
    d.out.resize(n);
    for (Vertex v = 0; v < n; ++v) {
        d.in[v] = static_cast<std::uint32_t>(g.in_degree(v));
        d.out[v] = static_cast<std::uint32_t>(g.out_degree(v));
    }
    d.edge_count = g.edge_count();

    // f(0) = 0: vertex 0 is (1,1), all others (2,2).
    // f(0) != 0: vertex 0 is (1,2), the unique root z of f is (2,1), all others (2,2).
    bool ok = true;
    const bool zero_fixed = d.out[0] == 1;
    std::size_t roots = 0;
    for (Vertex v = 0; v < n && ok; ++v) {
        if (v == 0) {
            ok = d.in[0] == 1 && d.out[0] == (zero_fixed ? 1U : 2U);
        } else if (d.out[v] == 1) {
            ++roots;
            ok = !zero_fixed && d.in[v] == 2;
        } else {
            ok = d.in[v] == 2 && d.out[v] == 2;
        }
    }
    d.permutation_profile = ok && roots == (zero_fixed ? 0U : 1U);
    return d;
}

namespace detail {

inline void sort_components(std::vector<VertexSet>& comps) {
    for (auto& c : comps) std::sort(c.begin(), c.end());
    std::sort(comps.begin(), comps.end(), [](const VertexSet& a, const VertexSet& b) { return a.front() < b.front(); });
}

}  // namespace detail

/// Weakly connected components, each sorted, ordered by minimal vertex.
inline std::vector<VertexSet> weak_components(const EqGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<char> seen(n, 0);
    std::vector<VertexSet> comps;
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        VertexSet comp;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (const Edge& e : g.successors(v)) {
                if (!seen[e.target]) {
                    seen[e.target] = 1;
                    stack.push_back(e.target);
                }
            }
            for (Vertex u : g.predecessors(v)) {
                if (!seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
            }
        }
        comps.push_back(std::move(comp));
    }
    detail::sort_components(comps);
    return comps;
}

/// Number of weak components without materializing them.
inline std::size_t count_weak_components(const EqGraph& g, std::vector<std::size_t>* sizes = nullptr) {
    const std::size_t n = g.vertex_count();
    std::vector<char> seen(n, 0);
    std::vector<Vertex> stack;
    std::size_t count = 0;
    for (Vertex s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++count;
        std::size_t size = 0;
        seen[s] = 1;
        stack.push_back(s);
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            ++size;
            for (const Edge& e : g.successors(v)) {
                if (!seen[e.target]) {
                    seen[e.target] = 1;
                    stack.push_back(e.target);
                }
            }
            for (Vertex u : g.predecessors(v)) {
                if (!seen[u]) {
                    seen[u] = 1;
                    stack.push_back(u);
                }
            }
        }
        if (sizes) sizes->push_back(size);
    }
    return count;
}

/// Strongly connected components by iterative Tarjan; same ordering as weak_components.
inline std::vector<VertexSet> strong_components(const EqGraph& g) {
    const std::size_t n = g.vertex_count();
    constexpr std::uint32_t unvisited = 0xFFFFFFFFU;
    std::vector<std::uint32_t> index(n, unvisited), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<Vertex> scc_stack;
    struct Frame {
        Vertex v;
        std::uint32_t next;
    };
    std::vector<Frame> call;
    std::vector<VertexSet> comps;
    std::uint32_t counter = 0;

    for (Vertex root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        call.push_back({root, 0});
        index[root] = low[root] = counter++;
        scc_stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            Frame& f = call.back();
            const auto succ = g.successors(f.v);
            if (f.next < succ.size()) {
                const Vertex w = succ[f.next++].target;
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    scc_stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const Vertex v = f.v;
            call.pop_back();
            if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
            if (low[v] == index[v]) {
                VertexSet comp;
                Vertex w;
                do {
                    w = scc_stack.back();
                    scc_stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != v);
                comps.push_back(std::move(comp));
            }
        }
    }
    detail::sort_components(comps);
    return comps;
}

/// 2-colouring of the undirected closure of an edge list on n vertices; a loop
/// makes the graph non-bipartite.
inline bool is_bipartite(std::size_t n, std::span<const std::pair<Vertex, Vertex>> edges) {
    std::vector<std::vector<Vertex>> adj(n);
    for (const auto& [x, y] : edges) {
        if (x >= n || y >= n) throw Error(Errc::InvalidArgument, "edge endpoint out of range");
        adj[x].push_back(y);
        adj[y].push_back(x);
    }
    std::vector<std::int8_t> colour(n, -1);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (colour[s] != -1) continue;
        colour[s] = 0;
        stack.push_back(s);
        while (!stack.empty()) {
            const Vertex v = stack.back();
            stack.pop_back();
            for (Vertex u : adj[v]) {
                if (colour[u] == -1) {
                    colour[u] = static_cast<std::int8_t>(1 - colour[v]);
                    stack.push_back(u);
                } else if (colour[u] == colour[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline bool is_bipartite(const EqGraph& g) {
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(g.edge_count());
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
        for (const Edge& e : g.successors(x)) edges.emplace_back(x, e.target);
    }
    return is_bipartite(g.vertex_count(), edges);
}

struct ComponentReport {
    std::vector<VertexSet> components;
    bool is_connected = false;
    std::vector<VertexSet> strong_components;
    VertexSet degree_anomalies;  // zero in-degree
};

inline ComponentReport component_report(const EqGraph& g) {
    ComponentReport r;
    r.components = weak_components(g);
    r.is_connected = r.components.size() == 1;
    r.strong_components = strong_components(g);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.in_degree(v) == 0) r.degree_anomalies.push_back(v);
    }
    return r;
}

/// "X^3 + 2", "2X + 1", "0".
inline std::string format_poly(const PolySpec& f) {
    std::string out;
    for (std::size_t i = f.coeffs.size(); i-- > 0;) {
        const Elem c = f.coeffs[i];
        if (c == 0) continue;
        if (!out.empty()) out += " + ";
        if (i == 0 || c != 1) out += std::to_string(c);
        if (i >= 1) out += "X";
        if (i >= 2) out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

/// Graphviz text; weight 0 solid and weight 1 dashed, or weights as labels.
inline std::string export_dot(const EqGraph& g, bool weights_as_styles = true) {
    std::ostringstream os;
    os << "digraph eqgraph {\n";
    os << "  label=\"G(" << g.lambda() << ", " << format_poly(g.spec()) << ") over F_" << g.p() << "\";\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v) os << "  " << v << ";\n";
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        for (const Edge& e : g.successors(v)) {
            os << "  " << v << " -> " << e.target;
            if (weights_as_styles) {
                os << " [style=" << (e.weight == 0 ? "solid" : "dashed") << "];\n";
            } else {
                os << " [label=\"" << int{e.weight} << "\"];\n";
            }
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace eqgraph
