#pragma once

// Directed Hamiltonian cycles of the components of G(lambda, f), their Type
// (longest run of equal edge weights) and the binary sequences they carry.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqgraph/error.hpp"
#include "eqgraph/graph.hpp"

namespace eqgraph {

/// A directed cycle rotated so that vertices.front() is its minimal vertex.
/// weights[i] is the weight of the edge vertices[i] -> vertices[i + 1 mod k].
struct Cycle {
    std::vector<Vertex> vertices;
    std::vector<std::uint8_t> weights;

    std::size_t size() const noexcept { return vertices.size(); }
    friend bool operator==(const Cycle&, const Cycle&) = default;
};

/// Validates a closed walk through distinct vertices and puts it in canonical rotation.
inline Cycle make_cycle(const EqGraph& g, std::vector<Vertex> vertices) {
    if (vertices.empty()) throw Error(Errc::InvalidArgument, "empty cycle");
    auto sorted = vertices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw Error(Errc::InvalidArgument, "cycle repeats a vertex");
    }
    std::rotate(vertices.begin(), std::min_element(vertices.begin(), vertices.end()), vertices.end());
    Cycle c;
    c.weights.reserve(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Vertex from = vertices[i];
        const Vertex to = vertices[(i + 1) % vertices.size()];
        if (from >= g.vertex_count() || to >= g.vertex_count()) throw Error(Errc::InvalidElement, "vertex out of range");
        auto w = g.weight(from, to);
        if (!w) throw Error(Errc::InvalidArgument, std::to_string(from) + " -> " + std::to_string(to) + " is not an edge");
        c.weights.push_back(*w);
    }
    c.vertices = std::move(vertices);
    return c;
}

/// Longest run of equal values; with `cyclic` the run may wrap around the end.
inline std::size_t max_run(std::span<const std::uint8_t> w, bool cyclic) {
    if (w.empty()) return 0;
    std::size_t best = 1, cur = 1;
    for (std::size_t i = 1; i < w.size(); ++i) {
        cur = w[i] == w[i - 1] ? cur + 1 : 1;
        best = std::max(best, cur);
    }
    if (!cyclic || best == w.size()) return best;
    if (w.front() == w.back()) {
        std::size_t head = 0, tail = 0;
        while (w[head] == w.front()) ++head;
        while (w[w.size() - 1 - tail] == w.back()) ++tail;
        best = std::max(best, head + tail);
    }
    return best;
}

struct CycleType {
    std::size_t n = 0;
    friend bool operator==(const CycleType&, const CycleType&) = default;
};

/// Type of a cycle. With vertex 0 on the cycle, the edge into 0 is dropped and the
/// remaining path (starting at 0) is typed; a 0-free cycle is typed cyclically.
/// The one-vertex loop at 0 has no typed edges and reports Type 0.
inline CycleType classify_type(const EqGraph&, const Cycle& c) {
    std::span<const std::uint8_t> w(c.weights);
    if (c.vertices.front() == 0) return {max_run(w.first(w.size() - 1), false)};
    return {max_run(w, true)};
}

struct EnumerateOptions {
    /// Count only cycles of Type <= max_type, pruning partial paths whose runs exceed it.
    std::optional<std::size_t> max_type;
    std::size_t component_cap = 100;
    bool keep_cycles = false;
};

struct HamiltonReport {
    std::uint64_t total = 0;
    std::map<std::size_t, std::uint64_t> by_type;
    std::optional<Cycle> witness_min_type;
    bool balance_checked = false;
    bool balance_ok = true;
    std::vector<Cycle> cycles;  // only with keep_cycles
};

namespace detail {

inline bool balance_holds(std::size_t zeros, std::size_t ones, bool contains_zero) {
    return contains_zero ? zeros == ones + 1 : zeros == ones;
}

}  // namespace detail

/// Backtracking over one weak component, starting at its minimal vertex and trying
/// successors in ascending order. Each directed cycle is counted once.
inline HamiltonReport enumerate(const EqGraph& g, const VertexSet& component, const EnumerateOptions& opts = {}) {
    const std::size_t k = component.size();
    if (k == 0) throw Error(Errc::InvalidArgument, "empty component");
    if (k > opts.component_cap) {
        throw Error(Errc::ComponentTooLarge,
                    "component of " + std::to_string(k) + " vertices exceeds cap " + std::to_string(opts.component_cap));
    }
    if (!std::is_sorted(component.begin(), component.end())) throw Error(Errc::InvalidArgument, "component not sorted");

    // local relabelling: component[i] -> i
    constexpr std::uint32_t absent = 0xFFFFFFFFU;
    std::vector<std::uint32_t> local(g.vertex_count(), absent);
    for (std::uint32_t i = 0; i < k; ++i) local[component[i]] = i;
    struct LocalEdge {
        std::uint32_t to;
        std::uint8_t w;
    };
    std::vector<LocalEdge> adj(2 * k);
    std::vector<std::uint8_t> deg(k, 0);
    for (std::uint32_t i = 0; i < k; ++i) {
        for (const Edge& e : g.successors(component[i])) {
            if (local[e.target] == absent) throw Error(Errc::InvalidArgument, "vertex set is not a closed component");
            adj[2 * i + deg[i]++] = {local[e.target], e.weight};
        }
    }

    const bool contains_zero = component.front() == 0;
    const std::size_t limit = opts.max_type.value_or(k + 1);

    HamiltonReport report;
    report.balance_checked = g.permutation();
    std::optional<std::size_t> witness_type;

    std::vector<std::uint32_t> path(k), next(k, 0);
    std::vector<std::uint8_t> weights(k);
    std::vector<std::size_t> run(k, 0), best(k, 0), zeros(k, 0);
    std::vector<char> visited(k, 0);

    auto record = [&](std::size_t depth, std::uint8_t closing) {
        weights[depth] = closing;
        std::size_t type;
        if (contains_zero) {
            type = best[depth];
        } else {
            type = max_run(std::span<const std::uint8_t>(weights.data(), k), true);
        }
        if (type > limit) return;
        ++report.total;
        ++report.by_type[type];
        if (report.balance_checked) {
            const std::size_t z = zeros[depth] + (closing == 0 ? 1 : 0);
            if (!detail::balance_holds(z, k - z, contains_zero)) report.balance_ok = false;
        }
        const bool new_witness = !witness_type || type < *witness_type;
        if (new_witness || opts.keep_cycles) {
            Cycle c;
            c.vertices.reserve(k);
            for (std::size_t i = 0; i < k; ++i) c.vertices.push_back(component[path[i]]);
            c.weights.assign(weights.begin(), weights.begin() + static_cast<std::ptrdiff_t>(k));
            if (new_witness) {
                witness_type = type;
                report.witness_min_type = c;
            }
            if (opts.keep_cycles) report.cycles.push_back(std::move(c));
        }
    };

    path[0] = 0;
    visited[0] = 1;
    std::size_t depth = 0;
    next[0] = 0;
    for (;;) {
        const std::uint32_t v = path[depth];
        if (depth + 1 == k) {
            for (std::uint8_t i = 0; i < deg[v]; ++i) {
                if (adj[2 * v + i].to == 0) record(depth, adj[2 * v + i].w);
            }
        } else if (next[depth] < deg[v]) {
            const LocalEdge e = adj[2 * v + next[depth]++];
            if (visited[e.to]) continue;
            const std::size_t r = (depth > 0 && weights[depth - 1] == e.w) ? run[depth] + 1 : 1;
            if (r > limit) continue;
            weights[depth] = e.w;
            visited[e.to] = 1;
            ++depth;
            path[depth] = e.to;
            next[depth] = 0;
            run[depth] = r;
            best[depth] = std::max(best[depth - 1], r);
            zeros[depth] = zeros[depth - 1] + (e.w == 0 ? 1 : 0);
            continue;
        }
        // backtrack
        if (depth == 0) break;
        visited[path[depth]] = 0;
        --depth;
    }
    return report;
}

/// Hamiltonian cycle reports for every weak component, in component order.
inline std::vector<HamiltonReport> enumerate_all(const EqGraph& g, const EnumerateOptions& opts = {}) {
    std::vector<HamiltonReport> out;
    for (const auto& comp : weak_components(g)) out.push_back(enumerate(g, comp, opts));
    return out;
}

struct BalanceResult {
    std::vector<std::uint8_t> sequence;
    std::size_t zeros = 0;
    std::size_t ones = 0;
    /// |#0 - #1| <= 1 with the exact split forced by whether 0 is on the cycle.
    bool balanced = false;
};

/// Weight sequence along a Hamiltonian cycle of one weak component.
inline BalanceResult balance_sequence(const EqGraph& g, const Cycle& c) {
    auto members = c.vertices;
    std::sort(members.begin(), members.end());
    bool hamiltonian = false;
    for (const auto& comp : weak_components(g)) {
        if (comp == members) {
            hamiltonian = true;
            break;
        }
    }
    if (!hamiltonian) throw Error(Errc::NotHamiltonian, "cycle does not span a connected component");
    // re-derive weights from the graph rather than trusting the caller's copy
    const Cycle checked = make_cycle(g, c.vertices);
    BalanceResult r;
    r.sequence = checked.weights;
    r.zeros = static_cast<std::size_t>(std::count(r.sequence.begin(), r.sequence.end(), 0));
    r.ones = r.sequence.size() - r.zeros;
    const std::size_t diff = r.zeros > r.ones ? r.zeros - r.ones : r.ones - r.zeros;
    r.balanced = diff <= 1 && detail::balance_holds(r.zeros, r.ones, members.front() == 0);
    return r;
}

/// Maximum number of vertices on a directed path with no two consecutive edges of
/// equal weight, by exhaustive search over (vertex, last weight) states.
inline std::size_t longest_type1_path(const EqGraph& g, std::size_t cap = 101) {
    const std::size_t n = g.vertex_count();
    if (n > cap) {
        throw Error(Errc::SearchBudgetExceeded,
                    "p = " + std::to_string(n) + " exceeds longest-path cap " + std::to_string(cap));
    }
    std::size_t best = n > 0 ? 1 : 0;
    std::vector<char> visited(n, 0);
    struct Frame {
        Vertex v;
        std::uint8_t last;  // 2 = no edge yet
        std::uint8_t next;
    };
    std::vector<Frame> stack;
    stack.reserve(n);
    for (Vertex s = 0; s < n && best < n; ++s) {
        stack.push_back({s, 2, 0});
        visited[s] = 1;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const auto succ = g.successors(f.v);
            if (f.next < succ.size()) {
                const Edge e = succ[f.next++];
                if (visited[e.target] || e.weight == f.last) continue;
                visited[e.target] = 1;
                stack.push_back({e.target, e.weight, 0});
                best = std::max(best, stack.size());
                continue;
            }
            visited[f.v] = 0;
            stack.pop_back();
        }
    }
    return best;
}

struct TypeTable {
    VertexSet component;
    std::uint64_t total = 0;
    std::map<std::size_t, std::uint64_t> by_type;

    bool has_type(std::size_t n) const { return by_type.count(n) != 0 && by_type.at(n) != 0; }
    std::uint64_t count_at_most(std::size_t n) const {
        std::uint64_t s = 0;
        for (const auto& [t, c] : by_type) {
            if (t <= n) s += c;
        }
        return s;
    }
};

/// Cycle counts by Type for each weak component (a single entry when connected).
inline std::vector<TypeTable> type_table(const EqGraph& g, std::size_t component_cap = 100) {
    std::vector<TypeTable> out;
    for (auto& comp : weak_components(g)) {
        const auto rep = enumerate(g, comp, {std::nullopt, component_cap, false});
        out.push_back({std::move(comp), rep.total, rep.by_type});
    }
    return out;
}

}  // namespace eqgraph
