#pragma once

// Closed-form structural facts about G(lambda, f) for linear, quadratic and cubic f,
// each paired with a check against the built graph.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "eqgraph/error.hpp"
#include "eqgraph/field.hpp"
#include "eqgraph/graph.hpp"
#include "eqgraph/hamilton.hpp"

namespace eqgraph {

// ---------------------------------------------------------------------------
// Isomorphisms x -> c x between two graphs of the family.

enum class IsoKind { Scale, TwistScale };

struct IsomorphismWitness {
    IsoKind kind = IsoKind::Scale;
    Elem multiplier = 1;
    PolySpec source;
    PolySpec target;
    std::string formula_id;
};

/// True iff x -> c x maps the edge set of src onto that of dst.
inline bool scales_onto(const EqGraph& src, const EqGraph& dst, Elem c, const FieldCtx& ctx) {
    if (c % ctx.p() == 0) throw Error(Errc::InvalidArgument, "multiplier must be non-zero");
    if (src.vertex_count() != dst.vertex_count() || src.edge_count() != dst.edge_count()) return false;
    auto multiples = [&](Elem m) {
        std::vector<Vertex> out(ctx.p());
        Elem acc = 0;
        for (auto& v : out) {
            v = static_cast<Vertex>(acc);
            acc = ctx.add(acc, m);
        }
        return out;
    };
    const auto fwd = multiples(c % ctx.p());
    const auto back = multiples(ctx.inv(c % ctx.p()));
    for (Vertex x = 0; x < src.vertex_count(); ++x) {
        for (const Edge& e : src.successors(x)) {
            if (!dst.has_edge(fwd[x], fwd[e.target])) return false;
        }
    }
    for (Vertex x = 0; x < dst.vertex_count(); ++x) {
        for (const Edge& e : dst.successors(x)) {
            if (!src.has_edge(back[x], back[e.target])) return false;
        }
    }
    return true;
}

/// True iff x -> multiplier * x maps the edge set of G(source) onto that of G(target).
inline bool verify_isomorphism(const IsomorphismWitness& w, const FieldCtx& ctx) {
    return scales_onto(build(w.source, ctx), build(w.target, ctx), w.multiplier, ctx);
}

namespace iso {

/// G(lambda, aX + b) ~ G(lambda, X + b/a^2), psi(x) = x / a.
inline IsomorphismWitness linear_scale(const FieldCtx& ctx, Elem lambda, Elem a, Elem b) {
    const Elem ai = ctx.inv(a);
    return {IsoKind::Scale, ai, PolySpec::make(ctx, {b, a}, lambda),
            PolySpec::linear(ctx, ctx.mul(ctx.mul(ai, ai), b), lambda), "linear1"};
}

/// G(lambda, X + a) ~ G(1/lambda, X + lambda a), psi(x) = lambda x.
inline IsomorphismWitness linear_twist(const FieldCtx& ctx, Elem lambda, Elem a) {
    return {IsoKind::TwistScale, lambda, PolySpec::linear(ctx, a, lambda),
            PolySpec::linear(ctx, ctx.mul(lambda, a), ctx.inv(lambda)), "linear2"};
}

/// G(lambda, X^2 + aX + b) ~ G(lambda, X^2 + X + b/a^2), psi(x) = x / a.
inline IsomorphismWitness quadratic_scale(const FieldCtx& ctx, Elem lambda, Elem a, Elem b) {
    const Elem ai = ctx.inv(a);
    return {IsoKind::Scale, ai, PolySpec::make(ctx, {b, a, 1}, lambda),
            PolySpec::quadratic_shifted(ctx, ctx.mul(ctx.mul(ai, ai), b), lambda), "quad-iso1"};
}

/// G(lambda, X^2 + a) ~ G(lambda, X^2 + b) when b/a = c^2, psi(x) = c x.
inline IsomorphismWitness quadratic_square_ratio(const FieldCtx& ctx, Elem lambda, Elem a, Elem b) {
    const auto root = ctx.sqrt_pair(ctx.div(b, a));
    if (!root || b == 0) throw Error(Errc::PreconditionNotMet, "b/a must be a non-zero square");
    return {IsoKind::Scale, root->low, PolySpec::quadratic(ctx, a, lambda), PolySpec::quadratic(ctx, b, lambda),
            "quad-iso2"};
}

/// G(lambda, X^3 + aX + b) ~ G(1/lambda, X^3 + a/lambda^2 X + b/lambda^3), psi(x) = x / lambda.
inline IsomorphismWitness cubic_twist(const FieldCtx& ctx, Elem lambda, Elem a, Elem b) {
    const Elem li = ctx.inv(lambda);
    const Elem li2 = ctx.mul(li, li);
    return {IsoKind::TwistScale, li, PolySpec::make(ctx, {b, a, 0, 1}, lambda),
            PolySpec::make(ctx, {ctx.mul(ctx.mul(li2, li), b), ctx.mul(li2, a), 0, 1}, li), "cubic1"};
}

}  // namespace iso

// ---------------------------------------------------------------------------
// Fixed vertices and |S_lambda|.

inline VertexSet fixed_vertices(const EqGraph& g) {
    VertexSet out;
    for (Vertex x = 0; x < g.vertex_count(); ++x) {
        if (g.has_edge(x, x)) out.push_back(x);
    }
    return out;
}

/// G(lambda, X + a) has a fixed vertex iff a + 1/4 or lambda a + 1/4 is a square.
inline bool linear_has_fixed_vertex(const FieldCtx& ctx, Elem lambda, Elem a) {
    const Elem quarter = ctx.inv(ctx.from_int(4));
    return ctx.is_square(ctx.add(a, quarter)) || ctx.is_square(ctx.add(ctx.mul(lambda, a), quarter));
}

struct SLambdaSize {
    long long brute_force = 0;
    long long formula = 0;
    bool agree() const noexcept { return brute_force == formula; }
};

/// |{a : G(lambda, X + a) has a fixed vertex}|, counted directly and by
/// (3p + 1 + chi(lambda - 1) - chi(1 - lambda)) / 4.
inline SLambdaSize s_lambda_size(const FieldCtx& ctx, Elem lambda) {
    if (ctx.chi(lambda) != -1) throw Error(Errc::LambdaIsSquare, std::to_string(lambda) + " is a square");
    // a admits a loop at x iff a = x^2 - x or a = lambda x^2 - x
    std::vector<char> hit(ctx.p(), 0);
    for (Elem x = 0; x < ctx.p(); ++x) {
        const Elem x2 = ctx.mul(x, x);
        hit[ctx.sub(x2, x)] = 1;
        hit[ctx.sub(ctx.mul(lambda, x2), x)] = 1;
    }
    SLambdaSize r;
    r.brute_force = std::count(hit.begin(), hit.end(), 1);
    const long long numer = 3 * static_cast<long long>(ctx.p()) + 1 + ctx.chi(ctx.sub(lambda, 1)) -
                            ctx.chi(ctx.sub(1, lambda));
    r.formula = numer / 4;
    return r;
}

// ---------------------------------------------------------------------------
// Small components of G(lambda, X + a) and G(lambda, X^3 + a).

enum class Family { Linear, Quadratic, Cubic };

inline std::string to_string(Family f) {
    switch (f) {
        case Family::Linear: return "linear";
        case Family::Quadratic: return "quadratic";
        case Family::Cubic: return "cubic";
    }
    return "?";
}

/// Recognizes X + a (Linear) or X^3 + a (Cubic) and returns the constant a.
inline std::optional<std::pair<Family, Elem>> binomial_form(const PolySpec& f) {
    if (f.coeffs.size() == 2 && f.coeffs[1] == 1) return std::pair{Family::Linear, f.coeffs[0]};
    if (f.coeffs.size() == 4 && f.coeffs[1] == 0 && f.coeffs[2] == 0 && f.coeffs[3] == 1) {
        return std::pair{Family::Cubic, f.coeffs[0]};
    }
    return std::nullopt;
}

struct SmallComponentFinding {
    std::size_t size = 0;
    VertexSet vertices;
    bool matches_formula = false;  // the predicted set is exactly a weak component
    std::string formula_id;
};

namespace detail {

inline VertexSet vertex_set(std::initializer_list<Elem> vs) {
    VertexSet out;
    for (Elem v : vs) out.push_back(static_cast<Vertex>(v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// x with x^order = 1, x != 1, grouped into the 4-sets {x, -x, 1/x, -1/x}.
inline std::vector<VertexSet> reciprocal_root_quads(const FieldCtx& ctx, Elem order) {
    std::vector<VertexSet> out;
    for (Elem x = 2; x < ctx.p(); ++x) {
        if (ctx.pow(x, order) != 1) continue;
        auto s = vertex_set({x, ctx.neg(x), ctx.inv(x), ctx.neg(ctx.inv(x))});
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
    }
    return out;
}

}  // namespace detail

/// Components forced by the closed-form small-component characterizations for
/// G(lambda, X + a) and G(lambda, X^3 + a) (the latter requires 3 not dividing p - 1).
/// Each prediction is cross-checked against the weak components of the built graph.
inline std::vector<SmallComponentFinding> predict_small_components(const PolySpec& spec, const FieldCtx& ctx) {
    const auto form = binomial_form(spec);
    if (!form) throw Error(Errc::UnsupportedForm, "expected X + a or X^3 + a, got " + format_poly(spec));
    const auto [family, a] = *form;
    if (family == Family::Cubic && (ctx.p() - 1) % 3 == 0) {
        throw Error(Errc::PreconditionNotMet, "X^3 + a is not a permutation when 3 | p - 1");
    }
    const Elem lambda = spec.lambda;
    const Elem minus_one = ctx.neg(1);
    const bool cubic = family == Family::Cubic;
    const std::string tag = cubic ? "cubic" : "linear";
    std::vector<SmallComponentFinding> out;
    auto emit = [&](VertexSet vs, std::string id) {
        const std::size_t n = vs.size();
        out.push_back({n, std::move(vs), false, std::move(id)});
    };

    if (a != 0) {
        if (lambda != minus_one) {
            const Elem lm1 = ctx.sub(lambda, 1);
            const Elem lp1 = ctx.add(lambda, 1);
            // two vertices {x, -x}
            if (!cubic) {
                // a = 2 (lambda + 1) / (lambda - 1)^2, x = 2 / (1 - lambda)
                if (a == ctx.div(ctx.mul(2 % ctx.p(), lp1), ctx.mul(lm1, lm1))) {
                    const Elem x = ctx.div(2 % ctx.p(), ctx.neg(lm1));
                    emit(detail::vertex_set({x, ctx.neg(x)}), "linear-com2");
                }
            } else {
                // a = (lambda + 1)(lambda - 1)^2 / 8, x = (1 - lambda) / 2
                if (a == ctx.div(ctx.mul(lp1, ctx.mul(lm1, lm1)), ctx.from_int(8))) {
                    const Elem x = ctx.div(ctx.neg(lm1), 2 % ctx.p());
                    emit(detail::vertex_set({x, ctx.neg(x)}), "cubic-com2");
                }
            }
        }
        // three vertices {0, b, -b}
        const Elem two = ctx.from_int(2);
        const Elem half = ctx.inv(two);
        if (lambda == two && a == 1) {
            emit(detail::vertex_set({0, 1, minus_one}), tag + "-com3");
        }
        if (lambda == half) {
            const Elem want_a = cubic ? ctx.inv(ctx.from_int(8)) : two;
            const Elem b = cubic ? half : two;
            if (a == want_a) emit(detail::vertex_set({0, b, ctx.neg(b)}), tag + "-com3");
        }
    } else {
        // a = 0: vertex 0 carries a loop and is isolated
        emit({0}, tag + "-zero");
        const bool minus_one_square = ctx.is_square(minus_one);
        if (!minus_one_square && lambda == minus_one) {
            emit(detail::vertex_set({1, minus_one}), tag + "-com2-zero");
            const Elem order = cubic ? 5 : 3;
            if ((ctx.p() - 1) % order == 0) {
                for (auto& q : detail::reciprocal_root_quads(ctx, order)) emit(std::move(q), tag + "-com4-zero");
            }
        }
        if (minus_one_square && ctx.mul(lambda, lambda) == minus_one) {
            emit(detail::vertex_set({1, minus_one, lambda, ctx.neg(lambda)}), tag + "-com4-zero");
        }
    }

    const auto comps = weak_components(build(spec, ctx));
    for (auto& f : out) {
        f.matches_formula = std::find(comps.begin(), comps.end(), f.vertices) != comps.end();
    }
    return out;
}

struct SmallComponentAudit {
    std::vector<SmallComponentFinding> predicted;
    std::vector<SmallComponentFinding> observed;  // weak components of 2..6 vertices
    bool exact = false;                           // predictions and observed sizes 2..4 coincide
};

/// Bidirectional comparison of predicted and observed small components. Observed
/// 5- and 6-vertex components are reported with formula_id "empirical".
inline SmallComponentAudit audit_small_components(const PolySpec& spec, const FieldCtx& ctx) {
    SmallComponentAudit audit;
    audit.predicted = predict_small_components(spec, ctx);
    const auto comps = weak_components(build(spec, ctx));
    bool exact = std::all_of(audit.predicted.begin(), audit.predicted.end(),
                             [](const SmallComponentFinding& f) { return f.matches_formula; });
    for (const auto& c : comps) {
        if (c.size() < 2 || c.size() > 6 || c.size() == ctx.p()) continue;
        auto it = std::find_if(audit.predicted.begin(), audit.predicted.end(),
                               [&](const SmallComponentFinding& f) { return f.vertices == c; });
        std::string id = it != audit.predicted.end() ? it->formula_id : "empirical";
        if (it == audit.predicted.end() && c.size() <= 4) exact = false;
        audit.observed.push_back({c.size(), c, it != audit.predicted.end(), std::move(id)});
    }
    audit.exact = exact;
    return audit;
}

// ---------------------------------------------------------------------------
// Zero in-degree lower bounds.

struct BoundCheck {
    std::size_t count = 0;
    long long bound = 0;
    bool applicable = false;
    bool pass = true;
    std::string formula_id;
};

/// Reduces a monic quadratic to X^2 + X + a (linear term present) or X^2 + a.
/// Returns the family tag and the normalized constant.
inline std::optional<std::pair<bool, Elem>> normalize_quadratic(const PolySpec& f, const FieldCtx& ctx) {
    if (f.coeffs.size() != 3) return std::nullopt;
    if (f.coeffs[2] != 1) throw Error(Errc::UnsupportedForm, "only monic quadratics are normalized");
    const Elem b = f.coeffs[1];
    if (b == 0) return std::pair{false, f.coeffs[0]};
    const Elem bi = ctx.inv(b);
    return std::pair{true, ctx.mul(ctx.mul(bi, bi), f.coeffs[0])};
}

/// floor((p - 3 sqrt(p)) / 4 - 1), computed exactly.
inline long long quadratic_zero_indegree_bound(Elem p) {
    // largest m with 4(m + 1) <= p - 3 sqrt(p)
    long long m = static_cast<long long>(std::floor((static_cast<double>(p) - 3.0 * std::sqrt(static_cast<double>(p))) / 4.0 - 1.0));
    auto ok = [&](long long k) {
        // 4(k+1) <= p - 3 sqrt(p)  <=>  3 sqrt(p) <= p - 4(k+1)
        long long rhs = static_cast<long long>(p) - 4 * (k + 1);
        return rhs >= 0 && 9 * static_cast<long long>(p) <= rhs * rhs;
    };
    while (!ok(m) && m > -1000) --m;
    while (ok(m + 1)) ++m;
    return m;
}

inline BoundCheck zero_indegree_stats(const EqGraph& g, const FieldCtx& ctx) {
    BoundCheck r;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (g.in_degree(v) == 0) ++r.count;
    }
    const PolySpec& f = g.spec();
    const Elem p = ctx.p();
    if (f.coeffs.size() == 3 && f.coeffs[2] == 1) {
        const auto [shifted, a] = *normalize_quadratic(f, ctx);
        const Elem excluded = shifted ? ctx.inv(ctx.from_int(4)) : 0;
        if (a != excluded) {
            r.applicable = true;
            r.bound = quadratic_zero_indegree_bound(p);
            r.formula_id = shifted ? "quad-indeg1" : "quad-indeg2";
        }
    } else if (auto form = binomial_form(f); form && form->first == Family::Cubic && (p - 1) % 3 == 0) {
        const Elem a = form->second;
        const long long n = ctx.is_cube(ctx.neg(a)) ? (static_cast<long long>(p) - 1) / 3
                                                     : (static_cast<long long>(p) - 7) / 3;
        r.applicable = true;
        r.bound = std::max<long long>(n, 1);
        r.formula_id = "cubic-indeg";
    }
    r.pass = !r.applicable || static_cast<long long>(r.count) >= r.bound;
    return r;
}

// ---------------------------------------------------------------------------
// Non-Hamiltonicity of the component containing 0.

struct NonHamiltonianCheck {
    VertexSet component;
    /// in-degree(0) = 0, or two predecessors of 0 both have 0 as their only successor
    bool degree_obstruction = false;
    /// result of exhaustive enumeration when the component is within the cap
    std::optional<bool> enumeration_nonhamiltonian;

    bool nonhamiltonian() const noexcept {
        return degree_obstruction && enumeration_nonhamiltonian.value_or(true);
    }
};

inline NonHamiltonianCheck component_of_zero_nonhamiltonian(const EqGraph& g, const FieldCtx& ctx,
                                                            std::size_t component_cap = 100) {
    const PolySpec& f = g.spec();
    bool applies = false;
    if (f.coeffs.size() == 3 && f.coeffs[2] == 1) {
        const auto [shifted, a] = *normalize_quadratic(f, ctx);
        applies = a != (shifted ? ctx.inv(ctx.from_int(4)) : 0);
    } else if (auto form = binomial_form(f); form && form->first == Family::Cubic) {
        applies = (ctx.p() - 1) % 3 == 0 && form->second != 0;
    }
    if (!applies) {
        throw Error(Errc::PreconditionNotMet,
                    "requires X^2 + X + a (a != 1/4), X^2 + a (a != 0) or X^3 + a (a != 0, 3 | p - 1)");
    }

    NonHamiltonianCheck r;
    for (auto& c : weak_components(g)) {
        if (c.front() == 0) {
            r.component = std::move(c);
            break;
        }
    }
    std::size_t sinks = 0;
    for (Vertex u : g.predecessors(0)) {
        if (u != 0 && g.out_degree(u) == 1) ++sinks;
    }
    r.degree_obstruction = g.in_degree(0) == 0 || sinks >= 2;
    if (r.component.size() <= component_cap) {
        r.enumeration_nonhamiltonian = enumerate(g, r.component, {std::nullopt, component_cap, false}).total == 0;
    }
    return r;
}

}  // namespace eqgraph
