#pragma once

// Exhaustive empirical checks of the structural statements about G(lambda, f),
// each identified by a short label. Used by `eqgraph verify` and the acceptance suite.

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <type_traits>
#include <vector>

#include "eqgraph/field.hpp"
#include "eqgraph/graph.hpp"
#include "eqgraph/hamilton.hpp"
#include "eqgraph/structure.hpp"
#include "eqgraph/survey.hpp"

namespace eqgraph::verify {

struct SuiteResult {
    SuiteResult(std::string l, Elem max) : label(std::move(l)), p_max(max) {}

    std::string label;
    Elem p_max = 0;
    std::uint64_t cases = 0;
    std::uint64_t failures = 0;
    std::string first_failure;

    bool pass() const noexcept { return failures == 0 && cases > 0; }

    void check(bool ok, const std::string& what) {
        check(ok, [&] { return what; });
    }

    /// Variant for hot loops: the description is only built on failure.
    template <class Describe>
        requires std::is_invocable_r_v<std::string, Describe>
    void check(bool ok, Describe&& describe) {
        ++cases;
        if (!ok) {
            if (failures == 0) first_failure = describe();
            ++failures;
        }
    }
};

inline std::vector<Elem> odd_primes_up_to(Elem p_max, Elem from = 3) {
    std::vector<Elem> out;
    for (Elem p = std::max<Elem>(from, 3); p <= p_max; ++p) {
        if (is_prime(p)) out.push_back(p);
    }
    return out;
}

inline std::vector<Elem> non_squares(const FieldCtx& ctx) {
    std::vector<Elem> out;
    for (Elem l = 1; l < ctx.p(); ++l) {
        if (ctx.chi(l) == -1) out.push_back(l);
    }
    return out;
}

inline std::string tag(Elem p, Elem lambda, const PolySpec& f) {
    return "p=" + std::to_string(p) + " lambda=" + std::to_string(lambda) + " f=" + format_poly(f);
}

/// Calls fn(ctx, spec) for X + a and, when 3 does not divide p - 1, X^3 + a, over all
/// non-square lambda and all a (a = 0 included unless `nonzero_a`).
inline void for_each_permutation_graph(Elem p_max, bool nonzero_a,
                                       const std::function<void(const FieldCtx&, const PolySpec&)>& fn,
                                       Elem p_min = 3) {
    for (Elem p : odd_primes_up_to(p_max, p_min)) {
        const FieldCtx ctx = make_ctx(p, true);
        for (Elem lambda : non_squares(ctx)) {
            for (Elem a = nonzero_a ? 1 : 0; a < p; ++a) {
                fn(ctx, PolySpec::linear(ctx, a, lambda));
                if ((p - 1) % 3 != 0) fn(ctx, PolySpec::cubic(ctx, a, lambda));
            }
        }
    }
}

inline SuiteResult perm_inout(Elem p_max) {
    SuiteResult r{"perm-inout", p_max};
    for_each_permutation_graph(p_max, false, [&](const FieldCtx& ctx, const PolySpec& f) {
        const EqGraph g = build(f, ctx);
        const auto d = degree_profile(g);
        bool ok = d.permutation_profile;
        const Elem f0 = eval_poly(f, 0);
        if (f0 == 0) {
            ok = ok && d.in[0] == 1 && d.out[0] == 1;
        } else {
            const Elem root = is_permutation(f, ctx).inverse.at(0);
            ok = ok && d.in[0] == 1 && d.out[0] == 2 && d.in[root] == 2 && d.out[root] == 1;
        }
        ok = ok && d.edge_count == 2 * ctx.p() - 1;
        r.check(ok, tag(ctx.p(), f.lambda, f));
    });
    return r;
}

inline SuiteResult perm_conn(Elem p_max) {
    SuiteResult r{"perm-conn", p_max};
    for_each_permutation_graph(p_max, false, [&](const FieldCtx& ctx, const PolySpec& f) {
        const EqGraph g = build(f, ctx);
        r.check(weak_components(g) == strong_components(g), tag(ctx.p(), f.lambda, f));
    });
    return r;
}

inline SuiteResult perm_bi(Elem p_max) {
    SuiteResult r{"perm-bi", p_max};
    for_each_permutation_graph(p_max, false, [&](const FieldCtx& ctx, const PolySpec& f) {
        r.check(!is_bipartite(build(f, ctx)), tag(ctx.p(), f.lambda, f));
    });
    return r;
}

inline SuiteResult perm_ha(Elem p_max) {
    SuiteResult r{"perm-ha", p_max};
    for_each_permutation_graph(p_max, false, [&](const FieldCtx& ctx, const PolySpec& f) {
        const EqGraph g = build(f, ctx);
        for (const auto& comp : weak_components(g)) {
            r.check(enumerate(g, comp).total >= 1, tag(ctx.p(), f.lambda, f) + " component@" + std::to_string(comp[0]));
        }
    });
    return r;
}

inline SuiteResult perm_balance(Elem p_max) {
    SuiteResult r{"perm-balance", p_max};
    for_each_permutation_graph(p_max, false, [&](const FieldCtx& ctx, const PolySpec& f) {
        const EqGraph g = build(f, ctx);
        for (const auto& comp : weak_components(g)) {
            const auto rep = enumerate(g, comp);
            r.check(rep.balance_checked && rep.balance_ok && rep.total >= 1, tag(ctx.p(), f.lambda, f));
        }
    });
    return r;
}

/// No Type-1 Hamiltonian cycle in connected G(lambda, X + a) (linear) or
/// G(lambda, X^3 + a) (cubic, 3 not dividing p - 1) for 17 < p.
inline SuiteResult no_type1(Elem p_max, Family family) {
    SuiteResult r{family == Family::Cubic ? "cubic-ht1" : "linear-ht1", p_max};
    for (Elem p : odd_primes_up_to(p_max, 18)) {
        if (family == Family::Cubic && (p - 1) % 3 == 0) continue;
        const FieldCtx ctx = make_ctx(p, true);
        for (Elem lambda : non_squares(ctx)) {
            for (Elem a = 0; a < p; ++a) {
                const PolySpec f = family_poly(ctx, family, a, lambda);
                const EqGraph g = build(f, ctx);
                auto comps = weak_components(g);
                if (comps.size() != 1) continue;
                r.check(enumerate(g, comps[0], {1, 100, false}).total == 0, tag(p, lambda, f));
            }
        }
    }
    return r;
}

/// Type-1 paths in G(lambda, X + a), a != 0, have at most floor(3p/4 + 17/4) vertices;
/// G(2, X) over F_19 reaches 18.
inline SuiteResult linear_p(Elem p_max) {
    SuiteResult r{"linear-p", p_max};
    for (Elem p : odd_primes_up_to(p_max)) {
        const FieldCtx ctx = make_ctx(p);
        const std::size_t bound = (3 * p + 17) / 4;
        for (Elem lambda : non_squares(ctx)) {
            for (Elem a = 1; a < p; ++a) {
                const PolySpec f = PolySpec::linear(ctx, a, lambda);
                r.check(longest_type1_path(build(f, ctx), std::max<std::size_t>(p, 101)) <= bound, tag(p, lambda, f));
            }
        }
    }
    if (p_max >= 19) {
        const FieldCtx ctx = make_ctx(19);
        r.check(longest_type1_path(build(PolySpec::linear(ctx, 0, 2), ctx)) == 18, "G(2,X) over F_19 has 18");
    }
    return r;
}

/// |S_lambda| formula against the direct count and against loops of built graphs.
inline SuiteResult s_lambda(Elem p_max) {
    SuiteResult r{"s-lambda", p_max};
    for (Elem p : odd_primes_up_to(p_max)) {
        const FieldCtx ctx = make_ctx(p);
        for (Elem lambda : non_squares(ctx)) {
            const auto s = s_lambda_size(ctx, lambda);
            long long with_loop = 0;
            bool criterion_ok = true;
            for (Elem a = 0; a < p; ++a) {
                const bool has = !fixed_vertices(build(PolySpec::linear(ctx, a, lambda), ctx)).empty();
                with_loop += has ? 1 : 0;
                criterion_ok = criterion_ok && has == linear_has_fixed_vertex(ctx, lambda, a);
            }
            const long long special = ctx.is_square(ctx.neg(1)) ? (3 * static_cast<long long>(p) + 1) / 4 : -1;
            const bool special_ok = special < 0 || s.formula == special;
            r.check(s.agree() && with_loop == s.formula && criterion_ok && special_ok,
                    "p=" + std::to_string(p) + " lambda=" + std::to_string(lambda));
        }
    }
    return r;
}

/// Sum of chi(a x^2 + b x + c) = -chi(a) for all non-degenerate (a, b, c).
inline SuiteResult weil_quadratic(Elem p_max) {
    SuiteResult r{"weil-quadratic", p_max};
    for (Elem p : odd_primes_up_to(p_max)) {
        const FieldCtx ctx = make_ctx(p);
        const Elem four = ctx.from_int(4);
        std::vector<std::int8_t> chi(p);
        for (Elem v = 0; v < p; ++v) chi[v] = static_cast<std::int8_t>(ctx.chi(v));
        for (Elem a = 1; a < p; ++a) {
            for (Elem b = 0; b < p; ++b) {
                for (Elem c = 0; c < p; ++c) {
                    if (ctx.sub(ctx.mul(b, b), ctx.mul(four, ctx.mul(a, c))) == 0) continue;
                    // v(x + 1) = v(x) + step(x), step(x + 1) = step(x) + 2a
                    long long s = 0;
                    Elem v = c, step = ctx.add(a, b);
                    const Elem two_a = ctx.add(a, a);
                    for (Elem x = 0; x < p; ++x) {
                        s += chi[v];
                        v = ctx.add(v, step);
                        step = ctx.add(step, two_a);
                    }
                    r.check(s == -chi[a], [&] {
                        return "p=" + std::to_string(p) + " (" + std::to_string(a) + "," + std::to_string(b) + "," +
                               std::to_string(c) + ")";
                    });
                }
            }
        }
    }
    return r;
}

namespace detail {

using Poly = std::vector<Elem>;  // ascending, no trailing zeros; empty = 0

inline void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline Poly poly_mod(Poly a, const Poly& b, const FieldCtx& ctx) {
    const Elem inv_lead = ctx.inv(b.back());
    while (a.size() >= b.size()) {
        const Elem factor = ctx.mul(a.back(), inv_lead);
        const std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = ctx.sub(a[shift + i], ctx.mul(factor, b[i]));
        trim(a);
    }
    return a;
}

inline Poly poly_gcd(Poly a, Poly b, const FieldCtx& ctx) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, ctx);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace detail

/// |sum chi(f(x))| <= (d - 1) sqrt(p) for every f of degree 1..4 that is not a
/// constant times a square, d = number of distinct roots = deg f - deg gcd(f, f').
/// Scaling f by c multiplies the sum by chi(c), so monic f cover every case.
/// Runs for 5 <= p, where the derivative detects repeated roots of degree <= 4.
inline SuiteResult weil_bound(Elem p_max) {
    SuiteResult r{"weil-bound", p_max};
    for (Elem p : odd_primes_up_to(p_max, 5)) {
        const FieldCtx ctx = make_ctx(p);
        std::vector<std::int8_t> chi(p);
        for (Elem v = 0; v < p; ++v) chi[v] = static_cast<std::int8_t>(ctx.chi(v));
        // monic squares of degree 2 and 4, keyed by coefficient vector
        std::set<detail::Poly> squares;
        for (Elem g0 = 0; g0 < p; ++g0) {
            squares.insert({ctx.mul(g0, g0), ctx.add(g0, g0), 1});
            for (Elem g1 = 0; g1 < p; ++g1) {
                // (X^2 + g1 X + g0)^2
                squares.insert({ctx.mul(g0, g0), ctx.mul(2 % p, ctx.mul(g0, g1)), ctx.add(ctx.mul(g1, g1), ctx.add(g0, g0)),
                                ctx.add(g1, g1), 1});
            }
        }
        const double root_p = std::sqrt(static_cast<double>(p));
        for (std::size_t deg = 1; deg <= 4; ++deg) {
            detail::Poly f(deg + 1, 0);
            f[deg] = 1;
            std::uint64_t combos = 1;
            for (std::size_t i = 0; i < deg; ++i) combos *= p;
            for (std::uint64_t idx = 0; idx < combos; ++idx) {
                std::uint64_t t = idx;
                for (std::size_t i = 0; i < deg; ++i) {
                    f[i] = t % p;
                    t /= p;
                }
                if (squares.count(f)) continue;
                detail::Poly df(deg, 0);
                for (std::size_t i = 1; i <= deg; ++i) df[i - 1] = ctx.mul(ctx.from_int(static_cast<long long>(i)), f[i]);
                const std::size_t distinct = deg - (detail::poly_gcd(f, df, ctx).size() - 1);
                long long s = 0;
                for (Elem x = 0; x < p; ++x) {
                    Elem v = 0;
                    for (std::size_t i = deg + 1; i-- > 0;) v = (v * x + f[i]) % p;
                    s += chi[v];
                }
                const double bound = static_cast<double>(distinct - 1) * root_p;
                r.check(static_cast<double>(std::llabs(s)) <= bound + 1e-9, [&] {
                    return "p=" + std::to_string(p) + " deg=" + std::to_string(deg) + " sum=" + std::to_string(s);
                });
            }
        }
    }
    return r;
}

/// |V((X^2 - a)^2)| <= 3p/8 + 9/8 for a != 0.
inline SuiteResult value_set_bound(Elem p_max) {
    SuiteResult r{"value-set-bound", p_max};
    for (Elem p : odd_primes_up_to(p_max)) {
        const FieldCtx ctx = make_ctx(p);
        for (Elem a = 1; a < p; ++a) {
            const Elem a2 = ctx.mul(a, a);
            // (X^2 - a)^2 = X^4 - 2a X^2 + a^2
            const PolySpec h = PolySpec::make(ctx, {a2, 0, ctx.neg(ctx.add(a, a)), 0, 1}, 0);
            r.check(8 * value_set(h, ctx).size() <= 3 * p + 9, "p=" + std::to_string(p) + " a=" + std::to_string(a));
        }
    }
    return r;
}

inline SuiteResult small_components(Elem p_max, Family family) {
    SuiteResult r{family == Family::Cubic ? "cubic-com" : "linear-com", p_max};
    for (Elem p : odd_primes_up_to(p_max, 5)) {
        if (family == Family::Cubic && (p - 1) % 3 == 0) continue;
        const FieldCtx ctx = make_ctx(p, true);
        for (Elem lambda : non_squares(ctx)) {
            for (Elem a = 0; a < p; ++a) {
                const PolySpec f = family_poly(ctx, family, a, lambda);
                const auto audit = audit_small_components(f, ctx);
                bool no_four = true;
                if (a != 0) {
                    for (const auto& c : weak_components(build(f, ctx))) no_four = no_four && c.size() != 4;
                }
                r.check(audit.exact && no_four, tag(p, lambda, f));
            }
        }
    }
    return r;
}

inline SuiteResult isomorphisms(Elem p_max) {
    SuiteResult r{"iso", p_max};
    for (Elem p : odd_primes_up_to(p_max)) {
        const FieldCtx ctx = make_ctx(p);
        for (Elem lambda : non_squares(ctx)) {
            // graphs with this lambda that several witnesses map onto
            std::map<std::vector<Elem>, EqGraph> cache;
            auto cached = [&](const PolySpec& f) -> const EqGraph& {
                auto it = cache.find(f.coeffs);
                if (it == cache.end()) it = cache.emplace(f.coeffs, build(f, ctx)).first;
                return it->second;
            };
            auto check = [&](const IsomorphismWitness& w, bool cache_source, bool cache_target, Elem a, Elem b) {
                std::optional<EqGraph> src, dst;
                if (!cache_source) src.emplace(build(w.source, ctx));
                if (!cache_target) dst.emplace(build(w.target, ctx));
                const bool ok = scales_onto(src ? *src : cached(w.source), dst ? *dst : cached(w.target),
                                            w.multiplier, ctx);
                r.check(ok, [&] {
                    return w.formula_id + " p=" + std::to_string(p) + " lambda=" + std::to_string(lambda) +
                           " a=" + std::to_string(a) + " b=" + std::to_string(b);
                });
            };
            for (Elem a = 0; a < p; ++a) {
                check(iso::linear_twist(ctx, lambda, a), true, false, a, 0);
                for (Elem b = 0; b < p; ++b) {
                    check(iso::cubic_twist(ctx, lambda, a, b), false, false, a, b);
                    if (a == 0) continue;
                    check(iso::linear_scale(ctx, lambda, a, b), false, true, a, b);
                    check(iso::quadratic_scale(ctx, lambda, a, b), false, true, a, b);
                    if (b != 0 && ctx.is_square(ctx.div(b, a))) {
                        check(iso::quadratic_square_ratio(ctx, lambda, a, b), true, true, a, b);
                    }
                }
            }
        }
    }
    return r;
}

inline SuiteResult zero_indegree(Elem p_max, bool cubic) {
    SuiteResult r{cubic ? "cubic-indeg" : "quad-indeg", p_max};
    for (Elem p : odd_primes_up_to(p_max)) {
        if (cubic && (p - 1) % 3 != 0) continue;
        const FieldCtx ctx = make_ctx(p, true);
        for (Elem lambda : non_squares(ctx)) {
            for (Elem a = 0; a < p; ++a) {
                std::vector<PolySpec> polys;
                if (cubic) {
                    polys.push_back(PolySpec::cubic(ctx, a, lambda));
                } else {
                    polys.push_back(PolySpec::quadratic_shifted(ctx, a, lambda));
                    polys.push_back(PolySpec::quadratic(ctx, a, lambda));
                }
                for (const auto& f : polys) {
                    const auto b = zero_indegree_stats(build(f, ctx), ctx);
                    if (b.applicable) r.check(b.pass, tag(p, lambda, f));
                }
            }
        }
    }
    return r;
}

inline SuiteResult zero_component_nonhamiltonian(Elem p_max, bool cubic) {
    SuiteResult r{cubic ? "cubic-h" : "quad-h", p_max};
    for (Elem p : odd_primes_up_to(p_max)) {
        if (cubic && (p - 1) % 3 != 0) continue;
        const FieldCtx ctx = make_ctx(p, true);
        const Elem quarter = ctx.inv(ctx.from_int(4));
        for (Elem lambda : non_squares(ctx)) {
            for (Elem a = 1; a < p; ++a) {
                std::vector<PolySpec> polys;
                if (cubic) {
                    polys.push_back(PolySpec::cubic(ctx, a, lambda));
                } else {
                    polys.push_back(PolySpec::quadratic(ctx, a, lambda));
                    if (a != quarter) polys.push_back(PolySpec::quadratic_shifted(ctx, a, lambda));
                }
                for (const auto& f : polys) {
                    const auto c = component_of_zero_nonhamiltonian(build(f, ctx), ctx);
                    r.check(c.degree_obstruction && c.enumeration_nonhamiltonian.value_or(false), tag(p, lambda, f));
                }
            }
        }
    }
    return r;
}

inline const std::vector<std::string>& suite_labels() {
    static const std::vector<std::string> labels = {
        "perm-inout", "perm-conn",  "perm-bi",        "perm-ha",         "perm-balance", "linear-ht1",
        "cubic-ht1",  "linear-p",   "s-lambda",       "weil-quadratic",  "weil-bound",   "value-set-bound",
        "linear-com", "cubic-com",  "iso",            "quad-indeg",      "cubic-indeg",  "quad-h",
        "cubic-h"};
    return labels;
}

inline SuiteResult run_suite(const std::string& label, Elem p_max) {
    if (label == "perm-inout") return perm_inout(p_max);
    if (label == "perm-conn") return perm_conn(p_max);
    if (label == "perm-bi") return perm_bi(p_max);
    if (label == "perm-ha") return perm_ha(p_max);
    if (label == "perm-balance") return perm_balance(p_max);
    if (label == "linear-ht1") return no_type1(p_max, Family::Linear);
    if (label == "cubic-ht1") return no_type1(p_max, Family::Cubic);
    if (label == "linear-p") return linear_p(p_max);
    if (label == "s-lambda") return s_lambda(p_max);
    if (label == "weil-quadratic") return weil_quadratic(p_max);
    if (label == "weil-bound") return weil_bound(p_max);
    if (label == "value-set-bound") return value_set_bound(p_max);
    if (label == "linear-com") return small_components(p_max, Family::Linear);
    if (label == "cubic-com") return small_components(p_max, Family::Cubic);
    if (label == "iso") return isomorphisms(p_max);
    if (label == "quad-indeg") return zero_indegree(p_max, false);
    if (label == "cubic-indeg") return zero_indegree(p_max, true);
    if (label == "quad-h") return zero_component_nonhamiltonian(p_max, false);
    if (label == "cubic-h") return zero_component_nonhamiltonian(p_max, true);
    throw Error(Errc::InvalidArgument, "unknown proposition label '" + label + "'");
}

}  // namespace eqgraph::verify
