#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "eqgraph/structure.hpp"

using namespace eqgraph;

namespace {

std::vector<Elem> non_squares(const FieldCtx& ctx) {
    std::vector<Elem> out;
    for (Elem l = 1; l < ctx.p(); ++l) {
        if (ctx.chi(l) == -1) out.push_back(l);
    }
    return out;
}

Errc code_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return Errc::Io;
}

bool has_finding(const std::vector<SmallComponentFinding>& fs, const VertexSet& vs, const std::string& id) {
    return std::any_of(fs.begin(), fs.end(), [&](const SmallComponentFinding& f) {
        return f.vertices == vs && f.formula_id == id && f.matches_formula;
    });
}

}  // namespace

TEST(Isomorphism, Examples) {
    const auto ctx = make_ctx(7);
    // 2X + 1 -> X + 2^-2 = X + 2, psi(x) = 4x
    const auto w1 = iso::linear_scale(ctx, 3, 2, 1);
    EXPECT_EQ(w1.multiplier, 4U);
    EXPECT_EQ(w1.target.coeffs, (std::vector<Elem>{2, 1}));
    EXPECT_TRUE(verify_isomorphism(w1, ctx));
    const auto w2 = iso::linear_twist(ctx, 3, 2);
    EXPECT_EQ(w2.multiplier, 3U);
    EXPECT_EQ(w2.target.lambda, 5U);
    EXPECT_EQ(w2.target.coeffs, (std::vector<Elem>{6, 1}));
    EXPECT_TRUE(verify_isomorphism(w2, ctx));
    const auto f = PolySpec::linear(ctx, 1, 3);
    EXPECT_TRUE(verify_isomorphism({IsoKind::Scale, 1, f, f, "identity"}, ctx));
}

TEST(Isomorphism, WrongWitnessRejected) {
    const auto ctx = make_ctx(7);
    const auto f = PolySpec::linear(ctx, 1, 3);
    const auto g = PolySpec::linear(ctx, 2, 3);
    EXPECT_FALSE(verify_isomorphism({IsoKind::Scale, 1, f, g, "bogus"}, ctx));
    auto w = iso::linear_twist(ctx, 3, 2);
    w.multiplier = 2;
    EXPECT_FALSE(verify_isomorphism(w, ctx));
    w.multiplier = 0;
    EXPECT_EQ(code_of([&] { verify_isomorphism(w, ctx); }), Errc::InvalidArgument);
}

TEST(Isomorphism, AllFamiliesUpToThirteen) {
    for (Elem p : {3, 5, 7, 11, 13}) {
        const auto ctx = make_ctx(p);
        for (Elem lambda : non_squares(ctx)) {
            for (Elem a = 0; a < p; ++a) {
                ASSERT_TRUE(verify_isomorphism(iso::linear_twist(ctx, lambda, a), ctx));
                for (Elem b = 0; b < p; ++b) {
                    ASSERT_TRUE(verify_isomorphism(iso::cubic_twist(ctx, lambda, a, b), ctx));
                    if (a == 0) continue;
                    ASSERT_TRUE(verify_isomorphism(iso::linear_scale(ctx, lambda, a, b), ctx));
                    ASSERT_TRUE(verify_isomorphism(iso::quadratic_scale(ctx, lambda, a, b), ctx));
                    if (b != 0 && ctx.is_square(ctx.div(b, a))) {
                        ASSERT_TRUE(verify_isomorphism(iso::quadratic_square_ratio(ctx, lambda, a, b), ctx));
                    }
                }
            }
        }
    }
    const auto ctx = make_ctx(7);
    EXPECT_EQ(code_of([&] { iso::quadratic_square_ratio(ctx, 3, 1, 3); }), Errc::PreconditionNotMet);
}

TEST(FixedVertices, Examples) {
    const auto ctx = make_ctx(7);
    EXPECT_TRUE(fixed_vertices(build(PolySpec::linear(ctx, 1, 3), ctx)).empty());
    EXPECT_FALSE(linear_has_fixed_vertex(ctx, 3, 1));
    for (Elem p : {5, 7, 11, 13}) {
        const auto c = make_ctx(p);
        for (Elem lambda : non_squares(c)) {
            const auto fixed = fixed_vertices(build(PolySpec::linear(c, 0, lambda), c));
            EXPECT_TRUE(std::binary_search(fixed.begin(), fixed.end(), 1U));
        }
    }
}

TEST(FixedVertices, DefinitionAndCriterion) {
    for (Elem p : {5, 7, 11, 13, 17, 19, 23}) {
        const auto ctx = make_ctx(p);
        for (Elem lambda : non_squares(ctx)) {
            for (Elem a = 0; a < p; ++a) {
                const auto fixed = fixed_vertices(build(PolySpec::linear(ctx, a, lambda), ctx));
                VertexSet direct;
                for (Elem x = 0; x < p; ++x) {
                    const Elem fx = (x + a) % p;
                    if (x * x % p == fx || lambda * x % p * x % p == fx) direct.push_back(static_cast<Vertex>(x));
                }
                ASSERT_EQ(fixed, direct);
                EXPECT_EQ(!fixed.empty(), linear_has_fixed_vertex(ctx, lambda, a));
            }
        }
    }
}

TEST(SLambda, Examples) {
    const auto c7 = make_ctx(7);
    const auto s = s_lambda_size(c7, 3);
    EXPECT_EQ(s.formula, 6);
    EXPECT_EQ(s.brute_force, 6);
    const auto c13 = make_ctx(13);
    for (Elem lambda : non_squares(c13)) {
        const auto r = s_lambda_size(c13, lambda);
        EXPECT_EQ(r.formula, 10);
        EXPECT_TRUE(r.agree());
    }
    EXPECT_EQ(code_of([&] { s_lambda_size(c7, 2); }), Errc::LambdaIsSquare);
}

TEST(SLambda, CountsGraphsWithLoops) {
    for (Elem p : {5, 7, 11, 13, 17, 19, 23, 29, 31}) {
        const auto ctx = make_ctx(p);
        for (Elem lambda : non_squares(ctx)) {
            long long count = 0;
            for (Elem a = 0; a < p; ++a) count += !fixed_vertices(build(PolySpec::linear(ctx, a, lambda), ctx)).empty();
            const auto s = s_lambda_size(ctx, lambda);
            EXPECT_EQ(count, s.brute_force);
            EXPECT_EQ(count, s.formula);
            // the two special values
            if (p % 4 == 3) { EXPECT_TRUE(4 * count == 3 * static_cast<long long>(p) - 1 || 4 * count == 3 * static_cast<long long>(p) + 3); }
        }
    }
}

TEST(SmallComponents, LinearExamples) {
    const auto ctx = make_ctx(7);
    const auto fs = predict_small_components(PolySpec::linear(ctx, 2, 3), ctx);
    EXPECT_TRUE(has_finding(fs, {1, 6}, "linear-com2"));
    // lambda = 2 non-square for p = 3, 5 mod 8
    for (Elem p : {5, 11, 13, 19, 29, 37}) {
        const auto c = make_ctx(p);
        ASSERT_EQ(c.chi(2), -1);
        const auto f3 = predict_small_components(PolySpec::linear(c, 1, 2), c);
        EXPECT_TRUE(has_finding(f3, {0, 1, static_cast<Vertex>(p - 1)}, "linear-com3")) << p;
    }
}

TEST(SmallComponents, CubicExamples) {
    for (Elem p : {11, 17, 23, 29, 41, 47}) {
        const auto ctx = make_ctx(p, true);
        for (Elem lambda : non_squares(ctx)) {
            if (lambda == p - 1) continue;
            const Elem lm1 = ctx.sub(lambda, 1);
            const Elem a = ctx.div(ctx.mul(ctx.add(lambda, 1), ctx.mul(lm1, lm1)), 8 % p);
            if (a == 0) continue;
            const Elem x = ctx.div(ctx.neg(lm1), 2);
            const auto fs = predict_small_components(PolySpec::cubic(ctx, a, lambda), ctx);
            EXPECT_TRUE(has_finding(fs, VertexSet{std::min<Vertex>(x, p - x), std::max<Vertex>(x, p - x)}, "cubic-com2"))
                << p << " " << lambda;
        }
    }
}

TEST(SmallComponents, BidirectionalAuditUpToFortyOne) {
    for (Elem p = 5; p <= 41; ++p) {
        if (!is_prime(p)) continue;
        const auto ctx = make_ctx(p, true);
        for (Elem lambda : non_squares(ctx)) {
            for (Elem a = 0; a < p; ++a) {
                std::vector<PolySpec> polys{PolySpec::linear(ctx, a, lambda)};
                if ((p - 1) % 3 != 0) polys.push_back(PolySpec::cubic(ctx, a, lambda));
                for (const auto& f : polys) {
                    const auto audit = audit_small_components(f, ctx);
                    ASSERT_TRUE(audit.exact) << p << " " << lambda << " " << format_poly(f);
                    // independent direction: every 2-4 vertex component is predicted
                    for (const auto& c : weak_components(build(f, ctx))) {
                        if (c.size() < 2 || c.size() > 4) continue;
                        EXPECT_TRUE(std::any_of(audit.predicted.begin(), audit.predicted.end(),
                                                [&](const SmallComponentFinding& s) { return s.vertices == c; }));
                        if (a != 0) { EXPECT_NE(c.size(), 4U); }
                    }
                }
            }
        }
    }
}

TEST(SmallComponents, CubicFourVertexCaseAtZero) {
    for (Elem p = 5; p <= 31; ++p) {
        if (!is_prime(p) || (p - 1) % 3 == 0) continue;
        const auto ctx = make_ctx(p, true);
        for (Elem lambda : non_squares(ctx)) {
            const auto fs = predict_small_components(PolySpec::cubic(ctx, 0, lambda), ctx);
            const bool four = std::any_of(fs.begin(), fs.end(), [](const SmallComponentFinding& f) {
                return f.formula_id == "cubic-com4-zero" && f.size == 4 && f.matches_formula;
            });
            const bool twist = lambda == p - 1 && (p - 1) % 5 == 0 && ctx.chi(p - 1) == -1;
            const bool order_four = ctx.mul(lambda, lambda) == p - 1;
            const bool expected = twist || order_four;
            EXPECT_EQ(four, expected) << p << " " << lambda;
        }
    }
}

TEST(SmallComponents, FiveAndSixVertexComponentsAreEmpirical) {
    const auto c17 = make_ctx(17);
    const auto audit = audit_small_components(PolySpec::linear(c17, 8, 5), c17);
    EXPECT_TRUE(std::any_of(audit.observed.begin(), audit.observed.end(), [](const SmallComponentFinding& f) {
        return f.size == 6 && f.formula_id == "empirical" && f.vertices == VertexSet{1, 3, 7, 10, 14, 16};
    }));
}

TEST(SmallComponents, Errors) {
    const auto c7 = make_ctx(7, true);
    EXPECT_EQ(code_of([&] { predict_small_components(PolySpec::quadratic(c7, 1, 3), c7); }), Errc::UnsupportedForm);
    EXPECT_EQ(code_of([&] { predict_small_components(PolySpec::cubic(c7, 1, 3), c7); }), Errc::PreconditionNotMet);
}

TEST(ZeroInDegree, QuadraticBoundValue) {
    for (Elem p = 3; p < 2000; ++p) {
        if (!is_prime(p)) continue;
        const long double exact = (static_cast<long double>(p) - 3.0L * std::sqrt(static_cast<long double>(p))) / 4.0L - 1.0L;
        EXPECT_EQ(quadratic_zero_indegree_bound(p), static_cast<long long>(std::floor(exact))) << p;
    }
    EXPECT_EQ(quadratic_zero_indegree_bound(23), 1);
}

TEST(ZeroInDegree, Examples) {
    const auto c23 = make_ctx(23);
    for (Elem lambda : non_squares(c23)) {
        for (Elem a = 1; a < 23; ++a) {
            const auto b = zero_indegree_stats(build(PolySpec::quadratic(c23, a, lambda), c23), c23);
            EXPECT_TRUE(b.applicable);
            EXPECT_EQ(b.bound, 1);
            EXPECT_TRUE(b.pass);
            EXPECT_EQ(b.formula_id, "quad-indeg2");
        }
    }
    const auto c7 = make_ctx(7, true);
    for (Elem a = 0; a < 7; ++a) {
        const auto b = zero_indegree_stats(build(PolySpec::cubic(c7, a, 3), c7), c7);
        EXPECT_TRUE(b.applicable);
        EXPECT_GE(b.count, 1U);
        EXPECT_TRUE(b.pass);
    }
    const auto c13 = make_ctx(13, true);
    for (Elem a = 1; a < 13; ++a) {
        if (!c13.is_cube(c13.neg(a))) continue;
        const auto b = zero_indegree_stats(build(PolySpec::cubic(c13, a, 2), c13), c13);
        EXPECT_EQ(b.bound, 4);
        EXPECT_GE(b.count, 4U);
    }
    // linear graphs carry no bound
    const auto lin = zero_indegree_stats(build(PolySpec::linear(c7, 1, 3), c7), c7);
    EXPECT_FALSE(lin.applicable);
    EXPECT_EQ(lin.count, 0U);
}

TEST(ZeroInDegree, CountMatchesDirect) {
    const auto ctx = make_ctx(31);
    for (Elem a = 0; a < 31; ++a) {
        const auto g = build(PolySpec::quadratic_shifted(ctx, a, 3), ctx);
        std::vector<char> hit(31, 0);
        for (Vertex x = 0; x < 31; ++x) {
            for (const Edge& e : g.successors(x)) hit[e.target] = 1;
        }
        EXPECT_EQ(zero_indegree_stats(g, ctx).count, static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 0)));
    }
}

TEST(Normalize, Quadratics) {
    const auto ctx = make_ctx(7);
    const auto n1 = normalize_quadratic(PolySpec::make(ctx, {3, 2, 1}, 3), ctx);
    ASSERT_TRUE(n1);
    EXPECT_TRUE(n1->first);
    EXPECT_EQ(n1->second, ctx.div(3, 4));
    const auto n2 = normalize_quadratic(PolySpec::quadratic(ctx, 5, 3), ctx);
    ASSERT_TRUE(n2);
    EXPECT_FALSE(n2->first);
    EXPECT_EQ(n2->second, 5U);
    EXPECT_FALSE(normalize_quadratic(PolySpec::linear(ctx, 1, 3), ctx));
    EXPECT_EQ(code_of([&] { normalize_quadratic(PolySpec::make(ctx, {1, 1, 2}, 3), ctx); }), Errc::UnsupportedForm);
}

TEST(ZeroComponent, NonHamiltonianExamples) {
    const auto c11 = make_ctx(11);
    const Elem quarter = c11.inv(4);
    for (Elem lambda : non_squares(c11)) {
        for (Elem a = 1; a < 11; ++a) {
            if (a != quarter) {
                const auto r = component_of_zero_nonhamiltonian(build(PolySpec::quadratic_shifted(c11, a, lambda), c11), c11);
                EXPECT_TRUE(r.nonhamiltonian());
                EXPECT_TRUE(r.enumeration_nonhamiltonian.value_or(false));
            }
            const auto q = component_of_zero_nonhamiltonian(build(PolySpec::quadratic(c11, a, lambda), c11), c11);
            EXPECT_TRUE(q.nonhamiltonian());
            EXPECT_TRUE(std::binary_search(q.component.begin(), q.component.end(), 0U));
        }
    }
    const auto c13 = make_ctx(13, true);
    for (Elem lambda : non_squares(c13)) {
        for (Elem a = 1; a < 13; ++a) {
            const auto r = component_of_zero_nonhamiltonian(build(PolySpec::cubic(c13, a, lambda), c13), c13);
            EXPECT_TRUE(r.degree_obstruction);
            EXPECT_TRUE(r.enumeration_nonhamiltonian.value_or(false));
        }
    }
}

TEST(ZeroComponent, Preconditions) {
    const auto c11 = make_ctx(11, true);
    EXPECT_EQ(code_of([&] { component_of_zero_nonhamiltonian(build(PolySpec::quadratic(c11, 0, 2), c11), c11); }),
              Errc::PreconditionNotMet);
    EXPECT_EQ(code_of([&] {
                  component_of_zero_nonhamiltonian(build(PolySpec::quadratic_shifted(c11, c11.inv(4), 2), c11), c11);
              }),
              Errc::PreconditionNotMet);
    EXPECT_EQ(code_of([&] { component_of_zero_nonhamiltonian(build(PolySpec::cubic(c11, 1, 2), c11), c11); }),
              Errc::PreconditionNotMet);
    EXPECT_EQ(code_of([&] { component_of_zero_nonhamiltonian(build(PolySpec::linear(c11, 1, 2), c11), c11); }),
              Errc::PreconditionNotMet);
}

TEST(BinomialForm, Recognition) {
    const auto ctx = make_ctx(7);
    EXPECT_EQ(binomial_form(PolySpec::linear(ctx, 3, 3)), std::make_optional(std::pair{Family::Linear, Elem{3}}));
    EXPECT_EQ(binomial_form(PolySpec::cubic(ctx, 2, 3)), std::make_optional(std::pair{Family::Cubic, Elem{2}}));
    EXPECT_FALSE(binomial_form(PolySpec::quadratic(ctx, 2, 3)));
    EXPECT_FALSE(binomial_form(PolySpec::make(ctx, {1, 2}, 3)));
    EXPECT_FALSE(binomial_form(PolySpec::make(ctx, {1, 1, 0, 1}, 3)));
    EXPECT_EQ(to_string(Family::Cubic), "cubic");
}
