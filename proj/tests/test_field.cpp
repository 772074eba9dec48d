#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <set>

#include "eqgraph/field.hpp"

using namespace eqgraph;

namespace {

bool trial_division(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::set<Elem> squares_by_enumeration(Elem p) {
    std::set<Elem> s;
    for (Elem y = 0; y < p; ++y) s.insert(y * y % p);
    return s;
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

}  // namespace

TEST(Primality, MatchesTrialDivision) {
    for (std::uint64_t n = 0; n < 20000; ++n) ASSERT_EQ(is_prime(n), trial_division(n)) << n;
}

TEST(Primality, LargeKnownValues) {
    EXPECT_TRUE(is_prime(4294967291ULL));
    EXPECT_TRUE(is_prime(18446744073709551557ULL));
    EXPECT_FALSE(is_prime(4294967297ULL));  // 641 * 6700417
    EXPECT_FALSE(is_prime(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST(FieldCtx, RejectsBadModuli) {
    EXPECT_EQ(code_of([] { make_ctx(9); }), Errc::NotPrime);
    EXPECT_EQ(code_of([] { make_ctx(4); }), Errc::NotPrime);
    EXPECT_EQ(code_of([] { make_ctx(1); }), Errc::NotPrime);
    EXPECT_EQ(code_of([] { make_ctx(0); }), Errc::NotPrime);
    EXPECT_EQ(code_of([] { make_ctx(2); }), Errc::EvenModulus);
    EXPECT_EQ(code_of([] { make_ctx(4294967311ULL); }), Errc::ModulusTooLarge);
}

TEST(FieldCtx, SqrtTableKeysForSeven) {
    const auto ctx = make_ctx(7);
    std::set<Elem> keys;
    for (Elem s = 0; s < 7; ++s) {
        if (ctx.sqrt_pair(s)) keys.insert(s);
    }
    EXPECT_EQ(keys, (std::set<Elem>{0, 1, 2, 4}));
    EXPECT_EQ(ctx.square_count(), 4U);
}

TEST(FieldCtx, CharacterTableForThree) {
    const auto ctx = make_ctx(3);
    EXPECT_EQ(ctx.chi(0), 0);
    EXPECT_EQ(ctx.chi(1), 1);
    EXPECT_EQ(ctx.chi(2), -1);
}

TEST(FieldCtx, CharacterExamples) {
    const auto ctx = make_ctx(7);
    EXPECT_EQ(ctx.chi(2), 1);
    EXPECT_EQ(ctx.chi(0), 0);
    EXPECT_EQ(ctx.chi(3), -1);
}

TEST(FieldCtx, CharacterAgreesWithSquaresAndEuler) {
    for (Elem p = 3; p < 400; ++p) {
        if (!trial_division(p)) continue;
        const auto ctx = make_ctx(p);
        const auto sq = squares_by_enumeration(p);
        int plus = 0, minus = 0;
        for (Elem a = 0; a < p; ++a) {
            const int expected = a == 0 ? 0 : (sq.count(a) ? 1 : -1);
            ASSERT_EQ(ctx.chi(a), expected) << p << " " << a;
            // Euler criterion by repeated multiplication
            Elem e = 1;
            for (Elem i = 0; i < (p - 1) / 2; ++i) e = e * a % p;
            const int euler = e == 0 ? 0 : (e == 1 ? 1 : -1);
            ASSERT_EQ(ctx.chi(a), euler);
            plus += expected == 1;
            minus += expected == -1;
        }
        EXPECT_EQ(plus, static_cast<int>((p - 1) / 2));
        EXPECT_EQ(minus, static_cast<int>((p - 1) / 2));
    }
}

TEST(FieldCtx, SqrtPairExamples) {
    const auto ctx = make_ctx(7);
    const auto r = ctx.sqrt_pair(2);
    ASSERT_TRUE(r);
    EXPECT_EQ(r->low, 3U);
    EXPECT_EQ(r->high, 4U);
    EXPECT_EQ(r->size(), 2U);
    const auto z = ctx.sqrt_pair(0);
    ASSERT_TRUE(z);
    EXPECT_TRUE(z->degenerate);
    EXPECT_EQ(z->size(), 1U);
    EXPECT_EQ(z->low, 0U);
    EXPECT_FALSE(ctx.sqrt_pair(5));
}

TEST(FieldCtx, SqrtPairDefinedExactlyOnSquares) {
    for (Elem p : {3, 5, 7, 11, 13, 97, 101, 541}) {
        const auto ctx = make_ctx(p);
        for (Elem s = 0; s < p; ++s) {
            const auto r = ctx.sqrt_pair(s);
            ASSERT_EQ(r.has_value(), ctx.chi(s) >= 0);
            if (!r) continue;
            EXPECT_EQ(r->low * r->low % p, s);
            EXPECT_EQ(r->high * r->high % p, s);
            EXPECT_LE(r->low, r->high);
            if (s != 0) { EXPECT_EQ(r->low + r->high, p); }
        }
    }
}

TEST(FieldCtx, ArithmeticAgainstNaive) {
    const auto ctx = make_ctx(101);
    for (Elem a = 0; a < 101; ++a) {
        for (Elem b = 0; b < 101; ++b) {
            ASSERT_EQ(ctx.add(a, b), (a + b) % 101);
            ASSERT_EQ(ctx.sub(a, b), (a + 101 - b) % 101);
            ASSERT_EQ(ctx.mul(a, b), a * b % 101);
        }
        if (a != 0) { ASSERT_EQ(ctx.mul(a, ctx.inv(a)), 1U); }
        ASSERT_EQ(ctx.add(a, ctx.neg(a)), 0U);
    }
    EXPECT_EQ(ctx.from_int(-1), 100U);
    EXPECT_EQ(ctx.from_int(205), 3U);
    EXPECT_EQ(code_of([&] { ctx.inv(0); }), Errc::InvalidElement);
    EXPECT_EQ(code_of([&] { ctx.check(101); }), Errc::InvalidElement);
}

TEST(FieldCtx, LargeModulusArithmetic) {
    const Elem p = 4294967291ULL;
    EXPECT_EQ(detail::mul_mod(p - 1, p - 1, p), 1U);
    EXPECT_EQ(detail::pow_mod(3, p - 1, p), 1U);
    const Elem big = 18446744073709551557ULL;
    EXPECT_EQ(detail::mul_mod(big - 1, big - 1, big), 1U);
}

TEST(FieldCtx, CubeTable) {
    const auto ctx = make_ctx(13, true);
    ASSERT_TRUE(ctx.has_cubes());
    std::set<Elem> cubes;
    for (Elem x = 0; x < 13; ++x) {
        EXPECT_EQ(ctx.cube(x), x * x * x % 13);
        cubes.insert(x * x * x % 13);
    }
    for (Elem a = 0; a < 13; ++a) EXPECT_EQ(ctx.is_cube(a), cubes.count(a) == 1);
    EXPECT_FALSE(make_ctx(13).has_cubes());
}

TEST(PolySpec, EvaluationExamples) {
    const auto c7 = make_ctx(7);
    const auto c11 = make_ctx(11);
    EXPECT_EQ(eval_poly(PolySpec::make(c7, {1, 1}, 3), 6), 0U);
    EXPECT_EQ(eval_poly(PolySpec::make(c11, {1, 0, 0, 1}, 2), 0), 1U);
    EXPECT_EQ(eval_poly(PolySpec::make(c7, {3, 1, 1}, 3), 2), 2U);
}

TEST(PolySpec, TrimsAndValidates) {
    const auto ctx = make_ctx(7);
    const auto f = PolySpec::make(ctx, {1, 2, 0, 0}, 3);
    EXPECT_EQ(f.degree(), 1U);
    EXPECT_EQ(f.coeff(5), 0U);
    EXPECT_EQ(code_of([&] { PolySpec::make(ctx, {7, 1}, 3); }), Errc::InvalidElement);
    EXPECT_EQ(code_of([&] { PolySpec::make(ctx, {1, 1}, 9); }), Errc::InvalidElement);
    EXPECT_EQ(code_of([&] { eval_poly(f, 7); }), Errc::InvalidElement);
}

TEST(PolySpec, EvaluateAllMatchesPointwise) {
    const auto ctx = make_ctx(31, true);
    for (Elem a = 0; a < 31; ++a) {
        const auto cubic = PolySpec::cubic(ctx, a, 3);
        const auto general = PolySpec::make(ctx, {a, 5, 0, 1}, 3);
        const auto vc = evaluate_all(cubic, ctx);
        const auto vg = evaluate_all(general, ctx);
        for (Elem x = 0; x < 31; ++x) {
            ASSERT_EQ(vc[x], (x * x * x + a) % 31);
            ASSERT_EQ(vg[x], (x * x * x + 5 * x + a) % 31);
        }
    }
}

TEST(Permutation, Examples) {
    const auto c7 = make_ctx(7);
    const auto c11 = make_ctx(11);
    EXPECT_TRUE(is_permutation(PolySpec::make(c7, {1, 1}, 3), c7).is_permutation);
    EXPECT_TRUE(is_permutation(PolySpec::make(c11, {2, 0, 0, 1}, 2), c11).is_permutation);
    EXPECT_FALSE(is_permutation(PolySpec::make(c7, {2, 0, 0, 1}, 3), c7).is_permutation);
}

TEST(Permutation, InverseTable) {
    const auto ctx = make_ctx(11);
    const auto f = PolySpec::make(ctx, {2, 0, 0, 1}, 2);
    const auto r = is_permutation(f, ctx);
    ASSERT_TRUE(r.is_permutation);
    ASSERT_EQ(r.inverse.size(), 11U);
    for (Elem x = 0; x < 11; ++x) {
        EXPECT_EQ(eval_poly(f, r.inverse[x]), x);
        EXPECT_EQ(r.inverse[eval_poly(f, x)], x);
    }
    EXPECT_TRUE(is_permutation(PolySpec::make(ctx, {0, 0, 1}, 2), ctx).inverse.empty());
}

TEST(Permutation, CubicCriterionUpTo500) {
    for (Elem p = 3; p <= 500; ++p) {
        if (!trial_division(p)) continue;
        const auto ctx = make_ctx(p, true);
        const bool expected = (p - 1) % 3 != 0;
        for (Elem a = 0; a < p; ++a) {
            ASSERT_EQ(is_permutation(PolySpec::cubic(ctx, a, 0), ctx).is_permutation, expected) << p << " " << a;
        }
    }
}

TEST(ValueSet, Examples) {
    const auto ctx = make_ctx(7);
    const auto sq = value_set(PolySpec::make(ctx, {0, 0, 1}, 3), ctx);
    EXPECT_EQ(sq.elements, (std::vector<Elem>{0, 1, 2, 4}));
    EXPECT_TRUE(sq.contains(2));
    EXPECT_FALSE(sq.contains(3));
    EXPECT_EQ(value_set(PolySpec::make(ctx, {3, 1}, 3), ctx).size(), 7U);
    // (X^2 - 1)^2 = X^4 - 2X^2 + 1; by hand: x^2 in {0,1,2,4} gives (x^2-1)^2 in {1,0,1,2}
    const auto h = value_set(PolySpec::make(ctx, {1, 0, 5, 0, 1}, 3), ctx);
    EXPECT_EQ(h.elements, (std::vector<Elem>{0, 1, 2}));
    EXPECT_LE(8 * h.size(), 3 * 7 + 9);
}

TEST(ValueSet, FullSizeIffPermutation) {
    for (Elem p : {5, 7, 11, 13}) {
        const auto ctx = make_ctx(p);
        for (Elem c1 = 0; c1 < p; ++c1) {
            for (Elem c2 = 0; c2 < p; ++c2) {
                for (Elem c3 = 0; c3 < 3; ++c3) {
                    const auto f = PolySpec::make(ctx, {1, c1, c2, c3}, 0);
                    EXPECT_EQ(value_set(f, ctx).size() == p, is_permutation(f, ctx).is_permutation);
                }
            }
        }
    }
}

TEST(CharSum, QuadraticExamples) {
    const auto ctx = make_ctx(7);
    EXPECT_EQ(char_sum_quadratic(ctx, 1, 0, 1), -1);
    EXPECT_EQ(char_sum_quadratic(ctx, 3, 1, 1), 1);
    EXPECT_EQ(code_of([&] { char_sum_quadratic(ctx, 1, 2, 1); }), Errc::DegenerateQuadratic);
    EXPECT_EQ(code_of([&] { char_sum_quadratic(ctx, 0, 2, 1); }), Errc::DegenerateQuadratic);
}

TEST(CharSum, QuadraticIdentitySmallPrimes) {
    for (Elem p : {3, 5, 7, 11, 13, 17, 19, 23}) {
        const auto ctx = make_ctx(p);
        const auto sq = squares_by_enumeration(p);
        for (Elem a = 1; a < p; ++a) {
            const int chi_a = sq.count(a) ? 1 : -1;
            for (Elem b = 0; b < p; ++b) {
                for (Elem c = 0; c < p; ++c) {
                    if ((b * b + 4 * (p - 1) * a % p * c) % p == 0) continue;
                    ASSERT_EQ(char_sum_quadratic(ctx, a, b, c), -chi_a);
                }
            }
        }
    }
}

TEST(CharSum, GeneralPolynomial) {
    const auto ctx = make_ctx(13);
    // sum of chi(x) over F_p is 0; sum of chi(x^2) is p - 1
    EXPECT_EQ(char_sum(PolySpec::make(ctx, {0, 1}, 0), ctx), 0);
    EXPECT_EQ(char_sum(PolySpec::make(ctx, {0, 0, 1}, 0), ctx), 12);
    const auto f = PolySpec::make(ctx, {1, 0, 0, 1}, 0);
    long long direct = 0;
    for (Elem x = 0; x < 13; ++x) direct += ctx.chi((x * x * x + 1) % 13);
    EXPECT_EQ(char_sum(f, ctx), direct);
    EXPECT_LE(std::llabs(direct), static_cast<long long>(2 * std::sqrt(13.0)));
}
