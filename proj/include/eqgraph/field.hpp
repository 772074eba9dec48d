#pragma once

// Prime-field arithmetic for odd p: quadratic character, square roots and cube
// tables, polynomial evaluation, permutation tests and value sets.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "eqgraph/error.hpp"

namespace eqgraph {

/// Canonical field element, always in [0, p).
using Elem = std::uint64_t;

namespace detail {

/// a, b < m.
constexpr Elem mul_mod(Elem a, Elem b, Elem m) noexcept {
    if (m <= (Elem{1} << 32U)) return a * b % m;
    return static_cast<Elem>((static_cast<unsigned __int128>(a) * b) % m);
}

constexpr Elem pow_mod(Elem base, Elem exp, Elem m) noexcept {
    Elem result = 1 % m;
    base %= m;
    while (exp != 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for every 64-bit input.
constexpr bool is_prime(std::uint64_t n) noexcept {
    if (n < 2) return false;
    constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto b : bases) {
        if (n % b == 0) return n == b;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (auto b : bases) {
        Elem x = detail::pow_mod(b, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = detail::mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Roots of a square s: {y, p - y} with y <= p - y, or the single root {0} for s = 0.
struct SqrtPair {
    Elem low = 0;
    Elem high = 0;
    bool degenerate = false;

    std::size_t size() const noexcept { return degenerate ? 1 : 2; }
    friend bool operator==(const SqrtPair&, const SqrtPair&) = default;
};

/// Immutable context for F_p with full square-root and character tables.
///
/// Tables cost O(p) memory, so p is limited to 32-bit moduli.
class FieldCtx {
   public:
    static constexpr Elem max_modulus = std::numeric_limits<std::uint32_t>::max();
    static constexpr std::uint32_t no_root = std::numeric_limits<std::uint32_t>::max();

    static FieldCtx make(Elem p, bool with_cubes = false) {
        if (p == 2) throw Error(Errc::EvenModulus, "p = 2 is not an odd prime");
        if (!is_prime(p)) throw Error(Errc::NotPrime, std::to_string(p) + " is not prime");
        if (p > max_modulus) throw Error(Errc::ModulusTooLarge, std::to_string(p) + " exceeds 32-bit table limit");
        return FieldCtx(p, with_cubes);
    }

    Elem p() const noexcept { return p_; }

    void check(Elem a) const {
        if (a >= p_) {
            throw Error(Errc::InvalidElement,
                        std::to_string(a) + " is not a canonical element of F_" + std::to_string(p_));
        }
    }

    Elem add(Elem a, Elem b) const noexcept {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const noexcept { return detail::mul_mod(a, b, p_); }
    Elem pow(Elem a, Elem e) const noexcept { return detail::pow_mod(a, e, p_); }

    Elem inv(Elem a) const {
        if (a % p_ == 0) throw Error(Errc::InvalidElement, "zero has no inverse");
        return detail::pow_mod(a, p_ - 2, p_);
    }
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    /// Reduces a signed integer; used only for formula constants such as 1/4 or -1.
    Elem from_int(long long v) const noexcept {
        long long m = static_cast<long long>(p_);
        long long r = v % m;
        return static_cast<Elem>(r < 0 ? r + m : r);
    }

    /// Quadratic character, chi(0) = 0.
    int chi(Elem a) const { return chi_[index(a)]; }

    bool is_square(Elem a) const { return chi(a) >= 0; }

    std::optional<SqrtPair> sqrt_pair(Elem s) const {
        std::uint32_t r = root_[index(s)];
        if (r == no_root) return std::nullopt;
        if (r == 0) return SqrtPair{0, 0, true};
        return SqrtPair{r, p_ - r, false};
    }

    /// Number of squares including 0: (p - 1) / 2 + 1.
    std::size_t square_count() const noexcept {
        return static_cast<std::size_t>(std::count_if(root_.begin(), root_.end(),
                                                      [](std::uint32_t r) { return r != no_root; }));
    }

    bool has_cubes() const noexcept { return !cube_.empty(); }

    Elem cube(Elem x) const {
        if (!cube_.empty()) return cube_[index(x)];
        check(x);
        return mul(mul(x, x), x);
    }

    bool is_cube(Elem a) const {
        check(a);
        if (a == 0 || (p_ - 1) % 3 != 0) return true;
        return pow(a, (p_ - 1) / 3) == 1;
    }

   private:
    FieldCtx(Elem p, bool with_cubes) : p_(p), chi_(p, -1), root_(p, no_root) {
        for (Elem y = 0; y <= p / 2; ++y) {
            Elem s = mul(y, y);
            if (root_[s] == no_root) root_[s] = static_cast<std::uint32_t>(y);
            chi_[s] = s == 0 ? 0 : 1;
        }
        if (with_cubes) {
            cube_.resize(p);
            for (Elem x = 0; x < p; ++x) cube_[x] = static_cast<std::uint32_t>(mul(mul(x, x), x));
        }
    }

    std::size_t index(Elem a) const {
        check(a);
        return static_cast<std::size_t>(a);
    }

    Elem p_;
    std::vector<std::int8_t> chi_;
    std::vector<std::uint32_t> root_;
    std::vector<std::uint32_t> cube_;
};

inline FieldCtx make_ctx(Elem p, bool with_cubes = false) { return FieldCtx::make(p, with_cubes); }

/// A polynomial f over F_p (ascending coefficients) together with the twist lambda
/// that selects the graph G(lambda, f). Trailing zero coefficients are trimmed.
///
/// Whether lambda is a non-square is checked when a graph is built.
struct PolySpec {
    Elem p = 0;
    std::vector<Elem> coeffs;
    Elem lambda = 0;

    static PolySpec make(const FieldCtx& ctx, std::vector<Elem> coeffs, Elem lambda) {
        for (Elem c : coeffs) ctx.check(c);
        ctx.check(lambda);
        while (coeffs.size() > 1 && coeffs.back() == 0) coeffs.pop_back();
        if (coeffs.empty()) coeffs.push_back(0);
        return PolySpec{ctx.p(), std::move(coeffs), lambda};
    }

    /// X + a
    static PolySpec linear(const FieldCtx& ctx, Elem a, Elem lambda) { return make(ctx, {a, 1}, lambda); }
    /// X^2 + X + a
    static PolySpec quadratic_shifted(const FieldCtx& ctx, Elem a, Elem lambda) {
        return make(ctx, {a, 1 % ctx.p(), 1}, lambda);
    }
    /// X^2 + a
    static PolySpec quadratic(const FieldCtx& ctx, Elem a, Elem lambda) { return make(ctx, {a, 0, 1}, lambda); }
    /// X^3 + a
    static PolySpec cubic(const FieldCtx& ctx, Elem a, Elem lambda) { return make(ctx, {a, 0, 0, 1}, lambda); }

    std::size_t degree() const noexcept { return coeffs.size() - 1; }
    Elem coeff(std::size_t i) const noexcept { return i < coeffs.size() ? coeffs[i] : 0; }

    friend bool operator==(const PolySpec&, const PolySpec&) = default;
};

/// Horner evaluation mod p.
inline Elem eval_poly(const PolySpec& f, Elem x) {
    if (x >= f.p) throw Error(Errc::InvalidElement, "evaluation point out of range");
    Elem acc = 0;
    for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it) {
        acc = (detail::mul_mod(acc, x, f.p) + *it) % f.p;
    }
    return acc;
}

/// f(x) for every x in F_p.
inline std::vector<Elem> evaluate_all(const PolySpec& f, const FieldCtx& ctx) {
    if (f.p != ctx.p()) throw Error(Errc::InvalidArgument, "polynomial and context moduli differ");
    std::vector<Elem> values(ctx.p());
    // X^3 + a is the hot path of the cubic survey
    if (ctx.has_cubes() && f.coeffs.size() == 4 && f.coeffs[1] == 0 && f.coeffs[2] == 0 && f.coeffs[3] == 1) {
        for (Elem x = 0; x < ctx.p(); ++x) values[x] = ctx.add(ctx.cube(x), f.coeffs[0]);
        return values;
    }
    for (Elem x = 0; x < ctx.p(); ++x) values[x] = eval_poly(f, x);
    return values;
}

struct PermutationCheck {
    bool is_permutation = false;
    /// inverse[f(x)] = x, populated only for permutations
    std::vector<Elem> inverse;
};

inline PermutationCheck is_permutation(const PolySpec& f, const FieldCtx& ctx) {
    constexpr Elem unset = std::numeric_limits<Elem>::max();
    std::vector<Elem> inverse(ctx.p(), unset);
    const auto values = evaluate_all(f, ctx);
    for (Elem x = 0; x < ctx.p(); ++x) {
        Elem& slot = inverse[values[x]];
        if (slot != unset) return {};
        slot = x;
    }
    return {true, std::move(inverse)};
}

struct ValueSet {
    std::vector<Elem> elements;  // sorted, distinct
    PolySpec source;

    std::size_t size() const noexcept { return elements.size(); }
    bool contains(Elem v) const { return std::binary_search(elements.begin(), elements.end(), v); }
};

/// Image of an arbitrary map F_p -> F_p, for derived sets such as V(g(X^2)^2).
template <class Map>
std::vector<Elem> image_of(const FieldCtx& ctx, Map&& map) {
    std::vector<char> seen(ctx.p(), 0);
    for (Elem x = 0; x < ctx.p(); ++x) {
        Elem v = map(x);
        ctx.check(v);
        seen[v] = 1;
    }
    std::vector<Elem> out;
    for (Elem v = 0; v < ctx.p(); ++v) {
        if (seen[v]) out.push_back(v);
    }
    return out;
}

inline ValueSet value_set(const PolySpec& f, const FieldCtx& ctx) {
    return ValueSet{image_of(ctx, [&](Elem x) { return eval_poly(f, x); }), f};
}

/// Sum of chi(f(x)) over F_p.
inline long long char_sum(const PolySpec& f, const FieldCtx& ctx) {
    long long s = 0;
    for (Elem v : evaluate_all(f, ctx)) s += ctx.chi(v);
    return s;
}

/// Sum over x of chi(a x^2 + b x + c); equals -chi(a) for non-degenerate quadratics.
inline long long char_sum_quadratic(const FieldCtx& ctx, Elem a, Elem b, Elem c) {
    ctx.check(a);
    ctx.check(b);
    ctx.check(c);
    if (a == 0) throw Error(Errc::DegenerateQuadratic, "leading coefficient is zero");
    if (ctx.sub(ctx.mul(b, b), ctx.mul(ctx.from_int(4), ctx.mul(a, c))) == 0) {
        throw Error(Errc::DegenerateQuadratic, "discriminant is zero");
    }
    long long s = 0;
    for (Elem x = 0; x < ctx.p(); ++x) {
        s += ctx.chi(ctx.add(ctx.mul(ctx.add(ctx.mul(a, x), b), x), c));
    }
    return s;
}

}  // namespace eqgraph
