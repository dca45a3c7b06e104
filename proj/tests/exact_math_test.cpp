#include "qiso/exact_math.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qiso;

namespace {

Rational random_rational(std::mt19937_64& rng, int span = 20) {
    std::uniform_int_distribution<int> num(-span, span), den(1, span);
    return frac(num(rng), den(rng));
}

RatMatrix col(std::initializer_list<int> v) {
    std::vector<Rational> e;
    for (int x : v) e.emplace_back(x);
    return RatMatrix::column(e);
}

}  // namespace

TEST(Rational, SerializesAsFraction) {
    EXPECT_EQ(to_fraction_string(frac(6, 4)), "3/2");
    EXPECT_EQ(to_fraction_string(Rational(-80)), "-80/1");
    EXPECT_EQ(parse_rational("-6/4"), frac(-3, 2));
    EXPECT_EQ(parse_rational("17"), Rational(17));
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Rational, FieldLawsOnRandomValues) {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const Rational a = random_rational(rng), b = random_rational(rng), c = random_rational(rng);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        Rational n = a;
        n.canonicalize();
        EXPECT_EQ(n, a);
        EXPECT_GT(a.get_den(), 0);
        EXPECT_EQ(parse_rational(to_fraction_string(a)), a);
    }
}

TEST(SolveLinearExact, Identity) {
    const auto s = solve_linear_exact(RatMatrix::identity(3), col({1, 2, 3}));
    ASSERT_TRUE(s.consistent);
    EXPECT_EQ(s.rank, 3u);
    EXPECT_EQ(s.x, (std::vector<Rational>{1, 2, 3}));
}

TEST(SolveLinearExact, RankDeficientContradiction) {
    const RatMatrix a(2, 2, {1, 1, 2, 2});
    const auto s = solve_linear_exact(a, col({1, 3}));
    EXPECT_FALSE(s.consistent);
    EXPECT_EQ(s.rank, 1u);
}

TEST(SolveLinearExact, TwoByTwo) {
    const RatMatrix a(2, 2, {1, 1, 1, 2});
    const auto s = solve_linear_exact(a, col({3, 5}));
    ASSERT_TRUE(s.consistent);
    EXPECT_EQ(s.x, (std::vector<Rational>{1, 2}));
}

TEST(SolveLinearExact, FreeVariablesAreZero) {
    // x0 + x1 + x2 = 4, x2 = 1  ->  pivots on columns 0 and 2, x1 free.
    const RatMatrix a(2, 3, {1, 1, 1, 0, 0, 1});
    const auto s = solve_linear_exact(a, col({4, 1}));
    ASSERT_TRUE(s.consistent);
    EXPECT_EQ(s.x, (std::vector<Rational>{3, 0, 1}));
}

TEST(SolveLinearExact, DimensionMismatch) {
    EXPECT_THROW(solve_linear_exact(RatMatrix::identity(3), col({1, 2})), DimensionError);
}

TEST(SolveLinearExact, RandomSystemsResubstituteExactly) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> dim(1, 7);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t rows = dim(rng), cols = dim(rng), inner = dim(rng);
        // A = U * V has rank <= inner, exercising free columns.
        RatMatrix u(rows, inner), v(inner, cols), x0(cols, 1);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < inner; ++j) u(i, j) = random_rational(rng, 5);
        for (std::size_t i = 0; i < inner; ++i)
            for (std::size_t j = 0; j < cols; ++j) v(i, j) = random_rational(rng, 5);
        for (std::size_t i = 0; i < cols; ++i) x0(i, 0) = random_rational(rng, 9);
        const RatMatrix a = u * v;
        const RatMatrix b = a * x0;
        const auto s = solve_linear_exact(a, b);
        ASSERT_TRUE(s.consistent);
        EXPECT_EQ(a * RatMatrix::column(s.x), b);
        // Determinism: same inputs, same output.
        EXPECT_EQ(solve_linear_exact(a, b).x, s.x);
    }
}

TEST(SolveLinearExact, MultiColumnMatchesSingle) {
    const RatMatrix a(3, 4, {1, 2, 0, 1, 2, 4, 1, 0, 3, 6, 1, 1});
    const RatMatrix b(3, 2, {1, 0, 2, 1, 3, 1});
    const auto multi = solve_linear_exact_multi(a, b);
    for (std::size_t c = 0; c < 2; ++c) {
        const auto single = solve_linear_exact(a, RatMatrix::column({b(0, c), b(1, c), b(2, c)}));
        EXPECT_EQ(multi[c].consistent, single.consistent);
        EXPECT_EQ(multi[c].x, single.x);
    }
}

TEST(PolyInterpolate, Linear) {
    const auto p = poly_interpolate({{0, 1}, {1, 2}});
    EXPECT_EQ(p, UniPoly({1, 1}));
    EXPECT_EQ(p.to_string(), "n + 1");
}

TEST(PolyInterpolate, Cubic) {
    const auto p = poly_interpolate({{0, 0}, {1, 1}, {2, 8}, {3, 27}});
    EXPECT_EQ(p, UniPoly({0, 0, 0, 1}));
}

TEST(PolyInterpolate, DuplicateAbscissa) {
    EXPECT_THROW(poly_interpolate({{1, 2}, {1, 3}}), std::invalid_argument);
}

TEST(PolyInterpolate, ReproducesEverySample) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<Rational, Rational>> samples;
        for (int i = 0; i < 1 + trial % 9; ++i) samples.emplace_back(frac(i * 3 - 7, 1 + i % 2), random_rational(rng));
        const auto p = poly_interpolate(samples);
        EXPECT_LT(p.degree(), static_cast<long>(samples.size()));
        for (const auto& [x, y] : samples) EXPECT_EQ(p(x), y);
    }
}

TEST(UniPoly, Formatting) {
    EXPECT_EQ(UniPoly({0, 0, 0, 0, 3, 1}).to_string(), "n^5 + 3*n^4");
    EXPECT_EQ(UniPoly({frac(-1, 2), 0, -1}).to_string(), "-n^2 - 1/2");
    EXPECT_EQ(UniPoly().to_string(), "0");
}
