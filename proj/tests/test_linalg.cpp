#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace mtc;

namespace {

class RandomMatrices : public ::testing::TestWithParam<Scalar> {};

TEST_P(RandomMatrices, RrefIsIdempotentAndReduced)
{
    const Scalar p = GetParam();
    std::mt19937_64 rng(11 + p);
    for (int t = 0; t < 200; ++t) {
        auto m = oracle::random_matrix(rng, 1 + rng() % 12, 1 + rng() % 12, p, 0.5);
        auto e = rref(m);
        auto again = rref(e.reduced);
        EXPECT_EQ(again.reduced, e.reduced);
        EXPECT_EQ(again.pivots, e.pivots);
        for (std::size_t r = 0; r < e.rank(); ++r)
            for (std::size_t i = 0; i < m.rows(); ++i) EXPECT_EQ(e.reduced(i, e.pivots[r]), i == r ? 1u : 0u);
        EXPECT_EQ(rank(m), rank(m.transpose()));
    }
}

TEST_P(RandomMatrices, RankNullity)
{
    const Scalar p = GetParam();
    std::mt19937_64 rng(23 + p);
    for (int t = 0; t < 200; ++t) {
        auto m = oracle::random_matrix(rng, 1 + rng() % 12, 1 + rng() % 12, p, 0.4);
        auto k = kernel_basis(m);
        EXPECT_EQ(rank(m) + k.cols(), m.cols());
        EXPECT_TRUE((m * k).is_zero());
        EXPECT_EQ(rank(k), k.cols());
    }
}

TEST_P(RandomMatrices, SolveSubstitutes)
{
    const Scalar p = GetParam();
    std::mt19937_64 rng(37 + p);
    for (int t = 0; t < 200; ++t) {
        auto m = oracle::random_matrix(rng, 1 + rng() % 12, 1 + rng() % 12, p, 0.5);
        auto x0 = oracle::random_matrix(rng, m.cols(), 1 + rng() % 3, p);
        auto b = m * x0;
        auto x = solve(m, b);
        ASSERT_TRUE(x.has_value());
        EXPECT_EQ(m * *x, b);
        auto c = oracle::random_matrix(rng, m.rows(), 1, p);
        auto y = solve(m, c);
        EXPECT_EQ(y.has_value(), rank(hstack({m, c}, m.rows(), p)) == rank(m));
        if (y) {
            EXPECT_EQ(m * *y, c);
        }
    }
}

TEST_P(RandomMatrices, InverseAndLeftInverse)
{
    const Scalar p = GetParam();
    std::mt19937_64 rng(41 + p);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + rng() % 8;
        auto m = oracle::random_matrix(rng, n, n, p);
        auto inv = inverse(m);
        EXPECT_EQ(inv.has_value(), rank(m) == n);
        if (inv) {
            EXPECT_EQ(m * *inv, FpMatrix::identity(n, p));
            EXPECT_EQ(*inv * m, FpMatrix::identity(n, p));
        }
        auto tall = oracle::random_matrix(rng, n + rng() % 4, n, p);
        if (rank(tall) == n) {
            EXPECT_EQ(left_inverse(tall) * tall, FpMatrix::identity(n, p));
        } else {
            EXPECT_THROW(left_inverse(tall), Error);
        }
    }
}

TEST_P(RandomMatrices, QuotientMapKillsSubspace)
{
    const Scalar p = GetParam();
    std::mt19937_64 rng(53 + p);
    for (int t = 0; t < 100; ++t) {
        std::size_t n = 1 + rng() % 10;
        auto sub = oracle::random_matrix(rng, n, rng() % (n + 1), p, 0.5);
        auto q = quotient_map(sub, n, p);
        EXPECT_EQ(q.projection.rows(), n - rank(sub));
        if (sub.cols()) {
            EXPECT_TRUE((q.projection * sub).is_zero());
        }
        EXPECT_EQ(q.projection * q.section, FpMatrix::identity(q.projection.rows(), p));
    }
}

TEST_P(RandomMatrices, EchelonBasisTracksRank)
{
    const Scalar p = GetParam();
    std::mt19937_64 rng(59 + p);
    for (int t = 0; t < 50; ++t) {
        std::size_t n = 1 + rng() % 10;
        EchelonBasis eb(n, p);
        std::vector<FpVector> cols;
        for (int k = 0; k < 12; ++k) {
            auto v = oracle::random_matrix(rng, n, 1, p, 0.3).col(0);
            bool was_inside = eb.contains(v);
            bool grew = eb.add(v);
            cols.push_back(v);
            EXPECT_EQ(grew, !was_inside);
            EXPECT_EQ(eb.rank(), rank(FpMatrix::from_columns(cols, n, p)));
            EXPECT_TRUE(membership(v, FpMatrix::from_columns(cols, n, p)));
            EXPECT_TRUE(eb.contains(v));
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Fields, RandomMatrices, ::testing::Values(2u, 3u, 5u));

TEST(LinalgOracle, KernelSizeMatchesEnumeration)
{
    std::mt19937_64 rng(7);
    for (Scalar p : {2u, 3u}) {
        for (int t = 0; t < 60; ++t) {
            std::size_t cols = 1 + rng() % (p == 2 ? 7 : 4);
            auto m = oracle::random_matrix(rng, 1 + rng() % 5, cols, p, 0.5);
            EXPECT_EQ(oracle::kernel_size(m), oracle::ipow(p, cols - rank(m)));
        }
    }
}

TEST(Field, ModularArithmetic)
{
    const Scalar big = 2147483647u;
    EXPECT_EQ(mul_mod(big - 1, big - 1, big), 1u);
    for (Scalar p : {2u, 3u, 5u, 7u, 101u, big})
        for (Scalar a : {1u, 2u, 17u})
            if (a % p) {
                EXPECT_EQ(mul_mod(a % p, inv_mod(a % p, p), p), 1u);
                EXPECT_EQ(pow_mod(a % p, p - 1, p), 1u);
            }
    EXPECT_EQ(reduce(-1, 5), 4u);
    EXPECT_EQ(reduce(-10, 3), 2u);
}

TEST(Field, ModulusMustBePrime)
{
    for (std::int64_t bad : {-3, 0, 1, 4, 9, 91})
        EXPECT_THROW(checked_modulus(bad), InputError) << bad;
    for (std::int64_t good : {2, 3, 5, 2147483647}) EXPECT_EQ(checked_modulus(good), static_cast<Scalar>(good));
}

TEST(Matrix, ShapeMismatchIsRejected)
{
    FpMatrix a(2, 3, 5), b(2, 3, 5), c(3, 3, 3);
    EXPECT_THROW(a * b, Error);
    EXPECT_THROW(a + c, Error);
    EXPECT_THROW(solve(a, FpMatrix(3, 1, 5)), InputError);
}

TEST(Matrix, FlattenRoundTrip)
{
    std::mt19937_64 rng(3);
    auto m = oracle::random_matrix(rng, 4, 6, 7);
    EXPECT_EQ(FpMatrix::unflatten(m.flatten(), 4, 6, 7), m);
    EXPECT_EQ(m.transpose().transpose(), m);
    EXPECT_EQ(hstack({m.block(0, 0, 4, 2), m.block(0, 2, 4, 4)}, 4, 7), m);
    EXPECT_EQ(vstack({m.block(0, 0, 1, 6), m.block(1, 0, 3, 6)}, 6, 7), m);
}

} // namespace
