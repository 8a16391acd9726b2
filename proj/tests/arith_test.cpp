#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "modstar/arith.hpp"

using namespace modstar;

namespace {

// counting oracle, independent of the product-formula implementation
u64 phi_by_counting(u64 n) {
    u64 c = 0;
    for (u64 k = 1; k <= n; ++k)
        if (std::gcd(k, n) == 1)
            ++c;
    return c;
}

} // namespace

TEST(EulerPhi, KnownValues) {
    EXPECT_EQ(euler_phi(1), 1u);
    EXPECT_EQ(euler_phi(9), 6u);
    EXPECT_EQ(euler_phi(9), phi_by_counting(9));
    EXPECT_EQ(euler_phi(63), 36u);
    EXPECT_EQ(euler_phi(63), euler_phi(9) * euler_phi(7));
}

TEST(CarmichaelLambda, KnownValues) {
    EXPECT_EQ(carmichael_lambda(9), 6u);
    EXPECT_EQ(carmichael_lambda(63), 6u);
    EXPECT_EQ(carmichael_lambda(15), 4u);
    EXPECT_EQ(carmichael_lambda(1), 1u);
    EXPECT_EQ(carmichael_lambda(2), 1u);
    EXPECT_EQ(carmichael_lambda(4), 2u);
    EXPECT_EQ(carmichael_lambda(16), 4u);
}

TEST(Moebius, KnownValues) {
    EXPECT_EQ(moebius(1), 1);
    EXPECT_EQ(moebius(6), 1);
    EXPECT_EQ(moebius(12), 0);
    EXPECT_EQ(moebius(30), -1);
}

TEST(Factorize, KnownValues) {
    auto f = factorize(63);
    ASSERT_EQ(f.factors.size(), 2u);
    EXPECT_EQ(f.factors[0], (std::pair<u64, unsigned>{3, 2}));
    EXPECT_EQ(f.factors[1], (std::pair<u64, unsigned>{7, 1}));

    auto g = factorize(2);
    ASSERT_EQ(g.factors.size(), 1u);
    EXPECT_EQ(g.factors[0], (std::pair<u64, unsigned>{2, 1}));

    auto h = factorize(143);
    ASSERT_EQ(h.factors.size(), 2u);
    EXPECT_EQ(h.factors[0], (std::pair<u64, unsigned>{11, 1}));
    EXPECT_EQ(h.factors[1], (std::pair<u64, unsigned>{13, 1}));
}

TEST(Factorize, RoundTripSmall) {
    for (u64 n = 2; n <= 1'000'000; ++n) {
        auto f = factorize(n);
        ASSERT_EQ(f.value(), n) << n;
        for (std::size_t i = 1; i < f.factors.size(); ++i)
            ASSERT_LT(f.factors[i - 1].first, f.factors[i].first);
    }
}

TEST(Factorize, RoundTripRandomSemiprimes) {
    std::mt19937_64 rng(20240817);
    std::uniform_int_distribution<u64> dist(u64{1} << 30, (u64{1} << 31) - 1);
    auto next_prime = [&]() {
        u64 v = dist(rng) | 1;
        while (!is_prime(v))
            v += 2;
        return v;
    };
    for (int i = 0; i < 100; ++i) {
        u64 p = next_prime(), q = next_prime();
        u64 n = p * q;
        auto f = factorize(n);
        EXPECT_EQ(f.value(), n);
        u64 total_exp = 0;
        for (const auto& [fp, fe] : f.factors) {
            EXPECT_TRUE(is_prime(fp));
            total_exp += fe;
        }
        EXPECT_EQ(total_exp, 2u);
    }
}

TEST(PrimeSieve, SmallCounts) {
    auto s = primes_up_to(10);
    EXPECT_TRUE(s.is_prime(2));
    EXPECT_TRUE(s.is_prime(3));
    EXPECT_TRUE(s.is_prime(5));
    EXPECT_TRUE(s.is_prime(7));
    EXPECT_FALSE(s.is_prime(9));
    EXPECT_EQ(s.count(), 4u);
    EXPECT_EQ(primes_up_to(30).count(), 10u);
}

TEST(PrimeSieve, PiOfTwoMillion) {
    EXPECT_EQ(primes_up_to(2'000'000).count(), 148933u);
}

TEST(PrimeSieve, AgreesWithMillerRabin) {
    auto s = primes_up_to(20000);
    for (u64 v = 2; v <= 20000; ++v)
        ASSERT_EQ(s.is_prime(v), is_prime(v)) << v;
}

TEST(PrimeSieve, LimitBound) {
    EXPECT_THROW(primes_up_to(200, 100), limit_error);
    EXPECT_NO_THROW(primes_up_to(100, 100));
}

TEST(Invariants, PhiSumOverDivisors) {
    for (u64 n = 1; n <= 10000; ++n) {
        u64 sum = 0;
        for (u64 d : divisors(n))
            sum += euler_phi(d);
        ASSERT_EQ(sum, n) << n;
    }
}

TEST(Invariants, LambdaDividesPhi) {
    for (u64 n = 1; n <= 10000; ++n)
        ASSERT_EQ(euler_phi(n) % carmichael_lambda(n), 0u) << n;
}

TEST(Invariants, MoebiusSumOverDivisors) {
    for (u64 n = 1; n <= 10000; ++n) {
        int sum = 0;
        for (u64 d : divisors(n))
            sum += moebius(d);
        ASSERT_EQ(sum, n == 1 ? 1 : 0) << n;
    }
}

TEST(PowMod, MatchesRepeatedMultiplication) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        u64 m = rng() % 99991 + 2;
        u64 b = rng() % m;
        u64 e = rng() % 50;
        u64 expect = 1 % m;
        for (u64 t = 0; t < e; ++t)
            expect = mul_mod(expect, b, m);
        ASSERT_EQ(pow_mod(b, e, m), expect);
    }
}
