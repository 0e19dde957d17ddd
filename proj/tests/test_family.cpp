#include <gtest/gtest.h>

#include <sqfdisc/family.hpp>

#include "oracles.hpp"

#include <map>
#include <random>

using namespace sqfdisc;

namespace {

std::vector<Integer> iv(std::initializer_list<long> c) { return {c.begin(), c.end()}; }

RatPoly rp(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return RatPoly(std::move(v));
}

Integer uniform(std::mt19937_64& rng, long lo, long hi) {
    return Integer(lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)));
}

// a_1 divisible by n-1, the rest by n!
std::vector<Integer> random_integral_tuple(std::mt19937_64& rng, int n, long bound) {
    std::vector<Integer> a;
    a.push_back(uniform(rng, -bound, bound) * (n - 1));
    for (int i = 2; i < n; ++i) a.push_back(uniform(rng, -bound, bound) * factorial(static_cast<unsigned long>(n)));
    return a;
}

}  // namespace

TEST(BuildQ, Examples) {
    EXPECT_EQ(build_Q(2, iv({2})), rp({-2, 2}));
    EXPECT_EQ(build_Q(3, iv({3, 1})), rp({3, -6, 3}));
    EXPECT_EQ(build_Q(3, iv({0, 0})), rp({0, 0, 3}));
    EXPECT_THROW(build_Q(3, iv({1})), std::invalid_argument);
    EXPECT_THROW(build_Q(1, iv({})), std::invalid_argument);
}

TEST(BuildP, Examples) {
    EXPECT_EQ(build_P(2, iv({0}), Rational(5)), rp({5, 0, 1}));
    EXPECT_EQ(build_P(2, iv({2}), Rational(0)), rp({0, -2, 1}));
    EXPECT_EQ(build_P(3, iv({0, 0}), Rational(1)), rp({1, 0, 0, 1}));
    // rational parameters are accepted
    std::vector<Rational> half{Rational(1, 2)};
    EXPECT_EQ(build_P(2, half, Rational(0)), RatPoly({Rational(0), Rational(-1, 2), Rational(1)}));
    EXPECT_THROW(build_integer_P(3, iv({0, 1}), Integer(0)), std::domain_error);  // x^3 - 3/2 x^2
}

TEST(BuildP, DerivativeIsQ) {
    std::mt19937_64 rng(31);
    for (int n = 2; n <= 8; ++n) {
        for (int trial = 0; trial < 25; ++trial) {
            std::vector<Rational> a;
            for (int i = 0; i < n - 1; ++i) a.push_back(make_rational(uniform(rng, -50, 50), uniform(rng, 1, 7)));
            Rational b = make_rational(uniform(rng, -100, 100), uniform(rng, 1, 5));
            RatPoly p = build_P(n, a, b);
            EXPECT_TRUE(p.is_monic());
            EXPECT_EQ(p.degree(), n);
            EXPECT_EQ(p.coeff(0), b);
            EXPECT_EQ(p.derivative(), build_Q(n, a));
        }
    }
}

TEST(CriticalValues, Examples) {
    auto c2 = critical_values(2, iv({2}));
    EXPECT_EQ(c2.v1, -4);
    EXPECT_TRUE(c2.v.empty());
    auto c0 = critical_values(3, iv({0, 0}));
    EXPECT_EQ(c0.v1, 0);
    EXPECT_EQ(c0.v, (std::vector<Rational>{Rational(0)}));
    auto c31 = critical_values(3, iv({3, 1}));
    EXPECT_EQ(c31.v1, 27);
    EXPECT_EQ(c31.v, (std::vector<Rational>{Rational(1)}));
    EXPECT_EQ(c31.critical_points, (std::vector<Rational>{Rational(1), Rational(1)}));
    EXPECT_TRUE(c31.integral);
    // P_{(0,1),0} = x^3 - 3/2 x^2, so v_2 = P(1) = -1/2
    auto frac = critical_values(3, iv({0, 1}));
    EXPECT_EQ(frac.v, (std::vector<Rational>{Rational(-1, 2)}));
    EXPECT_FALSE(frac.integral);
}

TEST(LinearFactorization, Examples) {
    auto s2 = disc_linear_factorization(2, iv({2}));
    EXPECT_EQ(s2.sign, -1);
    EXPECT_EQ(s2.factors, (std::vector<LinearForm>{{Integer(4), Integer(-4)}}));
    for (long b = -3; b <= 3; ++b) EXPECT_EQ(s2.evaluate(Integer(b)), oracle::quadratic_discriminant(Integer(-2), Integer(b)));

    auto s0 = disc_linear_factorization(2, iv({0}));
    EXPECT_EQ(s0.sign, -1);
    EXPECT_EQ(s0.factors, (std::vector<LinearForm>{{Integer(4), Integer(0)}}));

    auto s3 = disc_linear_factorization(3, iv({3, 1}));
    EXPECT_EQ(s3.factors, (std::vector<LinearForm>{{Integer(27), Integer(27)}, {Integer(1), Integer(1)}}));
    // at b = -2 the direct value fixes the sign: x^3 - 3x^2 + 3x - 2 = (x-2)(x^2 - x + 1)
    EXPECT_EQ(Rational(s3.evaluate(Integer(-2))), oracle::cubic_discriminant(Integer(-3), Integer(3), Integer(-2)));
    // both forms vanish at b = -1 (a triple root there), not at b = 0
    EXPECT_EQ(s3.evaluate(Integer(-1)), 0);
    EXPECT_EQ(s3.evaluate(Integer(0)), -27);
    EXPECT_FALSE(s3.pairwise_coprime());

    EXPECT_THROW(disc_linear_factorization(3, iv({0, 1})), std::domain_error);
}

TEST(CheckIdentity, Examples) {
    EXPECT_TRUE(check_identity(2, iv({2}), iv({-3, -2, -1, 0, 1, 2, 3})));
    // P_{(4,24,48),0} has the coefficient -292/3, so this runs over the rationals
    EXPECT_FALSE(has_integral_family(4, iv({4, 24, 48})));
    EXPECT_TRUE(check_identity(4, iv({4, 24, 48}), iv({0, 1, -1})));
    EXPECT_TRUE(check_identity(2, iv({0}), iv({0})));
}

TEST(LinearFactorization, IdentityHoldsForRandomIntegralTuples) {
    std::mt19937_64 rng(101);
    for (int n = 2; n <= 7; ++n) {
        for (int trial = 0; trial < 200; ++trial) {
            auto a = random_integral_tuple(rng, n, 30);
            ASSERT_TRUE(has_integral_family(n, a)) << n;
            auto sys = disc_linear_factorization(n, a);
            Integer b = uniform(rng, -10'000, 10'000);
            IntPoly p = build_integer_P(n, a, b);
            ASSERT_EQ(discriminant(p), sys.evaluate(b)) << "n=" << n << " b=" << b;
            if (n == 2) {
                EXPECT_EQ(discriminant(p), oracle::quadratic_discriminant(p.coeff(1), p.coeff(0)));
            }
            if (n == 3) {
                EXPECT_EQ(Rational(discriminant(p)), oracle::cubic_discriminant(p.coeff(2), p.coeff(1), p.coeff(0)));
            }
        }
    }
}

TEST(LinearFactorization, SubstitutionMatchesComposition) {
    auto sys = disc_linear_factorization(3, iv({6, 12}));
    auto sub = sys.substitute(Integer(7), Integer(3));
    for (long u = -20; u <= 20; ++u) EXPECT_EQ(sub.evaluate(Integer(u)), sys.evaluate(Integer(7 * u + 3)));
}

TEST(LinearFactorization, NoValueRepeatsMoreThanDegreeTimes) {
    std::mt19937_64 rng(55);
    for (int n = 2; n <= 5; ++n) {
        auto a = random_integral_tuple(rng, n, 3);
        auto sys = disc_linear_factorization(n, a);
        std::map<Integer, int> seen;
        for (long b = -500; b < 500; ++b) {
            int count = ++seen[sys.evaluate(Integer(b))];
            EXPECT_LE(count, n - 1) << "n=" << n;
        }
    }
}

TEST(Family, ScalingIdentity) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng() % 5);
        auto A = random_integral_tuple(rng, n, 5);
        Integer q = 1 + uniform(rng, 0, 4) * 6;
        Integer b = uniform(rng, -100000, 100000);
        std::vector<Integer> Aq;
        for (const auto& x : A) Aq.push_back(x * q);
        Rational qn(pow(q, static_cast<unsigned long>(n)));
        RatPoly lhs = build_P(n, Aq, Rational(b)).scale_argument(Rational(q));
        RatPoly rhs = build_P(n, A, Rational(b) / qn) * qn;
        EXPECT_EQ(lhs, rhs);
        EXPECT_EQ(real_root_count(build_P(n, Aq, Rational(b))), real_root_count(build_P(n, A, Rational(b) / qn)));
    }
}
